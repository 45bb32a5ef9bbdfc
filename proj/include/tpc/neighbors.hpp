#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tpc/core.hpp"
#include "tpc/rank_distance.hpp"

namespace tpc {

struct NeighborQuery {
  AgentId target = 0;
  std::size_t k = 1;
  // Trust cutoff: candidates with trust <= epsilon0 are never returned.
  double epsilon0 = 0.0;
  // Optional per-agent flag (nonzero = not a candidate), e.g. empty rankings.
  std::span<const std::uint8_t> ineligible{};
};

struct NeighborList {
  std::vector<AgentId> agents;
  std::vector<double> distances;

  std::size_t size() const noexcept { return agents.size(); }

  // First `k` entries (or all of them).
  NeighborList prefix(std::size_t k) const;

  friend bool operator==(const NeighborList&, const NeighborList&) = default;
};

// Baseline: candidates ordered by F(target, j).
NeighborList kt_knn(const FeatureMatrix& f, const NeighborQuery& q);

// Mean |F(i,t) - F(j,t)| over every anchor t outside {i, j}. Needs n >= 3.
double anchor_distance(const FeatureMatrix& f, AgentId i, AgentId j);

// anchor_distance(target, j) for every j (the target's own slot is 0).
std::vector<double> anchor_distances(const FeatureMatrix& f, AgentId target);

NeighborList anchor_knn(const FeatureMatrix& f, const NeighborQuery& q);

// Candidates with trust <= epsilon0 (and any zero-trust candidate) are dropped;
// the rest are ranked by anchor_distance / trust(j). Throws EmptyResultError
// when nothing survives the cutoff.
NeighborList trust_anchor_knn(const FeatureMatrix& f, const TrustVector& trust, const NeighborQuery& q);
// Without a trust input every agent has trust 1.
NeighborList trust_anchor_knn(const FeatureMatrix& f, const NeighborQuery& q);

// Orders candidates by the supplied per-agent distance (ascending, agent
// index breaks ties), skipping the target and every agent with keep[j] == 0.
NeighborList rank_candidates(std::span<const double> distance, std::span<const std::uint8_t> keep,
                             AgentId target, std::size_t k);

}  // namespace tpc
