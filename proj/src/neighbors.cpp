#include "tpc/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tpc/errors.hpp"

namespace tpc {

NeighborList NeighborList::prefix(std::size_t k) const {
  NeighborList out;
  const std::size_t len = std::min(k, agents.size());
  out.agents.assign(agents.begin(), agents.begin() + static_cast<std::ptrdiff_t>(len));
  out.distances.assign(distances.begin(), distances.begin() + static_cast<std::ptrdiff_t>(len));
  return out;
}

namespace {

void check_query(const FeatureMatrix& f, const NeighborQuery& q) {
  const std::size_t n = f.size();
  if (q.target >= n) throw ArgumentError("target agent " + std::to_string(q.target) + " out of range");
  if (q.k < 1 || q.k + 1 > n) {
    throw ArgumentError("k = " + std::to_string(q.k) + " must lie in [1, n-1] with n = " + std::to_string(n));
  }
  if (!q.ineligible.empty() && q.ineligible.size() != n) {
    throw ArgumentError("eligibility mask length does not match agent count");
  }
  if (!(q.epsilon0 >= 0.0 && q.epsilon0 < 1.0)) throw ArgumentError("epsilon0 must lie in [0,1)");
}

std::vector<std::uint8_t> eligibility(const NeighborQuery& q, std::size_t n) {
  std::vector<std::uint8_t> keep(n, 1);
  if (!q.ineligible.empty()) {
    for (std::size_t j = 0; j < n; ++j) keep[j] = q.ineligible[j] ? 0 : 1;
  }
  return keep;
}

}  // namespace

NeighborList rank_candidates(std::span<const double> distance, std::span<const std::uint8_t> keep,
                             AgentId target, std::size_t k) {
  std::vector<AgentId> cand;
  cand.reserve(distance.size());
  for (AgentId j = 0; j < distance.size(); ++j) {
    if (j != target && keep[j]) cand.push_back(j);
  }
  const auto less = [&](AgentId a, AgentId b) {
    if (distance[a] != distance[b]) return distance[a] < distance[b];
    return a < b;
  };
  const std::size_t len = std::min(k, cand.size());
  std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(len), cand.end(), less);
  NeighborList out;
  out.agents.assign(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(len));
  out.distances.reserve(len);
  for (AgentId j : out.agents) out.distances.push_back(distance[j]);
  return out;
}

NeighborList kt_knn(const FeatureMatrix& f, const NeighborQuery& q) {
  check_query(f, q);
  const auto keep = eligibility(q, f.size());
  return rank_candidates(f.row(q.target), keep, q.target, q.k);
}

double anchor_distance(const FeatureMatrix& f, AgentId i, AgentId j) {
  const std::size_t n = f.size();
  if (n < 3) throw ArgumentError("anchor distance needs at least 3 agents");
  if (i >= n || j >= n) throw ArgumentError("agent index out of range");
  if (i == j) throw ArgumentError("anchor distance needs two distinct agents");
  const auto ri = f.row(i);
  const auto rj = f.row(j);
  double sum = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    if (t == i || t == j) continue;
    sum += std::abs(ri[t] - rj[t]);
  }
  return sum / static_cast<double>(n - 2);
}

std::vector<double> anchor_distances(const FeatureMatrix& f, AgentId target) {
  const std::size_t n = f.size();
  if (n < 3) throw ArgumentError("anchor distance needs at least 3 agents");
  if (target >= n) throw ArgumentError("target agent out of range");
  std::vector<double> d(n, 0.0);
  const auto ri = f.row(target);
  for (AgentId j = 0; j < n; ++j) {
    if (j == target) continue;
    const auto rj = f.row(j);
    double sum = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      if (t == target || t == j) continue;
      sum += std::abs(ri[t] - rj[t]);
    }
    d[j] = sum / static_cast<double>(n - 2);
  }
  return d;
}

NeighborList anchor_knn(const FeatureMatrix& f, const NeighborQuery& q) {
  if (f.size() < 3) throw ArgumentError("anchor-kNN needs at least 3 agents");
  check_query(f, q);
  const auto keep = eligibility(q, f.size());
  const auto d = anchor_distances(f, q.target);
  return rank_candidates(d, keep, q.target, q.k);
}

NeighborList trust_anchor_knn(const FeatureMatrix& f, const TrustVector& trust, const NeighborQuery& q) {
  if (f.size() < 3) throw ArgumentError("anchor-kNN needs at least 3 agents");
  check_query(f, q);
  if (trust.size() != f.size()) throw ArgumentError("trust vector length does not match agent count");
  auto keep = eligibility(q, f.size());
  auto d = anchor_distances(f, q.target);
  bool any = false;
  for (AgentId j = 0; j < f.size(); ++j) {
    if (j == q.target) continue;
    if (trust[j] <= q.epsilon0 || trust[j] <= 0.0) {
      keep[j] = 0;
      continue;
    }
    d[j] /= trust[j];
    any = any || keep[j];
  }
  if (!any) {
    throw EmptyResultError("every neighbor candidate of agent " + std::to_string(q.target) +
                           " has trust <= epsilon0");
  }
  return rank_candidates(d, keep, q.target, q.k);
}

NeighborList trust_anchor_knn(const FeatureMatrix& f, const NeighborQuery& q) {
  return trust_anchor_knn(f, TrustVector::uniform(f.size()), q);
}

}  // namespace tpc
