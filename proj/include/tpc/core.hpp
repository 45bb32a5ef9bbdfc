#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace tpc {

// Dense 0-based alternative index; names live only in the I/O layer.
using AlternativeId = std::uint32_t;
using AgentId = std::size_t;

// One agent's strict order, most preferred first. May be partial or empty.
struct Ranking {
  AgentId agent = 0;
  std::vector<AlternativeId> order;

  std::size_t size() const noexcept { return order.size(); }
  bool empty() const noexcept { return order.empty(); }

  friend bool operator==(const Ranking&, const Ranking&) = default;
};

// 1-based position of `a` in `r`, or nullopt when `a` is unranked.
std::optional<std::size_t> rank_position(const Ranking& r, AlternativeId a);

// Ids ranked by both, ascending.
std::vector<AlternativeId> common_alternatives(const Ranking& r1, const Ranking& r2);

// Dense lookup: positions[a] is the 1-based rank of a, 0 when absent.
std::vector<std::uint32_t> position_table(const Ranking& r, std::size_t m);

// Row-major latent feature vectors, one per agent or alternative.
struct LatentFeatures {
  std::size_t count = 0;
  std::size_t dim = 0;
  std::vector<double> values;

  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * dim, dim};
  }
  std::span<double> row(std::size_t i) { return {values.data() + i * dim, dim}; }
};

struct Dataset {
  std::size_t m = 0;
  std::vector<Ranking> rankings;
  std::optional<LatentFeatures> latent_agents;
  std::optional<LatentFeatures> latent_alternatives;

  std::size_t agent_count() const noexcept { return rankings.size(); }

  // Throws ArgumentError when an invariant is broken: duplicate or out-of-range
  // ids, agent field not matching position, latent shapes inconsistent.
  void validate() const;
};

// Flags agents with empty rankings (1 = skip as neighbor candidate).
std::vector<std::uint8_t> empty_ranking_mask(const Dataset& ds);

class TrustVector {
 public:
  TrustVector() = default;
  // Throws ArgumentError when any entry falls outside [0,1] or is non-finite.
  explicit TrustVector(std::vector<double> values);

  static TrustVector uniform(std::size_t n) { return TrustVector(std::vector<double>(n, 1.0)); }

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

}  // namespace tpc
