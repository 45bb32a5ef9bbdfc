#include "tpc/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tpc/errors.hpp"

namespace tpc {

std::optional<std::size_t> rank_position(const Ranking& r, AlternativeId a) {
  const auto it = std::find(r.order.begin(), r.order.end(), a);
  if (it == r.order.end()) return std::nullopt;
  return static_cast<std::size_t>(it - r.order.begin()) + 1;
}

std::vector<AlternativeId> common_alternatives(const Ranking& r1, const Ranking& r2) {
  std::vector<AlternativeId> a = r1.order;
  std::vector<AlternativeId> b = r2.order;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<AlternativeId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::uint32_t> position_table(const Ranking& r, std::size_t m) {
  std::vector<std::uint32_t> pos(m, 0);
  for (std::size_t p = 0; p < r.order.size(); ++p) {
    pos[r.order[p]] = static_cast<std::uint32_t>(p + 1);
  }
  return pos;
}

void Dataset::validate() const {
  std::vector<std::uint8_t> seen(m);
  for (std::size_t i = 0; i < rankings.size(); ++i) {
    const Ranking& r = rankings[i];
    if (r.agent != i) {
      throw ArgumentError("ranking " + std::to_string(i) + " carries agent index " +
                          std::to_string(r.agent));
    }
    if (r.order.size() > m) {
      throw ArgumentError("ranking " + std::to_string(i) + " is longer than m");
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (AlternativeId a : r.order) {
      if (a >= m) {
        throw ArgumentError("ranking " + std::to_string(i) + " references alternative " +
                            std::to_string(a) + " >= m");
      }
      if (seen[a]) {
        throw ArgumentError("ranking " + std::to_string(i) + " repeats alternative " +
                            std::to_string(a));
      }
      seen[a] = 1;
    }
  }
  if (latent_agents && latent_agents->count != rankings.size()) {
    throw ArgumentError("latent agent features do not match agent count");
  }
  if (latent_alternatives && latent_alternatives->count != m) {
    throw ArgumentError("latent alternative features do not match alternative count");
  }
  if (latent_agents && latent_alternatives && latent_agents->dim != latent_alternatives->dim) {
    throw ArgumentError("latent feature dimensions differ");
  }
  for (const auto* lf : {&latent_agents, &latent_alternatives}) {
    if (*lf && (*lf)->values.size() != (*lf)->count * (*lf)->dim) {
      throw ArgumentError("latent feature storage has the wrong size");
    }
  }
}

std::vector<std::uint8_t> empty_ranking_mask(const Dataset& ds) {
  std::vector<std::uint8_t> mask(ds.agent_count());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = ds.rankings[i].empty() ? 1 : 0;
  return mask;
}

TrustVector::TrustVector(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double t = values_[i];
    if (!std::isfinite(t) || t < 0.0 || t > 1.0) {
      throw ArgumentError("trust of agent " + std::to_string(i) + " outside [0,1]");
    }
  }
}

}  // namespace tpc
