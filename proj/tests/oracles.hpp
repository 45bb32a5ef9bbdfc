#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "tpc/core.hpp"
#include "tpc/rank_distance.hpp"

namespace oracle {

// Discordant pairs by direct enumeration of unordered alternative pairs, using
// linear scans for positions.
inline double brute_force_nk(const tpc::Ranking& r1, const tpc::Ranking& r2) {
  auto pos = [](const tpc::Ranking& r, tpc::AlternativeId a) -> long {
    for (std::size_t i = 0; i < r.order.size(); ++i) {
      if (r.order[i] == a) return static_cast<long>(i);
    }
    return -1;
  };
  std::vector<tpc::AlternativeId> common;
  for (auto a : r1.order) {
    if (pos(r2, a) >= 0) common.push_back(a);
  }
  const std::size_t s = common.size();
  if (s < 2) return 0.5;
  long disagree = 0;
  for (std::size_t x = 0; x < s; ++x) {
    for (std::size_t y = x + 1; y < s; ++y) {
      const long d1 = pos(r1, common[x]) - pos(r1, common[y]);
      const long d2 = pos(r2, common[x]) - pos(r2, common[y]);
      if (d1 * d2 < 0) ++disagree;
    }
  }
  return static_cast<double>(disagree) / (static_cast<double>(s) * (s - 1) / 2.0);
}

inline double direct_anchor_distance(const tpc::FeatureMatrix& f, std::size_t i, std::size_t j) {
  double s = 0.0;
  for (std::size_t t = 0; t < f.size(); ++t) {
    if (t == i || t == j) continue;
    s += std::abs(f(i, t) - f(j, t));
  }
  return s / static_cast<double>(f.size() - 2);
}

// Every candidate with its distance, fully sorted by (distance, index).
inline std::vector<std::pair<double, std::size_t>> exhaustive_order(const std::vector<double>& dist,
                                                                    std::size_t target,
                                                                    const std::vector<bool>& allowed) {
  std::vector<std::pair<double, std::size_t>> all;
  for (std::size_t j = 0; j < dist.size(); ++j) {
    if (j != target && allowed[j]) all.emplace_back(dist[j], j);
  }
  std::sort(all.begin(), all.end());
  return all;
}

inline tpc::Ranking random_permutation(std::size_t m, std::mt19937_64& rng, tpc::AgentId agent = 0) {
  tpc::Ranking r{agent, std::vector<tpc::AlternativeId>(m)};
  std::iota(r.order.begin(), r.order.end(), 0u);
  std::shuffle(r.order.begin(), r.order.end(), rng);
  return r;
}

// Random subset of 0..m-1 in random order (possibly empty).
inline tpc::Ranking random_partial(std::size_t m, std::mt19937_64& rng, tpc::AgentId agent = 0) {
  tpc::Ranking r = random_permutation(m, rng, agent);
  r.order.resize(std::uniform_int_distribution<std::size_t>(0, m)(rng));
  return r;
}

inline tpc::Dataset random_dataset(std::size_t n, std::size_t m, std::mt19937_64& rng, bool partial = false) {
  tpc::Dataset ds;
  ds.m = m;
  for (std::size_t i = 0; i < n; ++i) {
    ds.rankings.push_back(partial ? random_partial(m, rng, i) : random_permutation(m, rng, i));
  }
  return ds;
}

}  // namespace oracle
