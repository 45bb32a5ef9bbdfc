#pragma once

#include <span>

#include "tpc/core.hpp"
#include "tpc/neighbors.hpp"

namespace tpc {

struct MetricWeights {
  double weight_a = 0.5;
  double weight_b = 0.5;

  // Throws ArgumentError unless both are non-negative and sum to 1.
  void validate() const;
};

// sqrt(mean squared Euclidean latent distance from the target to each
// neighbor). Throws UnsupportedMetricError without latent agent features.
double rmse(const NeighborList& neighbors, const Dataset& ds, AgentId target);

// Sum of p_plus(r[i], r[j]) over positions i < j, divided by
// C(m,2) * max off-diagonal p_plus; 0 when that max is 0. `p_plus` is m x m
// row-major. Throws ArgumentError unless r is a permutation of 0..m-1.
double bias(const Ranking& r, std::span<const double> p_plus);

// 1 - KT / (N (N - 1)) over the common part of the two top-5 prefixes, where
// KT counts discordant pairs there and N is its size; 1 when N < 2.
double precision_at_5(const Ranking& predicted, const Ranking& truth);

double pre_score(const Ranking& predicted, const Ranking& truth, std::span<const double> p_plus,
                 const MetricWeights& w);
// Same combination from already computed components.
double pre_score(double precision5, double bias_value, const MetricWeights& w);

}  // namespace tpc
