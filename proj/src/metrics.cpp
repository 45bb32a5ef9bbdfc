#include "tpc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "tpc/errors.hpp"

namespace tpc {

void MetricWeights::validate() const {
  if (!(weight_a >= 0.0) || !(weight_b >= 0.0) || std::abs(weight_a + weight_b - 1.0) > 1e-12) {
    throw ArgumentError("metric weights must be non-negative and sum to 1");
  }
}

double rmse(const NeighborList& neighbors, const Dataset& ds, AgentId target) {
  if (!ds.latent_agents) throw UnsupportedMetricError("RMSE needs latent agent features");
  if (neighbors.agents.empty()) throw ArgumentError("RMSE over an empty neighbor list");
  const auto& lf = *ds.latent_agents;
  const auto x0 = lf.row(target);
  double sum = 0.0;
  for (AgentId j : neighbors.agents) {
    const auto xj = lf.row(j);
    for (std::size_t c = 0; c < lf.dim; ++c) sum += (xj[c] - x0[c]) * (xj[c] - x0[c]);
  }
  return std::sqrt(sum / static_cast<double>(neighbors.agents.size()));
}

double bias(const Ranking& r, std::span<const double> p_plus) {
  const std::size_t m = r.order.size();
  if (p_plus.size() != m * m) {
    throw ArgumentError("bias needs a complete ranking over the preference matrix's alternatives");
  }
  std::vector<std::uint8_t> seen(m, 0);
  for (AlternativeId a : r.order) {
    if (a >= m || seen[a]) throw ArgumentError("bias needs a permutation of all alternatives");
    seen[a] = 1;
  }
  double max_p = 0.0;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (a != b) max_p = std::max(max_p, p_plus[a * m + b]);
    }
  }
  if (max_p <= 0.0) return 0.0;
  double num = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) num += p_plus[r.order[i] * m + r.order[j]];
  }
  const double pairs = static_cast<double>(m) * static_cast<double>(m - 1) / 2.0;
  return num / (pairs * max_p);
}

double precision_at_5(const Ranking& predicted, const Ranking& truth) {
  constexpr std::size_t kTop = 5;
  const std::size_t lp = std::min(kTop, predicted.order.size());
  const std::size_t lt = std::min(kTop, truth.order.size());
  // Common alternatives of the two prefixes, in predicted order, with their truth positions.
  std::vector<std::size_t> truth_pos;
  for (std::size_t i = 0; i < lp; ++i) {
    for (std::size_t j = 0; j < lt; ++j) {
      if (predicted.order[i] == truth.order[j]) {
        truth_pos.push_back(j);
        break;
      }
    }
  }
  const std::size_t n = truth_pos.size();
  if (n < 2) return 1.0;
  std::size_t kt = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) kt += truth_pos[a] > truth_pos[b];
  }
  return 1.0 - static_cast<double>(kt) / static_cast<double>(n * (n - 1));
}

double pre_score(const Ranking& predicted, const Ranking& truth, std::span<const double> p_plus,
                 const MetricWeights& w) {
  return pre_score(precision_at_5(predicted, truth), bias(predicted, p_plus), w);
}

double pre_score(double precision5, double bias_value, const MetricWeights& w) {
  w.validate();
  return w.weight_a * precision5 + w.weight_b * bias_value;
}

}  // namespace tpc
