#include "tpc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tpc/errors.hpp"

namespace tpc {

void PlackettLuceConfig::validate() const {
  if (n < 1) throw ArgumentError("need at least one agent");
  if (m < 2) throw ArgumentError("need at least two alternatives");
  if (d < 1) throw ArgumentError("latent dimension must be positive");
  if (!(noise_scale > 0.0) || !std::isfinite(noise_scale)) {
    throw ArgumentError("noise scale must be positive");
  }
  if (!(latent_box.low < latent_box.high)) throw ArgumentError("latent box is empty");
}

double sample_gumbel(double scale, Rng& rng) {
  if (!(scale > 0.0)) throw ArgumentError("gumbel scale must be positive");
  const double u = uniform_open01(rng);
  return scale * (-std::log(-std::log(u)) - kEulerGamma);
}

std::vector<double> realized_utilities(std::span<const double> x, const LatentFeatures& alternatives,
                                       double noise_scale, Rng& rng, std::span<double> noise_out) {
  if (alternatives.dim != x.size()) {
    throw ArgumentError("agent latent dimension " + std::to_string(x.size()) +
                        " does not match alternative dimension " + std::to_string(alternatives.dim));
  }
  if (!noise_out.empty() && noise_out.size() != alternatives.count) {
    throw ArgumentError("noise output has the wrong length");
  }
  std::vector<double> u(alternatives.count);
  for (std::size_t j = 0; j < alternatives.count; ++j) {
    const auto y = alternatives.row(j);
    double sq = 0.0;
    for (std::size_t c = 0; c < x.size(); ++c) sq += (x[c] - y[c]) * (x[c] - y[c]);
    const double eps = sample_gumbel(noise_scale, rng);
    if (!noise_out.empty()) noise_out[j] = eps;
    u[j] = std::exp(-std::sqrt(sq)) + eps;
  }
  return u;
}

std::vector<AlternativeId> proportional_order(std::span<const double> utilities, Rng& rng) {
  std::vector<AlternativeId> remaining(utilities.size());
  std::iota(remaining.begin(), remaining.end(), AlternativeId{0});
  std::vector<AlternativeId> order;
  order.reserve(utilities.size());

  while (!remaining.empty()) {
    double total = 0.0;
    for (AlternativeId a : remaining) total += std::max(utilities[a], 0.0);
    std::size_t pick = 0;
    if (total > 0.0) {
      const double target = uniform_open01(rng) * total;
      double acc = 0.0;
      pick = remaining.size();
      for (std::size_t p = 0; p < remaining.size(); ++p) {
        const double w = std::max(utilities[remaining[p]], 0.0);
        if (w <= 0.0) continue;
        acc += w;
        pick = p;
        if (target < acc) break;
      }
    } else {
      for (std::size_t p = 1; p < remaining.size(); ++p) {
        if (utilities[remaining[p]] > utilities[remaining[pick]]) pick = p;
      }
    }
    order.push_back(remaining[pick]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return order;
}

namespace {

LatentFeatures draw_latent(std::size_t count, std::size_t dim, const LatentBox& box, Rng& rng) {
  LatentFeatures lf;
  lf.count = count;
  lf.dim = dim;
  lf.values.resize(count * dim);
  for (double& v : lf.values) v = box.low + (box.high - box.low) * uniform_open01(rng);
  return lf;
}

}  // namespace

SyntheticSample generate_synthetic(const PlackettLuceConfig& cfg) {
  cfg.validate();
  SyntheticSample s;
  s.dataset.m = cfg.m;
  s.utilities = UtilityMatrix(cfg.n, cfg.m);
  s.noise = UtilityMatrix(cfg.n, cfg.m);

  Rng alt_rng = make_rng(cfg.seed, 0);
  s.dataset.latent_alternatives = draw_latent(cfg.m, cfg.d, cfg.latent_box, alt_rng);

  LatentFeatures agents;
  agents.count = cfg.n;
  agents.dim = cfg.d;
  agents.values.resize(cfg.n * cfg.d);
  s.dataset.rankings.resize(cfg.n);

  for (std::size_t i = 0; i < cfg.n; ++i) {
    Rng rng = make_rng(cfg.seed, i + 1);
    for (double& v : agents.row(i)) {
      v = cfg.latent_box.low + (cfg.latent_box.high - cfg.latent_box.low) * uniform_open01(rng);
    }
    const auto u = realized_utilities(agents.row(i), *s.dataset.latent_alternatives, cfg.noise_scale,
                                      rng, s.noise.row(i));
    std::copy(u.begin(), u.end(), s.utilities.row(i).begin());
    s.dataset.rankings[i] = Ranking{i, proportional_order(u, rng)};
  }
  s.dataset.latent_agents = std::move(agents);
  s.trust = derive_trust(s.noise);
  return s;
}

TrustVector derive_trust(const UtilityMatrix& noise) {
  const std::size_t n = noise.rows();
  if (n == 0) return TrustVector{};
  if (n == 1) return TrustVector::uniform(1);

  std::vector<double> mean_abs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (double e : noise.row(i)) s += std::abs(e);
    mean_abs[i] = noise.cols() ? s / static_cast<double>(noise.cols()) : 0.0;
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return mean_abs[a] < mean_abs[b]; });

  std::vector<double> trust(n);
  const double denom = static_cast<double>(n - 1);
  for (std::size_t lo = 0; lo < n;) {
    std::size_t hi = lo + 1;
    while (hi < n && mean_abs[idx[hi]] == mean_abs[idx[lo]]) ++hi;
    const double avg_rank = 0.5 * static_cast<double>(lo + hi - 1);
    for (std::size_t p = lo; p < hi; ++p) trust[idx[p]] = 1.0 - avg_rank / denom;
    lo = hi;
  }
  return TrustVector(std::move(trust));
}

}  // namespace tpc
