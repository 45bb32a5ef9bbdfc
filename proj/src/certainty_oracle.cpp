// Monte-Carlo estimate of the certainty integral. Kept apart from the
// quadrature path on purpose: different point set, direct powers, no log tables.
#include <cmath>
#include <string>

#include "tpc/errors.hpp"
#include "tpc/preference_stats.hpp"
#include "tpc/rng.hpp"

namespace tpc {

namespace {

constexpr int kStrata = 64;

bool is_integral(double v) { return v == std::floor(v) && v < 4096.0; }

double int_pow(double x, unsigned e) {
  double r = 1.0;
  while (e) {
    if (e & 1U) r *= x;
    x *= x;
    e >>= 1U;
  }
  return r;
}

}  // namespace

MonteCarloEstimate certainty_mc_oracle(const PairCounts& pc, std::size_t samples, std::uint64_t seed) {
  pc.validate();
  if (samples < 100000) throw ArgumentError("Monte-Carlo oracle needs at least 1e5 samples");
  if (pc.total() == 0.0) return {0.0, 0.0};

  const double norm = std::exp(-log_normalizer(pc));
  const bool integral = is_integral(pc.n_ab) && is_integral(pc.n_ba) && is_integral(pc.n_unordered);
  const auto ea = static_cast<unsigned>(pc.n_ab);
  const auto eb = static_cast<unsigned>(pc.n_ba);
  const auto ec = static_cast<unsigned>(pc.n_unordered);
  auto density = [&](double x, double y) {
    const double z = std::max(1.0 - x - y, 0.0);
    if (integral) return norm * int_pow(x, ea) * int_pow(y, eb) * int_pow(z, ec);
    return norm * std::pow(x, pc.n_ab) * std::pow(y, pc.n_ba) * std::pow(z, pc.n_unordered);
  };

  const std::size_t cells = static_cast<std::size_t>(kStrata) * kStrata;
  const std::size_t per_cell = std::max<std::size_t>(2, samples / cells);
  const double h = 1.0 / kStrata;
  // Each stratum carries weight 1/cells of the uniform measure.
  const double w = 1.0 / static_cast<double>(cells);

  Rng rng = make_rng(seed, 0x6f7261636c65ULL);
  double estimate = 0.0;
  double variance = 0.0;
  for (int i = 0; i < kStrata; ++i) {
    for (int j = 0; i + j < kStrata; ++j) {
      for (int orient = 0; orient < 2; ++orient) {
        if (orient == 1 && i + j > kStrata - 2) continue;
        // Upward cell: corner (i, j), legs +x and +y. Downward cell: corner
        // (i+1, j+1), legs -x and -y.
        const double ox = orient == 0 ? i * h : (i + 1) * h;
        const double oy = orient == 0 ? j * h : (j + 1) * h;
        const double sx = orient == 0 ? h : -h;
        double mean = 0.0;
        double m2 = 0.0;
        for (std::size_t s = 0; s < per_cell; ++s) {
          double u = uniform_open01(rng);
          double v = uniform_open01(rng);
          if (u + v > 1.0) {
            u = 1.0 - u;
            v = 1.0 - v;
          }
          const double g = std::abs(density(ox + sx * u, oy + sx * v) - 2.0);
          const double delta = g - mean;
          mean += delta / static_cast<double>(s + 1);
          m2 += delta * (g - mean);
        }
        const double var = m2 / static_cast<double>(per_cell - 1);
        // certainty = 1/2 * integral |f - 2| dA = 1/4 * E_uniform |f - 2|.
        estimate += 0.25 * w * mean;
        variance += (0.25 * w) * (0.25 * w) * var / static_cast<double>(per_cell);
      }
    }
  }
  return {estimate, std::sqrt(variance)};
}

}  // namespace tpc
