#include "tpc/preference_stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "tpc/errors.hpp"

namespace tpc {

void PairCounts::validate() const {
  for (double v : {n_ab, n_ba, n_unordered}) {
    if (!std::isfinite(v) || v < 0.0) throw ArgumentError("pair counts must be finite and non-negative");
  }
}

PreferenceTriple PreferenceTriple::normalized() const {
  const double s = p_plus + p_minus + c_minus;
  if (!(s > 0.0)) return *this;
  PreferenceTriple t = *this;
  t.p_plus /= s;
  t.p_minus /= s;
  t.c_minus /= s;
  return t;
}

const char* to_string(Decision d) noexcept {
  switch (d) {
    case Decision::PreferA:
      return "prefer-a";
    case Decision::PreferB:
      return "prefer-b";
    case Decision::Unpreferred:
      return "unpreferred";
  }
  return "unknown";
}

PairCounts pair_counts(std::span<const Ranking> rankings, std::span<const double> weights, AlternativeId a,
                       AlternativeId b) {
  if (a == b) throw ArgumentError("pair counts need two distinct alternatives");
  if (weights.size() != rankings.size()) throw ArgumentError("one weight per ranking is required");
  PairCounts pc;
  for (std::size_t i = 0; i < rankings.size(); ++i) {
    const auto pa = rank_position(rankings[i], a);
    const auto pb = rank_position(rankings[i], b);
    if (pa && pb) {
      (*pa < *pb ? pc.n_ab : pc.n_ba) += weights[i];
    } else if (pa || pb) {
      pc.n_unordered += weights[i];
    }
  }
  return pc;
}

double log_normalizer(const PairCounts& pc) {
  pc.validate();
  return std::lgamma(pc.n_ab + 1.0) + std::lgamma(pc.n_ba + 1.0) + std::lgamma(pc.n_unordered + 1.0) -
         std::lgamma(pc.total() + 3.0);
}

namespace {

double log_power(double exponent, double x) {
  if (exponent == 0.0) return 0.0;
  if (x <= 0.0) return -INFINITY;
  return exponent * std::log(x);
}

}  // namespace

double posterior_density(const PairCounts& pc, const SimplexPoint& x) {
  pc.validate();
  if (pc.total() == 0.0) return 2.0;
  const double lf = log_power(pc.n_ab, x.x_ab) + log_power(pc.n_ba, x.x_ba) +
                    log_power(pc.n_unordered, x.x_unordered()) - log_normalizer(pc);
  return std::exp(lf);
}

double certainty(const PairCounts& pc, int resolution) {
  pc.validate();
  if (resolution < kMinResolution) {
    throw ArgumentError("certainty resolution must be at least " + std::to_string(kMinResolution));
  }
  if (pc.total() == 0.0) return 0.0;

  // The Dirichlet and uniform densities are both symmetric in the three
  // coordinates and so is the centroid grid, so the exponents can be sorted.
  std::array<double, 3> e = {pc.n_ab, pc.n_ba, pc.n_unordered};
  std::sort(e.begin(), e.end(), std::greater<>());
  const double log_z = log_normalizer(PairCounts{e[0], e[1], e[2]});

  const int r = resolution;
  const double inv_r = 1.0 / r;
  const double total = e[0] + e[1] + e[2];
  double sum = 0.0;
  if (total <= 600.0) {
    // Powers are taken relative to the mode so that every table entry and
    // partial product stays inside double range.
    std::array<std::vector<double>, 3> up, down;
    double log_peak = -log_z;
    for (int c = 0; c < 3; ++c) {
      const double log_mode = e[c] > 0.0 ? std::log(e[c] / total) : 0.0;
      log_peak += e[c] * log_mode;
      up[c].resize(r);
      down[c].resize(r);
      for (int t = 0; t < r; ++t) {
        up[c][t] = std::exp(e[c] * (std::log((t + 1.0 / 3.0) * inv_r) - log_mode));
        down[c][t] = std::exp(e[c] * (std::log((t + 2.0 / 3.0) * inv_r) - log_mode));
      }
    }
    const double peak = std::exp(log_peak);
    for (int i = 0; i < r; ++i) {
      const double a_up = peak * up[0][i];
      const double* ub = up[1].data();
      const double* uc = up[2].data() + (r - 1 - i);
      for (int j = 0; i + j <= r - 1; ++j) sum += std::abs(a_up * ub[j] * uc[-j] - 2.0);
      const double a_down = peak * down[0][i];
      const double* db = down[1].data();
      const double* dc = down[2].data() + (r - 2 - i);
      for (int j = 0; i + j <= r - 2; ++j) sum += std::abs(a_down * db[j] * dc[-j] - 2.0);
    }
  } else {
    // Upward-cell centroid coordinates are (t + 1/3)/r, downward ones (t + 2/3)/r.
    std::vector<double> up(r), down(r);
    for (int t = 0; t < r; ++t) {
      up[t] = std::log((t + 1.0 / 3.0) * inv_r);
      down[t] = std::log((t + 2.0 / 3.0) * inv_r);
    }
    for (int i = 0; i < r; ++i) {
      for (int j = 0; i + j <= r - 1; ++j) {
        const int k = r - 1 - i - j;
        const double lf = e[0] * up[i] + e[1] * up[j] + e[2] * up[k] - log_z;
        sum += std::abs(std::exp(lf) - 2.0);
      }
      for (int j = 0; i + j <= r - 2; ++j) {
        const int k = r - 2 - i - j;
        const double lf = e[0] * down[i] + e[1] * down[j] + e[2] * down[k] - log_z;
        sum += std::abs(std::exp(lf) - 2.0);
      }
    }
  }
  const double cell_area = 0.5 * inv_r * inv_r;
  const double c = 0.5 * sum * cell_area;
  return std::clamp(c, 0.0, std::nextafter(1.0, 0.0));
}

double integrate_simplex_midpoint(const std::function<double(const SimplexPoint&)>& fn, int resolution) {
  if (resolution < 1) throw ArgumentError("resolution must be positive");
  const double h = 1.0 / resolution;
  double sum = 0.0;
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; i + j <= resolution - 1; ++j) {
      sum += fn(SimplexPoint{(i + 1.0 / 3.0) * h, (j + 1.0 / 3.0) * h});
    }
    for (int j = 0; i + j <= resolution - 2; ++j) {
      sum += fn(SimplexPoint{(i + 2.0 / 3.0) * h, (j + 2.0 / 3.0) * h});
    }
  }
  return sum * 0.5 * h * h;
}

double integrate_simplex_gauss(const std::function<double(const SimplexPoint&)>& fn) {
  using Rule = boost::math::quadrature::gauss<double, 40>;
  // x_ab = u, x_ba = (1 - u) v, Jacobian (1 - u).
  return Rule::integrate(
      [&](double u) {
        const double inner = Rule::integrate([&](double v) { return fn(SimplexPoint{u, (1.0 - u) * v}); }, 0.0, 1.0);
        return (1.0 - u) * inner;
      },
      0.0, 1.0);
}

double conflict(const PairCounts& pc) {
  pc.validate();
  const double s = pc.n_ab + pc.n_ba;
  if (s == 0.0) return 0.0;
  return std::min(pc.n_ab / s, pc.n_ba / s);
}

namespace {

PreferenceTriple triple_from(const PairCounts& pc, double c_plus) {
  const double total = pc.total();
  PreferenceTriple t;
  t.certainty = c_plus;
  t.p_plus = pc.n_ab / total * c_plus;
  t.p_minus = pc.n_ba / total * c_plus;
  t.c_minus = 1.0 - c_plus;
  t.conflict = conflict(pc);
  return t;
}

}  // namespace

PreferenceTriple to_preference(const PairCounts& pc, int resolution) {
  pc.validate();
  if (pc.total() == 0.0) throw ArgumentError("preference triple needs at least one observation");
  return triple_from(pc, certainty(pc, resolution));
}

Decision decide(const PreferenceTriple& t, const DecisionThresholds& th) {
  if (t.c_minus >= th.epsilon1) return Decision::Unpreferred;
  if (t.p_plus - t.p_minus >= th.epsilon2) return Decision::PreferA;
  if (t.p_minus - t.p_plus >= th.epsilon2) return Decision::PreferB;
  return Decision::Unpreferred;
}

double CertaintyCache::get(const PairCounts& pc, int resolution) {
  std::array<double, 3> e = {pc.n_ab, pc.n_ba, pc.n_unordered};
  std::sort(e.begin(), e.end());
  const std::array<double, 4> key = {e[0], e[1], e[2], static_cast<double>(resolution)};
  {
    std::lock_guard lock(mu_);
    if (auto it = table_.find(key); it != table_.end()) return it->second;
  }
  const double c = certainty(pc, resolution);
  std::lock_guard lock(mu_);
  table_.emplace(key, c);
  return c;
}

std::size_t CertaintyCache::size() const {
  std::lock_guard lock(mu_);
  return table_.size();
}

CertaintyCache& shared_certainty_cache() {
  static CertaintyCache cache;
  return cache;
}

std::vector<double> PreferenceMatrix::p_plus() const {
  std::vector<double> out(m_ * m_, 0.0);
  for (std::size_t a = 0; a < m_; ++a) {
    for (std::size_t b = 0; b < m_; ++b) {
      if (a != b) out[a * m_ + b] = at(a, b).p_plus;
    }
  }
  return out;
}

PreferenceMatrix pairwise_preferences(std::span<const Ranking> rankings, std::span<const double> weights,
                                      std::size_t m, int resolution, CertaintyCache* cache) {
  if (!weights.empty() && weights.size() != rankings.size()) {
    throw ArgumentError("one weight per ranking is required");
  }
  std::vector<PairCounts> counts(m * m);
  std::vector<std::uint32_t> pos(m);
  for (std::size_t r = 0; r < rankings.size(); ++r) {
    const double w = weights.empty() ? 1.0 : weights[r];
    std::fill(pos.begin(), pos.end(), 0);
    for (std::size_t p = 0; p < rankings[r].order.size(); ++p) {
      const AlternativeId a = rankings[r].order[p];
      if (a >= m) throw ArgumentError("ranking references an alternative >= m");
      pos[a] = static_cast<std::uint32_t>(p + 1);
    }
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) {
        PairCounts& pc = counts[a * m + b];
        if (pos[a] && pos[b]) {
          (pos[a] < pos[b] ? pc.n_ab : pc.n_ba) += w;
        } else if (pos[a] || pos[b]) {
          pc.n_unordered += w;
        }
      }
    }
  }

  PreferenceMatrix out(m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      const PairCounts& pc = counts[a * m + b];
      PreferenceTriple t;
      if (pc.total() > 0.0) {
        const double c = cache ? cache->get(pc, resolution) : certainty(pc, resolution);
        t = triple_from(pc, c);
      }
      out.at(a, b) = t;
      out.at(b, a) = t.reversed();
    }
  }
  return out;
}

}  // namespace tpc
