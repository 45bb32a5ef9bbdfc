#include "tpc/preference_stats.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "tpc/errors.hpp"

namespace {

using tpc::PairCounts;
using tpc::Ranking;

// Plain iterated adaptive integral of x^a y^b (1-x-y)^c over the simplex,
// without the collapsed substitution used by the library.
double simplex_moment(double a, double b, double c) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  return GK::integrate(
      [&](double x) {
        return GK::integrate(
            [&](double y) { return std::pow(x, a) * std::pow(y, b) * std::pow(std::max(1.0 - x - y, 0.0), c); },
            0.0, 1.0 - x, 15, 1e-13);
      },
      0.0, 1.0, 15, 1e-13);
}

TEST(preference_stats, pair_counts_examples) {
  const std::vector<Ranking> rs = {Ranking{0, {0, 1}}, Ranking{1, {0, 1}}, Ranking{2, {1, 0}}};
  const std::vector<double> unit(3, 1.0);
  EXPECT_EQ(tpc::pair_counts(rs, unit, 0, 1), (PairCounts{2, 1, 0}));

  const std::vector<Ranking> one = {Ranking{0, {0, 2}}};
  const std::vector<double> w1 = {1.0};
  EXPECT_EQ(tpc::pair_counts(one, w1, 0, 1), (PairCounts{0, 0, 1}));

  const std::vector<Ranking> two = {Ranking{0, {0, 1}}, Ranking{1, {1, 0}}};
  const std::vector<double> w2 = {0.5, 2.0};
  EXPECT_EQ(tpc::pair_counts(two, w2, 0, 1), (PairCounts{0.5, 2.0, 0}));

  const std::vector<Ranking> none = {Ranking{0, {2, 3}}};
  EXPECT_EQ(tpc::pair_counts(none, w1, 0, 1), (PairCounts{0, 0, 0}));

  EXPECT_THROW(tpc::pair_counts(rs, unit, 1, 1), tpc::ArgumentError);
  EXPECT_THROW(tpc::pair_counts(rs, w1, 0, 1), tpc::ArgumentError);
}

TEST(preference_stats, log_normalizer_closed_forms) {
  EXPECT_NEAR(tpc::log_normalizer(PairCounts{0, 0, 0}), std::log(0.5), 1e-14);
  EXPECT_NEAR(tpc::log_normalizer(PairCounts{1, 0, 0}), std::log(1.0 / 6.0), 1e-14);
  EXPECT_NEAR(tpc::log_normalizer(PairCounts{2, 1, 0}), std::log(1.0 / 60.0), 1e-14);
}

TEST(preference_stats, log_normalizer_matches_quadrature) {
  for (const PairCounts pc : {PairCounts{1, 0, 0}, PairCounts{2, 1, 0}, PairCounts{3, 2, 1}, PairCounts{0.5, 2.5, 1.25},
                              PairCounts{7, 0, 4}}) {
    const double q = simplex_moment(pc.n_ab, pc.n_ba, pc.n_unordered);
    EXPECT_NEAR(std::exp(tpc::log_normalizer(pc)), q, 1e-9 * q) << pc.n_ab << "," << pc.n_ba;
  }
  EXPECT_THROW(tpc::log_normalizer(PairCounts{-1, 0, 0}), tpc::ArgumentError);
}

TEST(preference_stats, posterior_density_examples) {
  EXPECT_EQ(tpc::posterior_density(PairCounts{0, 0, 0}, {0.2, 0.3}), 2.0);
  EXPECT_NEAR(tpc::posterior_density(PairCounts{5, 0, 0}, {1.0 - 1e-12, 0.0}), 42.0, 1e-8);
  EXPECT_EQ(tpc::posterior_density(PairCounts{1, 2, 0}, {0.0, 0.5}), 0.0);
  const PairCounts pc{3, 2, 1};
  const double integral = tpc::integrate_simplex_gauss([&](const tpc::SimplexPoint& x) {
    return tpc::posterior_density(pc, x);
  });
  EXPECT_NEAR(integral, 1.0, 1e-6);
}

TEST(preference_stats, certainty_zero_counts) {
  EXPECT_EQ(tpc::certainty(PairCounts{0, 0, 0}), 0.0);
  EXPECT_THROW(tpc::certainty(PairCounts{1, 0, 0}, 49), tpc::ArgumentError);
}

TEST(preference_stats, certainty_orderings) {
  EXPECT_LT(tpc::certainty(PairCounts{2, 1, 0}), tpc::certainty(PairCounts{20, 10, 0}));
  EXPECT_GT(tpc::certainty(PairCounts{9, 1, 0}), tpc::certainty(PairCounts{5, 5, 0}));
}

TEST(preference_stats, certainty_in_unit_interval_and_swap_symmetric) {
  for (double a = 0; a <= 12; a += 1.5) {
    for (double b = 0; b <= 12; b += 2) {
      for (double u : {0.0, 1.0, 3.0}) {
        const PairCounts pc{a, b, u};
        const double c = tpc::certainty(pc, 200);
        EXPECT_GE(c, 0.0);
        EXPECT_LT(c, 1.0);
        EXPECT_EQ(c, tpc::certainty(pc.swapped(), 200));
        EXPECT_EQ(tpc::conflict(pc), tpc::conflict(pc.swapped()));
      }
    }
  }
}

TEST(preference_stats, certainty_matches_monte_carlo_on_321) {
  const PairCounts pc{3, 2, 1};
  const double q = tpc::certainty(pc);
  const auto mc = tpc::certainty_mc_oracle(pc, 10'000'000, 1);
  EXPECT_NEAR(q, mc.value, 1e-3);
  EXPECT_LE(std::abs(q - mc.value), 3 * mc.standard_error);
}

TEST(preference_stats, monte_carlo_oracle_behaviour) {
  const auto zero = tpc::certainty_mc_oracle(PairCounts{0, 0, 0}, 100'000, 3);
  EXPECT_EQ(zero.value, 0.0);
  EXPECT_EQ(zero.standard_error, 0.0);

  const auto a = tpc::certainty_mc_oracle(PairCounts{4, 1, 2}, 400'000, 5);
  const auto b = tpc::certainty_mc_oracle(PairCounts{4, 1, 2}, 400'000, 5);
  EXPECT_EQ(a.value, b.value);
  const auto c = tpc::certainty_mc_oracle(PairCounts{4, 1, 2}, 800'000, 5);
  const double ratio = a.standard_error / c.standard_error;
  EXPECT_NEAR(ratio, std::sqrt(2.0), 0.1);

  EXPECT_THROW(tpc::certainty_mc_oracle(PairCounts{1, 0, 0}, 1000, 0), tpc::ArgumentError);
}

TEST(preference_stats, conflict_examples) {
  EXPECT_EQ(tpc::conflict(PairCounts{3, 3, 0}), 0.5);
  EXPECT_EQ(tpc::conflict(PairCounts{7, 0, 2}), 0.0);
  EXPECT_EQ(tpc::conflict(PairCounts{3, 1, 5}), 0.25);
  EXPECT_EQ(tpc::conflict(PairCounts{0, 0, 5}), 0.0);
}

TEST(preference_stats, to_preference_examples) {
  const auto u = tpc::to_preference(PairCounts{0, 0, 4});
  EXPECT_EQ(u.p_plus, 0.0);
  EXPECT_EQ(u.p_minus, 0.0);
  EXPECT_DOUBLE_EQ(u.c_minus, 1.0 - tpc::certainty(PairCounts{0, 0, 4}));

  const auto s = tpc::to_preference(PairCounts{3, 3, 2});
  EXPECT_EQ(s.p_plus, s.p_minus);

  const auto t = tpc::to_preference(PairCounts{3, 1, 0});
  const double c = tpc::certainty_mc_oracle(PairCounts{3, 1, 0}, 1'000'000, 9).value;
  EXPECT_NEAR(t.certainty, c, 2e-3);
  EXPECT_DOUBLE_EQ(t.p_plus, 0.75 * t.certainty);
  EXPECT_DOUBLE_EQ(t.p_minus, 0.25 * t.certainty);
  EXPECT_DOUBLE_EQ(t.c_minus, 1.0 - t.certainty);
  EXPECT_NEAR(t.p_plus + t.p_minus + t.c_minus, 1.0, 1e-12);
  EXPECT_EQ(t.conflict, 0.25);

  EXPECT_THROW(tpc::to_preference(PairCounts{0, 0, 0}), tpc::ArgumentError);
}

TEST(preference_stats, normalized_view_sums_to_one) {
  const auto t = tpc::to_preference(PairCounts{2, 1, 3});
  EXPECT_GT(std::abs(t.p_plus + t.p_minus + t.c_minus - 1.0), 1e-6);
  const auto n = t.normalized();
  EXPECT_NEAR(n.p_plus + n.p_minus + n.c_minus, 1.0, 1e-12);
  EXPECT_NEAR(n.p_plus / n.p_minus, 2.0, 1e-12);
}

TEST(preference_stats, decision_cascade) {
  const tpc::DecisionThresholds th{0.8, 0.05};
  EXPECT_EQ(tpc::decide(tpc::PreferenceTriple{0.03, 0.02, 0.95}, th), tpc::Decision::Unpreferred);
  EXPECT_EQ(tpc::decide(tpc::PreferenceTriple{0.7, 0.1, 0.2}, th), tpc::Decision::PreferA);
  EXPECT_EQ(tpc::decide(tpc::PreferenceTriple{0.41, 0.39, 0.2}, th), tpc::Decision::Unpreferred);
  EXPECT_EQ(tpc::decide(tpc::PreferenceTriple{0.1, 0.7, 0.2}, th), tpc::Decision::PreferB);
  EXPECT_STREQ(tpc::to_string(tpc::Decision::PreferA), "prefer-a");
}

TEST(preference_stats, decision_swaps_with_orientation) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const tpc::DecisionThresholds th{0.8, 0.05};
  for (int rep = 0; rep < 1000; ++rep) {
    tpc::PreferenceTriple t{unit(rng), unit(rng), unit(rng)};
    const auto d = tpc::decide(t, th);
    const auto r = tpc::decide(t.reversed(), th);
    if (d == tpc::Decision::PreferA) EXPECT_EQ(r, tpc::Decision::PreferB);
    if (d == tpc::Decision::PreferB) EXPECT_EQ(r, tpc::Decision::PreferA);
    if (d == tpc::Decision::Unpreferred) EXPECT_EQ(r, tpc::Decision::Unpreferred);
  }
}

TEST(preference_stats, midpoint_rule_integrates_low_degree_exactly) {
  EXPECT_NEAR(tpc::integrate_simplex_midpoint([](const tpc::SimplexPoint&) { return 1.0; }, 50), 0.5, 1e-14);
  EXPECT_NEAR(tpc::integrate_simplex_midpoint([](const tpc::SimplexPoint& x) { return x.x_ab; }, 50), 1.0 / 6.0,
              1e-14);
  EXPECT_NEAR(tpc::integrate_simplex_gauss([](const tpc::SimplexPoint& x) { return x.x_ab * x.x_ba; }), 1.0 / 24.0,
              1e-14);
}

TEST(preference_stats, cache_returns_direct_values) {
  tpc::CertaintyCache cache;
  const double direct = tpc::certainty(PairCounts{4, 2, 1}, 100);
  EXPECT_EQ(cache.get(PairCounts{4, 2, 1}, 100), direct);
  EXPECT_EQ(cache.get(PairCounts{2, 4, 1}, 100), direct);
  EXPECT_EQ(cache.get(PairCounts{1, 2, 4}, 100), tpc::certainty(PairCounts{1, 2, 4}, 100));
  EXPECT_EQ(cache.size(), 1u);
}

TEST(preference_stats, pairwise_preferences_orientation) {
  const std::vector<Ranking> rs = {Ranking{0, {0, 1, 2}}, Ranking{1, {0, 2, 1}}, Ranking{2, {1, 0}}};
  const auto pm = tpc::pairwise_preferences(rs, {}, 4, 100);
  const std::vector<double> unit(3, 1.0);
  for (tpc::AlternativeId a = 0; a < 4; ++a) {
    for (tpc::AlternativeId b = 0; b < 4; ++b) {
      if (a == b) continue;
      const auto pc = tpc::pair_counts(rs, unit, a, b);
      const auto& t = pm.at(a, b);
      if (pc.total() == 0.0) {
        EXPECT_EQ(t.certainty, 0.0);
        EXPECT_EQ(t.c_minus, 1.0);
        continue;
      }
      const auto expect = tpc::to_preference(pc, 100);
      EXPECT_DOUBLE_EQ(t.p_plus, expect.p_plus);
      EXPECT_DOUBLE_EQ(t.p_minus, expect.p_minus);
      EXPECT_DOUBLE_EQ(t.c_minus, expect.c_minus);
    }
  }
  const auto pp = pm.p_plus();
  EXPECT_EQ(pp[0], 0.0);
  EXPECT_EQ(pp[1], pm.at(0, 1).p_plus);
}

}  // namespace
