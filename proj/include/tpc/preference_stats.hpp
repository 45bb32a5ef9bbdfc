#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <span>
#include <vector>

#include "tpc/core.hpp"

namespace tpc {

// Weighted tallies for one ordered alternative pair (A, B): rankings placing
// A first, rankings placing B first, and rankings holding only one of the two.
struct PairCounts {
  double n_ab = 0.0;
  double n_ba = 0.0;
  double n_unordered = 0.0;

  double total() const noexcept { return n_ab + n_ba + n_unordered; }
  PairCounts swapped() const noexcept { return {n_ba, n_ab, n_unordered}; }
  // Throws ArgumentError on negative or non-finite fields.
  void validate() const;

  friend bool operator==(const PairCounts&, const PairCounts&) = default;
};

struct SimplexPoint {
  double x_ab = 0.0;
  double x_ba = 0.0;
  double x_unordered() const noexcept { return 1.0 - x_ab - x_ba; }
};

// Raw bijection output. p_plus + p_minus + c_minus equals 1 only when
// n_unordered is zero; normalized() rescales the three masses to sum to one.
struct PreferenceTriple {
  double p_plus = 0.0;
  double p_minus = 0.0;
  double c_minus = 1.0;
  double certainty = 0.0;
  double conflict = 0.0;

  PreferenceTriple normalized() const;
  // Same pair seen from B to A.
  PreferenceTriple reversed() const noexcept { return {p_minus, p_plus, c_minus, certainty, conflict}; }
};

struct DecisionThresholds {
  double epsilon1 = 0.8;
  double epsilon2 = 0.05;
};

enum class Decision { PreferA, PreferB, Unpreferred };

const char* to_string(Decision d) noexcept;

inline constexpr int kDefaultResolution = 400;
inline constexpr int kMinResolution = 50;

// Weights are per ranking. Rankings holding both a and b add their weight to
// n_ab or n_ba, rankings holding exactly one add to n_unordered, rankings
// holding neither are ignored.
PairCounts pair_counts(std::span<const Ranking> rankings, std::span<const double> weights, AlternativeId a,
                       AlternativeId b);

// ln of the integral of x_ab^n_ab x_ba^n_ba x_u^n_u over the simplex, in closed
// form through log-gamma (real counts allowed).
double log_normalizer(const PairCounts& pc);

// Normalized posterior density at x; the constant 2 for all-zero counts.
// Returns 0 at a boundary point whose coordinate carries a positive exponent.
double posterior_density(const PairCounts& pc, const SimplexPoint& x);

// Total-variation distance between the posterior and the uniform density 2 on
// the simplex, by centroid-rule quadrature over resolution^2 equal triangles.
// Clamped to [0, 1).
double certainty(const PairCounts& pc, int resolution = kDefaultResolution);

// Integral over the simplex {x_ab, x_ba >= 0, x_ab + x_ba <= 1} by the same
// centroid rule.
double integrate_simplex_midpoint(const std::function<double(const SimplexPoint&)>& fn, int resolution);

// Collapsed (Duffy) tensor Gauss-Legendre rule; exact for polynomials of
// total degree below ~60.
double integrate_simplex_gauss(const std::function<double(const SimplexPoint&)>& fn);

struct MonteCarloEstimate {
  double value = 0.0;
  double standard_error = 0.0;
};

// Independent Monte-Carlo estimate of certainty: stratified uniform sampling
// of the simplex (fixed 64^2 equal-area strata, samples spread evenly), with
// the integrand evaluated by direct powers rather than the log tables used
// by certainty(). Deterministic per seed. samples must be >= 1e5.
MonteCarloEstimate certainty_mc_oracle(const PairCounts& pc, std::size_t samples, std::uint64_t seed);

// min{n_ab, n_ba} / (n_ab + n_ba); 0 when both are zero.
double conflict(const PairCounts& pc);

// Throws ArgumentError when all counts are zero.
PreferenceTriple to_preference(const PairCounts& pc, int resolution = kDefaultResolution);

// Three-way decision cascade on (c_minus, p_plus - p_minus).
Decision decide(const PreferenceTriple& t, const DecisionThresholds& th);

// Memoizes certainty by (sorted counts, resolution). Safe to share across threads.
class CertaintyCache {
 public:
  double get(const PairCounts& pc, int resolution = kDefaultResolution);
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::map<std::array<double, 4>, double> table_;
};

CertaintyCache& shared_certainty_cache();

// Oriented m x m table of preference triples: at(a, b) describes "a before b".
class PreferenceMatrix {
 public:
  PreferenceMatrix() = default;
  explicit PreferenceMatrix(std::size_t m) : m_(m), cells_(m * m) {}

  std::size_t size() const noexcept { return m_; }
  const PreferenceTriple& at(std::size_t a, std::size_t b) const { return cells_[a * m_ + b]; }
  PreferenceTriple& at(std::size_t a, std::size_t b) { return cells_[a * m_ + b]; }

  // m x m matrix of p_plus values (zero diagonal), row-major.
  std::vector<double> p_plus() const;

 private:
  std::size_t m_ = 0;
  std::vector<PreferenceTriple> cells_;
};

// Triples for every pair from the given rankings. Empty `weights` means unit
// weights. Pairs nobody ranked get certainty 0 (c_minus = 1).
PreferenceMatrix pairwise_preferences(std::span<const Ranking> rankings, std::span<const double> weights,
                                      std::size_t m, int resolution = kDefaultResolution,
                                      CertaintyCache* cache = nullptr);

}  // namespace tpc
