#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tpc/core.hpp"
#include "tpc/rng.hpp"

namespace tpc {

struct LatentBox {
  double low = 0.0;
  double high = 1.0;
};

struct PlackettLuceConfig {
  std::size_t n = 100;
  std::size_t m = 10;
  std::size_t d = 2;
  double noise_scale = 1.0;
  std::uint64_t seed = 0;
  LatentBox latent_box;

  // Throws ArgumentError unless n >= 1, m >= 2, d >= 1, noise_scale > 0 and low < high.
  void validate() const;
};

// Dense n x m matrix, row per agent.
class UtilityMatrix {
 public:
  UtilityMatrix() = default;
  UtilityMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), values_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& at(std::size_t i, std::size_t j) { return values_[i * cols_ + j]; }
  double at(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }
  std::span<const double> row(std::size_t i) const { return {values_.data() + i * cols_, cols_}; }
  std::span<double> row(std::size_t i) { return {values_.data() + i * cols_, cols_}; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

inline constexpr double kEulerGamma = 0.57721566490153286061;

// Zero-mean Gumbel draw: scale * (-ln(-ln U) - gamma).
double sample_gumbel(double scale, Rng& rng);

// u_j = exp(-||x - y_j||_2) + eps_j. Writes the eps_j draws to `noise_out`
// when it is non-empty (it must then have one slot per alternative).
std::vector<double> realized_utilities(std::span<const double> x, const LatentFeatures& alternatives,
                                       double noise_scale, Rng& rng,
                                       std::span<double> noise_out = {});

// Sequential draw without replacement, each pick with probability
// proportional to the remaining utilities. Negative utilities carry zero
// weight; once every remaining weight is zero the rest are appended by
// descending utility (lowest index on ties).
std::vector<AlternativeId> proportional_order(std::span<const double> utilities, Rng& rng);

struct SyntheticSample {
  Dataset dataset;
  UtilityMatrix utilities;
  UtilityMatrix noise;
  TrustVector trust;
};

// Full generator. Agent i uses its own rng stream derived from (seed, i), so
// the output depends only on the config.
SyntheticSample generate_synthetic(const PlackettLuceConfig& cfg);

inline Dataset sample_dataset(const PlackettLuceConfig& cfg) { return generate_synthetic(cfg).dataset; }

// trust_i = 1 - r_i / (n - 1), r_i the 0-based ascending rank of agent i's
// mean |noise| (ties share their average rank). n == 1 gives trust 1.
TrustVector derive_trust(const UtilityMatrix& noise);

}  // namespace tpc
