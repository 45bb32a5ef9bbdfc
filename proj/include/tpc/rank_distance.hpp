#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "tpc/core.hpp"

namespace tpc {

// Value used when two rankings share fewer than two alternatives.
inline constexpr double kNeutralDistance = 0.5;

// Discordant pairs over the common alternatives, normalized by C(s,2).
double normalized_kendall_tau(const Ranking& r1, const Ranking& r2);

// Same quantity from precomputed position tables (0 = absent).
double normalized_kendall_tau(std::span<const std::uint32_t> pos1, std::span<const std::uint32_t> pos2);

// Symmetric n x n matrix of pairwise normalized Kendall-Tau distances, zero diagonal.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  explicit FeatureMatrix(std::size_t n) : n_(n), values_(n * n, 0.0) {}
  FeatureMatrix(std::size_t n, std::vector<double> values);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {values_.data() + i * n_, n_}; }
  std::span<const double> values() const noexcept { return values_; }

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

FeatureMatrix feature_matrix(const Dataset& ds);

// FNV-1a over m and every ranking; keys the on-disk cache.
std::uint64_t dataset_hash(const Dataset& ds);

// Binary layout: 8-byte magic "TPCFMAT1", n as uint64 LE, then n*n
// row-major float64 LE values.
void save_feature_matrix(const FeatureMatrix& f, const std::filesystem::path& path);
FeatureMatrix load_feature_matrix(const std::filesystem::path& path);

// Loads <dir>/<hash>.fmat when present and of the right size, otherwise
// computes and stores it.
FeatureMatrix cached_feature_matrix(const Dataset& ds, const std::filesystem::path& cache_dir);

}  // namespace tpc
