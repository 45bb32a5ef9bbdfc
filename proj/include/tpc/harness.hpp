#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tpc/completion.hpp"
#include "tpc/core.hpp"
#include "tpc/metrics.hpp"
#include "tpc/synth.hpp"

namespace tpc {

struct MaskedDataset {
  Dataset masked;
  // Removed alternatives per agent, in their original relative order.
  std::vector<Ranking> held_out;
};

// Removes round(fraction * |order|) randomly chosen alternatives from each
// ranking (agent i uses rng stream i of `seed`); survivors keep their order.
MaskedDataset mask_rankings(const Dataset& ds, double fraction, std::uint64_t seed);

enum class DataSource { Synthetic, Preflib };

struct MethodSpec {
  NeighborMethod neighbors = NeighborMethod::Anchor;
  CompletionMethod completion = CompletionMethod::Baseline;

  // "anchor+baseline", "trust-anchor+certainty", ...
  std::string name() const;
  friend bool operator==(const MethodSpec&, const MethodSpec&) = default;
};

MethodSpec parse_method(const std::string& text);
const char* neighbor_method_name(NeighborMethod m) noexcept;
NeighborMethod parse_neighbor_method(const std::string& text);
CompletionMethod parse_completion_method(const std::string& text);

struct ExperimentConfig {
  DataSource source = DataSource::Synthetic;
  PlackettLuceConfig synthetic{500, 10, 2, 1.0, 0, {}};
  // Generator seed; derived from master_seed when unset.
  std::optional<std::uint64_t> synthetic_seed;
  std::filesystem::path preflib_path;
  std::optional<std::size_t> subsample;

  std::vector<std::size_t> k_grid;
  std::vector<MethodSpec> methods;
  DecisionThresholds thresholds;
  double epsilon0 = 0.1;
  double mask_fraction = 0.3;
  MetricWeights metric_weights;
  std::filesystem::path output_dir;
  std::uint64_t master_seed = 0;
  // Number of target agents (seeded sample); all agents when unset.
  std::optional<std::size_t> targets;

  StatsScope scope = StatsScope::Neighbors;
  bool trust_weighted_counts = false;
  GateFallback fallback = GateFallback::Zero;
  int resolution = kDefaultResolution;
  std::filesystem::path cache_dir;

  // Throws ArgumentError on an inconsistent configuration.
  void validate(std::size_t agent_count) const;
};

// Key list shared by the config file and the experiment subcommand flags.
const std::vector<std::string>& experiment_config_keys();

// Flat "key=value" lines; '#' starts a comment; blank lines ignored.
// Keys are normalized so that '-' and '_' are interchangeable.
std::map<std::string, std::string> read_key_values(const std::filesystem::path& path);
std::map<std::string, std::string> parse_key_values(const std::string& text);

// Builds a config from key/value pairs layered over the defaults. Throws
// ArgumentError on unknown keys or malformed values.
ExperimentConfig experiment_config_from(const std::map<std::string, std::string>& kv);

struct ExperimentData {
  Dataset dataset;
  std::optional<TrustVector> trust;
  DataSource source = DataSource::Synthetic;
};

// Generates or loads (and subsamples) the configured data.
ExperimentData load_experiment_data(const ExperimentConfig& cfg);

struct ExperimentRow {
  std::string method;
  std::size_t k = 0;
  std::optional<double> rmse;
  double bias = 0.0;
  double precision5 = 0.0;
  double pre = 0.0;
};

struct NeighborRow {
  std::string method;
  std::size_t k = 0;
  double rmse = 0.0;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;
  // RMSE per neighbor method and k (synthetic data only).
  std::vector<NeighborRow> neighbor_rows;
  std::vector<std::filesystem::path> written;
};

class ExperimentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Masks the data, finds neighbors for every target and every k, completes,
// evaluates, and averages over targets in agent order. Writes the fixed-name
// CSVs when cfg.output_dir is set. Stage failures are collected with their
// (method, k, target) context and reported together as ExperimentError.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const ExperimentData& data);
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// CSV file names consumed by the plotting scripts.
inline constexpr const char* kFig3File = "fig3_rmse.csv";
inline constexpr const char* kFig4File = "fig4_bias.csv";
inline constexpr const char* kFig5File = "fig5_pre.csv";
inline constexpr const char* kFig6File = "fig6_bias_real.csv";
inline constexpr const char* kFig7File = "fig7_pre_real.csv";
inline constexpr const char* kCombinedFile = "combined.csv";

std::vector<std::filesystem::path> write_experiment_csvs(const ExperimentResult& result, DataSource source,
                                                         const std::filesystem::path& dir);

}  // namespace tpc
