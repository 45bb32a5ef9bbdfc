#include "tpc/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "tpc/csv.hpp"
#include "tpc/errors.hpp"
#include "tpc/neighbors.hpp"
#include "tpc/preflib.hpp"
#include "tpc/rank_distance.hpp"
#include "tpc/rng.hpp"

namespace tpc {

// Seed streams derived from master_seed.
namespace {
constexpr std::uint64_t kStreamSynthetic = 1;
constexpr std::uint64_t kStreamMask = 2;
constexpr std::uint64_t kStreamTargets = 3;
constexpr std::uint64_t kStreamSubsample = 4;
}  // namespace

MaskedDataset mask_rankings(const Dataset& ds, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw ArgumentError("mask fraction must lie in (0,1)");
  MaskedDataset out;
  out.masked = ds;
  out.held_out.resize(ds.rankings.size());
  for (std::size_t i = 0; i < ds.rankings.size(); ++i) {
    const auto& order = ds.rankings[i].order;
    const std::size_t len = order.size();
    const auto remove = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(len) + 0.5));
    std::vector<std::size_t> idx(len);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Rng rng = make_rng(seed, i);
    for (std::size_t p = 0; p < remove; ++p) {
      const std::size_t q = p + static_cast<std::size_t>(uniform_below(rng, len - p));
      std::swap(idx[p], idx[q]);
    }
    std::vector<std::uint8_t> removed(len, 0);
    for (std::size_t p = 0; p < remove; ++p) removed[idx[p]] = 1;

    Ranking kept{i, {}};
    Ranking held{i, {}};
    for (std::size_t p = 0; p < len; ++p) (removed[p] ? held : kept).order.push_back(order[p]);
    out.masked.rankings[i] = std::move(kept);
    out.held_out[i] = std::move(held);
  }
  return out;
}

const char* neighbor_method_name(NeighborMethod m) noexcept {
  switch (m) {
    case NeighborMethod::KendallTau:
      return "kt";
    case NeighborMethod::Anchor:
      return "anchor";
    case NeighborMethod::TrustAnchor:
      return "trust-anchor";
  }
  return "unknown";
}

NeighborMethod parse_neighbor_method(const std::string& text) {
  if (text == "kt") return NeighborMethod::KendallTau;
  if (text == "anchor") return NeighborMethod::Anchor;
  if (text == "trust-anchor") return NeighborMethod::TrustAnchor;
  throw ArgumentError("unknown neighbor method '" + text + "' (expected kt, anchor or trust-anchor)");
}

CompletionMethod parse_completion_method(const std::string& text) {
  if (text == "baseline") return CompletionMethod::Baseline;
  if (text == "certainty") return CompletionMethod::Certainty;
  throw ArgumentError("unknown completion method '" + text + "' (expected baseline or certainty)");
}

std::string MethodSpec::name() const {
  return std::string(neighbor_method_name(neighbors)) + "+" +
         (completion == CompletionMethod::Baseline ? "baseline" : "certainty");
}

MethodSpec parse_method(const std::string& text) {
  const auto plus = text.find('+');
  if (plus == std::string::npos) {
    throw ArgumentError("method '" + text + "' must look like <neighbors>+<completion>");
  }
  return MethodSpec{parse_neighbor_method(text.substr(0, plus)), parse_completion_method(text.substr(plus + 1))};
}

void ExperimentConfig::validate(std::size_t agent_count) const {
  if (k_grid.empty()) throw ArgumentError("k grid is empty");
  if (!std::is_sorted(k_grid.begin(), k_grid.end()) ||
      std::adjacent_find(k_grid.begin(), k_grid.end()) != k_grid.end()) {
    throw ArgumentError("k grid must be strictly ascending");
  }
  if (k_grid.front() < 1) throw ArgumentError("k values must be positive");
  if (k_grid.back() + 1 > agent_count) {
    throw ArgumentError("k = " + std::to_string(k_grid.back()) + " exceeds n - 1 = " +
                        std::to_string(agent_count ? agent_count - 1 : 0));
  }
  if (agent_count < 3) throw ArgumentError("experiments need at least 3 agents");
  if (methods.empty()) throw ArgumentError("no methods selected");
  if (!(mask_fraction > 0.0 && mask_fraction < 1.0)) throw ArgumentError("mask fraction must lie in (0,1)");
  if (!(epsilon0 >= 0.0 && epsilon0 < 1.0)) throw ArgumentError("epsilon0 must lie in [0,1)");
  for (double e : {thresholds.epsilon1, thresholds.epsilon2}) {
    if (!(e > 0.0)) throw ArgumentError("epsilon1 and epsilon2 must be positive");
  }
  metric_weights.validate();
  if (resolution < kMinResolution) throw ArgumentError("resolution below minimum");
}

const std::vector<std::string>& experiment_config_keys() {
  static const std::vector<std::string> keys = {
      "source",      "n",           "m",        "d",           "noise_scale",
      "seed",        "latent_low",  "latent_high", "data",     "subsample",
      "k_grid",      "methods",     "epsilon0", "epsilon1",    "epsilon2",
      "mask_fraction", "weight_a",  "weight_b", "output_dir",  "master_seed",
      "targets",     "scope",       "trust_weighted_counts", "fallback", "resolution",
      "cache_dir"};
  return keys;
}

namespace {

std::string normalize_key(std::string key) {
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const auto r = std::from_chars(value.data(), value.data() + value.size(), out);
  if (value.empty() || r.ec != std::errc{} || r.ptr != value.data() + value.size()) {
    throw ArgumentError("bad value for " + key + ": '" + value + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "no") return false;
  throw ArgumentError("bad boolean for " + key + ": '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = strip(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = strip(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected key=value");
    const std::string key = normalize_key(strip(line.substr(0, eq)));
    if (key.empty()) throw ParseError(lineno, "empty key");
    kv[key] = strip(line.substr(eq + 1));
  }
  return kv;
}

std::map<std::string, std::string> read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_key_values(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " + e.what());
  }
}

ExperimentConfig experiment_config_from(const std::map<std::string, std::string>& raw) {
  std::map<std::string, std::string> kv;
  for (const auto& [k, v] : raw) kv[normalize_key(k)] = v;
  const auto& known = experiment_config_keys();
  for (const auto& [k, v] : kv) {
    if (std::find(known.begin(), known.end(), k) == known.end()) {
      throw ArgumentError("unknown config key '" + k + "'");
    }
  }
  auto get = [&](const char* key) -> const std::string* {
    const auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };

  ExperimentConfig cfg;
  if (auto* v = get("source")) {
    if (*v == "synthetic") {
      cfg.source = DataSource::Synthetic;
    } else if (*v == "preflib") {
      cfg.source = DataSource::Preflib;
    } else {
      throw ArgumentError("source must be synthetic or preflib");
    }
  }
  if (auto* v = get("n")) cfg.synthetic.n = parse_number<std::size_t>("n", *v);
  if (auto* v = get("m")) cfg.synthetic.m = parse_number<std::size_t>("m", *v);
  if (auto* v = get("d")) cfg.synthetic.d = parse_number<std::size_t>("d", *v);
  if (auto* v = get("noise_scale")) cfg.synthetic.noise_scale = parse_number<double>("noise_scale", *v);
  if (auto* v = get("seed")) cfg.synthetic_seed = parse_number<std::uint64_t>("seed", *v);
  if (auto* v = get("latent_low")) cfg.synthetic.latent_box.low = parse_number<double>("latent_low", *v);
  if (auto* v = get("latent_high")) cfg.synthetic.latent_box.high = parse_number<double>("latent_high", *v);
  if (auto* v = get("data")) cfg.preflib_path = *v;
  if (auto* v = get("subsample")) cfg.subsample = parse_number<std::size_t>("subsample", *v);
  if (auto* v = get("k_grid")) {
    for (const auto& item : split_list(*v)) cfg.k_grid.push_back(parse_number<std::size_t>("k_grid", item));
  }
  if (auto* v = get("methods")) {
    for (const auto& item : split_list(*v)) cfg.methods.push_back(parse_method(item));
  }
  if (auto* v = get("epsilon0")) cfg.epsilon0 = parse_number<double>("epsilon0", *v);
  if (auto* v = get("epsilon1")) cfg.thresholds.epsilon1 = parse_number<double>("epsilon1", *v);
  if (auto* v = get("epsilon2")) cfg.thresholds.epsilon2 = parse_number<double>("epsilon2", *v);
  if (auto* v = get("mask_fraction")) cfg.mask_fraction = parse_number<double>("mask_fraction", *v);
  if (auto* v = get("weight_a")) cfg.metric_weights.weight_a = parse_number<double>("weight_a", *v);
  if (auto* v = get("weight_b")) cfg.metric_weights.weight_b = parse_number<double>("weight_b", *v);
  if (auto* v = get("master_seed")) cfg.master_seed = parse_number<std::uint64_t>("master_seed", *v);
  if (auto* v = get("targets")) cfg.targets = parse_number<std::size_t>("targets", *v);
  if (auto* v = get("scope")) {
    if (*v == "neighbors") {
      cfg.scope = StatsScope::Neighbors;
    } else if (*v == "dataset") {
      cfg.scope = StatsScope::Dataset;
    } else {
      throw ArgumentError("scope must be neighbors or dataset");
    }
  }
  if (auto* v = get("trust_weighted_counts")) cfg.trust_weighted_counts = parse_bool("trust_weighted_counts", *v);
  if (auto* v = get("fallback")) {
    if (*v == "zero") {
      cfg.fallback = GateFallback::Zero;
    } else if (*v == "unit") {
      cfg.fallback = GateFallback::UnitWeight;
    } else {
      throw ArgumentError("fallback must be zero or unit");
    }
  }
  if (auto* v = get("resolution")) cfg.resolution = parse_number<int>("resolution", *v);
  if (auto* v = get("cache_dir")) cfg.cache_dir = *v;

  if (auto* v = get("output_dir")) {
    cfg.output_dir = *v;
  } else if (const char* env = std::getenv("TPC_OUTPUT_DIR"); env && *env) {
    cfg.output_dir = env;
  } else {
    cfg.output_dir = "results";
  }

  if (cfg.k_grid.empty()) {
    for (std::size_t k = 10; k <= 400; k += 10) cfg.k_grid.push_back(k);
  }
  if (cfg.methods.empty()) {
    if (cfg.source == DataSource::Synthetic) {
      for (auto nm : {NeighborMethod::Anchor, NeighborMethod::TrustAnchor}) {
        for (auto cm : {CompletionMethod::Baseline, CompletionMethod::Certainty}) cfg.methods.push_back({nm, cm});
      }
    } else {
      cfg.methods = {{NeighborMethod::Anchor, CompletionMethod::Baseline},
                     {NeighborMethod::Anchor, CompletionMethod::Certainty}};
    }
  }
  if (cfg.source == DataSource::Preflib && cfg.preflib_path.empty()) {
    throw ArgumentError("preflib source needs a data path");
  }
  return cfg;
}

ExperimentData load_experiment_data(const ExperimentConfig& cfg) {
  ExperimentData data;
  data.source = cfg.source;
  if (cfg.source == DataSource::Synthetic) {
    PlackettLuceConfig pl = cfg.synthetic;
    pl.seed = cfg.synthetic_seed.value_or(mix_seed(cfg.master_seed, kStreamSynthetic));
    SyntheticSample s = generate_synthetic(pl);
    data.dataset = std::move(s.dataset);
    data.trust = std::move(s.trust);
  } else {
    data.dataset = read_preflib_file(cfg.preflib_path).dataset;
    if (cfg.subsample) {
      data.dataset = subsample(data.dataset, *cfg.subsample, mix_seed(cfg.master_seed, kStreamSubsample));
    }
  }
  return data;
}

namespace {

struct Accumulator {
  double bias = 0.0;
  double precision5 = 0.0;
  double pre = 0.0;
  std::size_t count = 0;
};

struct RmseAccumulator {
  double sum = 0.0;
  std::size_t count = 0;
};

std::vector<AgentId> choose_targets(const ExperimentConfig& cfg, const Dataset& full, const MaskedDataset& md) {
  std::vector<AgentId> eligible;
  for (AgentId i = 0; i < full.agent_count(); ++i) {
    if (!md.held_out[i].empty()) eligible.push_back(i);
  }
  if (!cfg.targets || *cfg.targets >= eligible.size()) return eligible;
  Rng rng = make_rng(cfg.master_seed, kStreamTargets);
  for (std::size_t p = 0; p < *cfg.targets; ++p) {
    const std::size_t q = p + static_cast<std::size_t>(uniform_below(rng, eligible.size() - p));
    std::swap(eligible[p], eligible[q]);
  }
  eligible.resize(*cfg.targets);
  std::sort(eligible.begin(), eligible.end());
  return eligible;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, const ExperimentData& data) {
  const Dataset& full = data.dataset;
  full.validate();
  cfg.validate(full.agent_count());
  const TrustVector* trust = data.trust ? &*data.trust : nullptr;
  if (trust && trust->size() != full.agent_count()) throw ArgumentError("trust vector length mismatch");

  const MaskedDataset md = mask_rankings(full, cfg.mask_fraction, mix_seed(cfg.master_seed, kStreamMask));
  const FeatureMatrix f = cfg.cache_dir.empty() ? feature_matrix(md.masked)
                                                : cached_feature_matrix(md.masked, cfg.cache_dir);
  const std::vector<AgentId> targets = choose_targets(cfg, full, md);
  const auto ineligible = empty_ranking_mask(md.masked);
  const std::size_t k_max = cfg.k_grid.back();
  const std::size_t m = full.m;
  const bool synthetic = data.source == DataSource::Synthetic && full.latent_agents.has_value();

  std::vector<NeighborMethod> neighbor_methods;
  for (const auto& ms : cfg.methods) {
    if (std::find(neighbor_methods.begin(), neighbor_methods.end(), ms.neighbors) == neighbor_methods.end()) {
      neighbor_methods.push_back(ms.neighbors);
    }
  }

  CompletionConfig base;
  base.thresholds = cfg.thresholds;
  base.epsilon0 = cfg.epsilon0;
  base.scope = cfg.scope;
  base.trust_weighted_counts = cfg.trust_weighted_counts;
  base.fallback = cfg.fallback;
  base.resolution = cfg.resolution;
  CertaintyCache& cache = shared_certainty_cache();

  const std::size_t nk = cfg.k_grid.size();
  std::vector<Accumulator> acc(cfg.methods.size() * nk);
  std::vector<RmseAccumulator> racc(neighbor_methods.size() * nk);
  std::vector<std::string> errors;
  std::size_t error_count = 0;
  auto record_error = [&](const std::string& context, const std::exception& e) {
    ++error_count;
    if (errors.size() < 10) errors.push_back(context + ": " + e.what());
  };

  for (AgentId target : targets) {
    const Ranking& truth_full = full.rankings[target];
    const std::vector<Ranking> truth_set{truth_full};
    const std::vector<double> truth_p_plus =
        pairwise_preferences(truth_set, {}, m, cfg.resolution, &cache).p_plus();
    std::vector<std::uint8_t> is_held(m, 0);
    for (AlternativeId a : md.held_out[target].order) is_held[a] = 1;

    for (std::size_t ni = 0; ni < neighbor_methods.size(); ++ni) {
      const NeighborMethod nm = neighbor_methods[ni];
      NeighborList all;
      const NeighborQuery q{target, k_max, cfg.epsilon0, ineligible};
      try {
        switch (nm) {
          case NeighborMethod::KendallTau:
            all = kt_knn(f, q);
            break;
          case NeighborMethod::Anchor:
            all = anchor_knn(f, q);
            break;
          case NeighborMethod::TrustAnchor:
            all = trust ? trust_anchor_knn(f, *trust, q) : trust_anchor_knn(f, q);
            break;
        }
      } catch (const std::exception& e) {
        record_error(std::string(neighbor_method_name(nm)) + ", target " + std::to_string(target), e);
        continue;
      }

      for (std::size_t ki = 0; ki < nk; ++ki) {
        const std::size_t k = cfg.k_grid[ki];
        const NeighborList nl = all.prefix(k);
        if (nl.agents.empty()) continue;
        if (synthetic) {
          racc[ni * nk + ki].sum += rmse(nl, full, target);
          ++racc[ni * nk + ki].count;
        }
        for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
          if (cfg.methods[mi].neighbors != nm) continue;
          try {
            CompletionConfig cc = base;
            cc.k = k;
            cc.method = cfg.methods[mi].completion;
            cc.neighbor_method = nm;
            const Ranking completed = complete_from_neighbors(md.masked, trust, target, nl, cc, &cache);
            Ranking restricted{target, {}};
            for (AlternativeId a : completed.order) {
              if (is_held[a]) restricted.order.push_back(a);
            }
            const double p5 = precision_at_5(restricted, md.held_out[target]);
            const double b = bias(completed, truth_p_plus);
            Accumulator& a = acc[mi * nk + ki];
            a.bias += b;
            a.precision5 += p5;
            a.pre += pre_score(p5, b, cfg.metric_weights);
            ++a.count;
          } catch (const std::exception& e) {
            record_error(cfg.methods[mi].name() + ", k " + std::to_string(k) + ", target " + std::to_string(target),
                         e);
          }
        }
      }
    }
  }

  if (error_count) {
    std::string msg = std::to_string(error_count) + " stage failure(s)";
    for (const auto& e : errors) msg += "\n  " + e;
    throw ExperimentError(msg);
  }

  ExperimentResult result;
  for (std::size_t ni = 0; ni < neighbor_methods.size() && synthetic; ++ni) {
    for (std::size_t ki = 0; ki < nk; ++ki) {
      const auto& r = racc[ni * nk + ki];
      if (!r.count) continue;
      result.neighbor_rows.push_back(
          {neighbor_method_name(neighbor_methods[ni]), cfg.k_grid[ki], r.sum / static_cast<double>(r.count)});
    }
  }
  for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
    const auto ni = static_cast<std::size_t>(
        std::find(neighbor_methods.begin(), neighbor_methods.end(), cfg.methods[mi].neighbors) -
        neighbor_methods.begin());
    for (std::size_t ki = 0; ki < nk; ++ki) {
      const Accumulator& a = acc[mi * nk + ki];
      if (!a.count) continue;
      const double c = static_cast<double>(a.count);
      ExperimentRow row;
      row.method = cfg.methods[mi].name();
      row.k = cfg.k_grid[ki];
      if (synthetic && racc[ni * nk + ki].count) {
        row.rmse = racc[ni * nk + ki].sum / static_cast<double>(racc[ni * nk + ki].count);
      }
      row.bias = a.bias / c;
      row.precision5 = a.precision5 / c;
      row.pre = a.pre / c;
      result.rows.push_back(std::move(row));
    }
  }

  if (!cfg.output_dir.empty()) result.written = write_experiment_csvs(result, data.source, cfg.output_dir);
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  return run_experiment(cfg, load_experiment_data(cfg));
}

std::vector<std::filesystem::path> write_experiment_csvs(const ExperimentResult& result, DataSource source,
                                                         const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  auto emit = [&](const CsvTable& t, const char* name) {
    write_csv(t, dir / name);
    written.push_back(dir / name);
  };

  const bool with_rmse = std::any_of(result.rows.begin(), result.rows.end(),
                                     [](const ExperimentRow& r) { return r.rmse.has_value(); });
  CsvTable combined(with_rmse ? std::vector<std::string>{"k", "method", "rmse", "bias", "precision5", "pre"}
                              : std::vector<std::string>{"k", "method", "bias", "precision5", "pre"});
  CsvTable bias_table({"k", "method", "bias"});
  CsvTable pre_table({"k", "method", "pre"});
  for (const auto& r : result.rows) {
    const auto k = static_cast<std::int64_t>(r.k);
    if (with_rmse) {
      if (!r.rmse) throw SerializationError("row " + r.method + " is missing its RMSE");
      combined.add_row({k, r.method, *r.rmse, r.bias, r.precision5, r.pre});
    } else {
      combined.add_row({k, r.method, r.bias, r.precision5, r.pre});
    }
    bias_table.add_row({k, r.method, r.bias});
    pre_table.add_row({k, r.method, r.pre});
  }

  if (source == DataSource::Synthetic) {
    CsvTable rmse_table({"k", "method", "rmse"});
    for (const auto& r : result.neighbor_rows) rmse_table.add_row({static_cast<std::int64_t>(r.k), r.method, r.rmse});
    emit(rmse_table, kFig3File);
    emit(bias_table, kFig4File);
    emit(pre_table, kFig5File);
  } else {
    emit(bias_table, kFig6File);
    emit(pre_table, kFig7File);
  }
  emit(combined, kCombinedFile);
  return written;
}

}  // namespace tpc
