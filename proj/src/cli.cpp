#include "tpc/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "tpc/completion.hpp"
#include "tpc/csv.hpp"
#include "tpc/errors.hpp"
#include "tpc/harness.hpp"
#include "tpc/metrics.hpp"
#include "tpc/neighbors.hpp"
#include "tpc/preference_stats.hpp"
#include "tpc/preflib.hpp"
#include "tpc/rank_distance.hpp"
#include "tpc/synth.hpp"

namespace tpc {

namespace {

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

// 1-based comma-separated alternative list, as in a PrefLib ballot line.
Ranking parse_order(const std::string& text) {
  Ranking r;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const long v = std::stol(item);
    if (v < 1) throw ArgumentError("alternative indices are 1-based");
    r.order.push_back(static_cast<AlternativeId>(v - 1));
  }
  return r;
}

std::string format_order(const Ranking& r) {
  std::string s;
  for (std::size_t i = 0; i < r.order.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(r.order[i] + 1);
  }
  return s;
}

TrustVector read_trust_csv(const std::filesystem::path& path, std::size_t n) {
  const CsvTable t = read_csv(path);
  const auto& cols = t.columns();
  const auto it = std::find(cols.begin(), cols.end(), "trust");
  if (it == cols.end()) throw IoError(path.string() + ": missing 'trust' column");
  const auto col = static_cast<std::size_t>(it - cols.begin());
  std::vector<double> values;
  for (const auto& row : t.rows()) {
    const CsvValue& v = row[col];
    if (const auto* d = std::get_if<double>(&v)) {
      values.push_back(*d);
    } else if (const auto* i = std::get_if<std::int64_t>(&v)) {
      values.push_back(static_cast<double>(*i));
    } else {
      throw IoError(path.string() + ": non-numeric trust value");
    }
  }
  if (values.size() != n) {
    throw ArgumentError(path.string() + " holds " + std::to_string(values.size()) + " trust values for " +
                        std::to_string(n) + " agents");
  }
  return TrustVector(std::move(values));
}

void write_trust_csv(const TrustVector& trust, const std::filesystem::path& path) {
  CsvTable t({"agent", "trust"});
  for (std::size_t i = 0; i < trust.size(); ++i) t.add_row({static_cast<std::int64_t>(i), trust[i]});
  write_csv(t, path);
}

void write_latent_csv(const LatentFeatures& lf, const char* kind, const std::filesystem::path& path) {
  std::vector<std::string> cols = {"kind", "index"};
  for (std::size_t c = 0; c < lf.dim; ++c) cols.push_back("x" + std::to_string(c));
  CsvTable t(std::move(cols));
  for (std::size_t i = 0; i < lf.count; ++i) {
    std::vector<CsvValue> row = {std::string(kind), static_cast<std::int64_t>(i)};
    for (double v : lf.row(i)) row.emplace_back(v);
    t.add_row(std::move(row));
  }
  write_csv(t, path);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trust-aware preference completion toolkit"};
  app.require_subcommand(1);

  // generate
  PlackettLuceConfig gen;
  std::string gen_output, gen_trust, gen_latent;
  auto* generate = app.add_subcommand("generate", "Sample a Plackett-Luce dataset with Gumbel noise");
  generate->add_option("--n", gen.n, "Agent count")->required();
  generate->add_option("--m", gen.m, "Alternative count")->required();
  generate->add_option("--d", gen.d, "Latent dimension");
  generate->add_option("--noise-scale", gen.noise_scale, "Gumbel scale");
  generate->add_option("--seed", gen.seed, "Seed")->required();
  generate->add_option("--latent-low", gen.latent_box.low, "Lower latent bound");
  generate->add_option("--latent-high", gen.latent_box.high, "Upper latent bound");
  generate->add_option("--output", gen_output, "PrefLib output file (stdout when omitted)");
  generate->add_option("--trust-output", gen_trust, "CSV file for derived trust");
  generate->add_option("--latent-output", gen_latent, "CSV file for latent features");

  // neighbors
  std::string nb_data, nb_trust, nb_method = "anchor";
  std::size_t nb_k = 10, nb_target = 0;
  double nb_eps0 = 0.1;
  auto* neighbors = app.add_subcommand("neighbors", "k nearest neighbors of one agent");
  neighbors->add_option("--data", nb_data, "PrefLib dataset")->required();
  neighbors->add_option("--trust", nb_trust, "Trust CSV (agent,trust)");
  neighbors->add_option("--method", nb_method, "kt | anchor | trust-anchor")
      ->check(CLI::IsMember({"kt", "anchor", "trust-anchor"}));
  neighbors->add_option("--k", nb_k, "Neighbor count")->required();
  neighbors->add_option("--epsilon0", nb_eps0, "Trust cutoff");
  neighbors->add_option("--target", nb_target, "0-based target agent")->required();

  // certainty
  std::string ct_counts;
  int ct_resolution = kDefaultResolution;
  DecisionThresholds ct_th;
  auto* certainty_cmd = app.add_subcommand("certainty", "Certainty, conflict and preference triple of pair counts");
  certainty_cmd->add_option("--counts", ct_counts, "n_ab,n_ba,n_unordered")->required();
  certainty_cmd->add_option("--resolution", ct_resolution, "Quadrature subdivisions per axis");
  certainty_cmd->add_option("--epsilon1", ct_th.epsilon1, "Uncertainty gate");
  certainty_cmd->add_option("--epsilon2", ct_th.epsilon2, "Margin gate");

  // complete
  std::string cp_data, cp_trust, cp_method = "certainty", cp_neighbor = "trust-anchor", cp_scope = "neighbors",
                                 cp_fallback = "zero";
  CompletionConfig cp;
  std::size_t cp_target = 0;
  bool cp_trust_weighted = false, cp_pin = false;
  auto* complete = app.add_subcommand("complete", "Complete one agent's ranking");
  complete->add_option("--data", cp_data, "PrefLib dataset")->required();
  complete->add_option("--trust", cp_trust, "Trust CSV (agent,trust)");
  complete->add_option("--target", cp_target, "0-based target agent")->required();
  complete->add_option("--k", cp.k, "Neighbor count")->required();
  complete->add_option("--method", cp_method, "baseline | certainty")->check(CLI::IsMember({"baseline", "certainty"}));
  complete->add_option("--neighbor-method", cp_neighbor, "kt | anchor | trust-anchor")
      ->check(CLI::IsMember({"kt", "anchor", "trust-anchor"}));
  complete->add_option("--epsilon0", cp.epsilon0, "Trust cutoff");
  complete->add_option("--epsilon1", cp.thresholds.epsilon1, "Uncertainty gate");
  complete->add_option("--epsilon2", cp.thresholds.epsilon2, "Margin gate");
  complete->add_option("--scope", cp_scope, "neighbors | dataset")->check(CLI::IsMember({"neighbors", "dataset"}));
  complete->add_option("--fallback", cp_fallback, "zero | unit")->check(CLI::IsMember({"zero", "unit"}));
  complete->add_flag("--trust-weighted-counts", cp_trust_weighted, "Weight pair counts by trust");
  complete->add_flag("--pin-observed", cp_pin, "Keep the target's observed order");
  complete->add_option("--resolution", cp.resolution, "Quadrature subdivisions per axis");

  // evaluate
  std::string ev_predicted, ev_truth;
  MetricWeights ev_w;
  auto* evaluate = app.add_subcommand("evaluate", "Bias, precision@5 and Pre of a predicted ranking");
  evaluate->add_option("--predicted", ev_predicted, "Complete predicted order, 1-based")->required();
  evaluate->add_option("--truth", ev_truth, "Ground-truth order, 1-based")->required();
  evaluate->add_option("--weight-a", ev_w.weight_a, "precision@5 weight");
  evaluate->add_option("--weight-b", ev_w.weight_b, "bias weight");

  // experiment
  std::string ex_config;
  std::map<std::string, std::string> ex_flags;
  auto* experiment = app.add_subcommand("experiment", "Run the k-sweep evaluation and write result CSVs");
  experiment->add_option("--config", ex_config, "key=value config file");
  for (const auto& key : experiment_config_keys()) {
    std::string flag = key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    experiment->add_option_function<std::string>(
        "--" + flag, [&ex_flags, key](const std::string& v) { ex_flags[key] = v; }, "Overrides '" + key + "'");
  }

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << app.help();
    return e.get_exit_code() ? e.get_exit_code() : 2;
  }

  try {
    if (*generate) {
      const SyntheticSample s = generate_synthetic(gen);
      if (gen_output.empty()) {
        write_preflib(out, s.dataset, {}, false);
      } else {
        write_preflib_file(gen_output, s.dataset, {}, false);
      }
      if (!gen_trust.empty()) write_trust_csv(s.trust, gen_trust);
      if (!gen_latent.empty()) {
        write_latent_csv(*s.dataset.latent_agents, "agent", gen_latent);
        write_latent_csv(*s.dataset.latent_alternatives, "alternative",
                         std::filesystem::path(gen_latent).replace_extension(".alternatives.csv"));
      }
    } else if (*neighbors) {
      const Dataset ds = read_preflib_file(nb_data).dataset;
      const FeatureMatrix f = feature_matrix(ds);
      const auto mask = empty_ranking_mask(ds);
      const NeighborQuery q{nb_target, nb_k, nb_eps0, mask};
      NeighborList nl;
      if (nb_method == "kt") {
        nl = kt_knn(f, q);
      } else if (nb_method == "anchor") {
        nl = anchor_knn(f, q);
      } else if (nb_trust.empty()) {
        nl = trust_anchor_knn(f, q);
      } else {
        nl = trust_anchor_knn(f, read_trust_csv(nb_trust, ds.agent_count()), q);
      }
      CsvTable t({"rank", "agent", "distance"});
      for (std::size_t i = 0; i < nl.size(); ++i) {
        t.add_row({static_cast<std::int64_t>(i + 1), static_cast<std::int64_t>(nl.agents[i]), nl.distances[i]});
      }
      out << to_csv_string(t);
    } else if (*certainty_cmd) {
      const auto v = parse_reals(ct_counts);
      if (v.size() != 3) throw ArgumentError("--counts needs three comma-separated values");
      const PairCounts pc{v[0], v[1], v[2]};
      const PreferenceTriple tr = to_preference(pc, ct_resolution);
      CsvTable t({"certainty", "conflict", "p_plus", "p_minus", "c_minus", "decision"});
      t.add_row({tr.certainty, tr.conflict, tr.p_plus, tr.p_minus, tr.c_minus, std::string(to_string(decide(tr, ct_th)))});
      out << to_csv_string(t);
    } else if (*complete) {
      const Dataset ds = read_preflib_file(cp_data).dataset;
      std::optional<TrustVector> trust;
      if (!cp_trust.empty()) trust = read_trust_csv(cp_trust, ds.agent_count());
      cp.method = parse_completion_method(cp_method);
      cp.neighbor_method = parse_neighbor_method(cp_neighbor);
      cp.scope = cp_scope == "dataset" ? StatsScope::Dataset : StatsScope::Neighbors;
      cp.fallback = cp_fallback == "unit" ? GateFallback::UnitWeight : GateFallback::Zero;
      cp.trust_weighted_counts = cp_trust_weighted;
      cp.pin_observed = cp_pin;
      const FeatureMatrix f = feature_matrix(ds);
      const Ranking r = complete_for_target(ds, f, trust ? &*trust : nullptr, cp_target, cp);
      out << format_order(r) << "\n";
    } else if (*evaluate) {
      const Ranking predicted = parse_order(ev_predicted);
      const Ranking truth = parse_order(ev_truth);
      const std::size_t m = predicted.order.size();
      const std::vector<Ranking> truth_set{truth};
      const auto p_plus = pairwise_preferences(truth_set, {}, m).p_plus();
      const double p5 = precision_at_5(predicted, truth);
      const double b = bias(predicted, p_plus);
      CsvTable t({"bias", "precision5", "pre"});
      t.add_row({b, p5, pre_score(p5, b, ev_w)});
      out << to_csv_string(t);
    } else if (*experiment) {
      std::map<std::string, std::string> kv;
      if (!ex_config.empty()) kv = read_key_values(ex_config);
      for (const auto& [k, v] : ex_flags) kv[k] = v;
      const ExperimentConfig cfg = experiment_config_from(kv);
      const ExperimentResult res = run_experiment(cfg);
      for (const auto& p : res.written) out << p.string() << "\n";
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace tpc
