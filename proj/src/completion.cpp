#include "tpc/completion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tpc/errors.hpp"

namespace tpc {

VoteMatrix vote_matrix(std::span<const Ranking> rankings, std::size_t m) {
  VoteMatrix v(m);
  std::vector<std::uint32_t> pos(m);
  for (const auto& r : rankings) {
    std::fill(pos.begin(), pos.end(), 0);
    for (std::size_t p = 0; p < r.order.size(); ++p) {
      if (r.order[p] >= m) throw ArgumentError("ranking references an alternative >= m");
      pos[r.order[p]] = static_cast<std::uint32_t>(p + 1);
    }
    for (std::size_t a = 0; a < m; ++a) {
      if (!pos[a]) continue;
      for (std::size_t b = a + 1; b < m; ++b) {
        if (!pos[b]) continue;
        v.add(a, b, pos[a] < pos[b] ? 1 : -1);
      }
    }
  }
  return v;
}

ScoreVector certainty_scores(const VoteMatrix& v, const PreferenceMatrix& triples, const ScoringOptions& opt) {
  const std::size_t m = v.size();
  if (triples.size() != m) {
    throw ArgumentError("vote matrix is " + std::to_string(m) + " wide but triples are " +
                        std::to_string(triples.size()));
  }
  ScoreVector score(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t t = 0; t < m; ++t) {
      if (t == j) continue;
      const PreferenceTriple& tr = triples.at(j, t);
      const bool pass = tr.c_minus < opt.thresholds.epsilon1 &&
                        std::abs(tr.p_plus - tr.p_minus) >= opt.thresholds.epsilon2;
      double weight = 0.0;
      if (pass) {
        weight = opt.unit_weights ? 1.0 : tr.p_plus;
      } else if (opt.fallback == GateFallback::UnitWeight) {
        weight = 1.0;
      }
      score[j] += static_cast<double>(v(j, t)) * weight;
    }
  }
  return score;
}

Ranking complete_ranking(std::span<const double> scores) {
  Ranking r;
  r.order.resize(scores.size());
  std::iota(r.order.begin(), r.order.end(), AlternativeId{0});
  std::stable_sort(r.order.begin(), r.order.end(),
                   [&](AlternativeId a, AlternativeId b) { return scores[a] > scores[b]; });
  return r;
}

Ranking majority_completion(std::span<const Ranking> neighbor_rankings, std::size_t m) {
  const VoteMatrix v = vote_matrix(neighbor_rankings, m);
  ScoreVector s(m, 0.0);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) s[a] += static_cast<double>(v(a, b));
  }
  return complete_ranking(s);
}

Ranking pin_observed_order(const Ranking& observed, const Ranking& completed) {
  const std::size_t m = completed.order.size();
  std::vector<std::uint8_t> is_observed(m, 0);
  for (AlternativeId a : observed.order) {
    if (a >= m) throw ArgumentError("observed ranking references an alternative >= m");
    is_observed[a] = 1;
  }
  // Observed slots in the completion are refilled with the observed order.
  Ranking out;
  out.agent = completed.agent;
  out.order.reserve(m);
  std::size_t next_observed = 0;
  for (AlternativeId a : completed.order) {
    out.order.push_back(is_observed[a] ? observed.order[next_observed++] : a);
  }
  return out;
}

Ranking complete_from_neighbors(const Dataset& ds, const TrustVector* trust, AgentId target,
                                const NeighborList& neighbors, const CompletionConfig& cfg,
                                CertaintyCache* cache) {
  std::vector<Ranking> local;
  local.reserve(neighbors.size());
  for (AgentId j : neighbors.agents) local.push_back(ds.rankings.at(j));

  Ranking out;
  if (cfg.method == CompletionMethod::Baseline) {
    out = majority_completion(local, ds.m);
  } else {
    std::span<const Ranking> population = local;
    std::vector<double> weights;
    if (cfg.scope == StatsScope::Dataset) population = ds.rankings;
    if (cfg.trust_weighted_counts && trust) {
      if (cfg.scope == StatsScope::Dataset) {
        weights.assign(trust->values().begin(), trust->values().end());
      } else {
        for (AgentId j : neighbors.agents) weights.push_back((*trust)[j]);
      }
    }
    const PreferenceMatrix triples = pairwise_preferences(population, weights, ds.m, cfg.resolution, cache);
    const VoteMatrix v = vote_matrix(local, ds.m);
    const ScoreVector s = certainty_scores(v, triples, ScoringOptions{cfg.thresholds, cfg.fallback, false});
    out = complete_ranking(s);
  }
  out.agent = target;
  if (cfg.pin_observed) out = pin_observed_order(ds.rankings.at(target), out);
  return out;
}

Ranking complete_for_target(const Dataset& ds, const FeatureMatrix& f, const TrustVector* trust, AgentId target,
                            const CompletionConfig& cfg, CertaintyCache* cache) {
  const auto mask = empty_ranking_mask(ds);
  NeighborQuery q{target, cfg.k, cfg.epsilon0, mask};
  NeighborList nl;
  switch (cfg.neighbor_method) {
    case NeighborMethod::KendallTau:
      nl = kt_knn(f, q);
      break;
    case NeighborMethod::Anchor:
      nl = anchor_knn(f, q);
      break;
    case NeighborMethod::TrustAnchor:
      nl = trust ? trust_anchor_knn(f, *trust, q) : anchor_knn(f, q);
      break;
  }
  return complete_from_neighbors(ds, trust, target, nl, cfg, cache);
}

}  // namespace tpc
