#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tpc/core.hpp"
#include "tpc/neighbors.hpp"
#include "tpc/preference_stats.hpp"
#include "tpc/rank_distance.hpp"

namespace tpc {

// Antisymmetric m x m tally: +1 to v(a, b) per ranking with a before b.
class VoteMatrix {
 public:
  VoteMatrix() = default;
  explicit VoteMatrix(std::size_t m) : m_(m), v_(m * m, 0) {}

  std::size_t size() const noexcept { return m_; }
  std::int64_t operator()(std::size_t a, std::size_t b) const { return v_[a * m_ + b]; }
  // Adds `delta` to (a, b) and mirrors it to (b, a).
  void add(std::size_t a, std::size_t b, std::int64_t delta) {
    v_[a * m_ + b] += delta;
    v_[b * m_ + a] -= delta;
  }

  friend bool operator==(const VoteMatrix&, const VoteMatrix&) = default;

 private:
  std::size_t m_ = 0;
  std::vector<std::int64_t> v_;
};

using ScoreVector = std::vector<double>;

VoteMatrix vote_matrix(std::span<const Ranking> rankings, std::size_t m);

// What a pair that fails the certainty gate contributes.
enum class GateFallback {
  Zero,        // nothing
  UnitWeight,  // its raw vote
};

struct ScoringOptions {
  DecisionThresholds thresholds;
  GateFallback fallback = GateFallback::Zero;
  // Replace every passing pair's weight with 1.
  bool unit_weights = false;
};

// score_j = sum_t v(j, t) * p_plus(j -> t) over pairs with c_minus < epsilon1
// and |p_plus - p_minus| >= epsilon2.
ScoreVector certainty_scores(const VoteMatrix& v, const PreferenceMatrix& triples, const ScoringOptions& opt);
inline ScoreVector certainty_scores(const VoteMatrix& v, const PreferenceMatrix& triples,
                                    const DecisionThresholds& th) {
  return certainty_scores(v, triples, ScoringOptions{th});
}

// Full permutation by descending score; lower index first on ties.
Ranking complete_ranking(std::span<const double> scores);

// Row sums of the vote matrix, ungated.
Ranking majority_completion(std::span<const Ranking> neighbor_rankings, std::size_t m);

enum class CompletionMethod { Baseline, Certainty };
enum class NeighborMethod { KendallTau, Anchor, TrustAnchor };
enum class StatsScope {
  Neighbors,  // triples from the k neighbor rankings
  Dataset,    // triples from every ranking in the dataset
};

struct CompletionConfig {
  std::size_t k = 10;
  CompletionMethod method = CompletionMethod::Certainty;
  NeighborMethod neighbor_method = NeighborMethod::TrustAnchor;
  DecisionThresholds thresholds;
  double epsilon0 = 0.1;
  StatsScope scope = StatsScope::Neighbors;
  // Weight each ranking's pair counts by its agent's trust.
  bool trust_weighted_counts = false;
  GateFallback fallback = GateFallback::Zero;
  // Keep the target's observed relative order and slot the rest in by score.
  bool pin_observed = false;
  int resolution = kDefaultResolution;
};

// Completion from an already chosen neighbor list.
Ranking complete_from_neighbors(const Dataset& ds, const TrustVector* trust, AgentId target,
                                const NeighborList& neighbors, const CompletionConfig& cfg,
                                CertaintyCache* cache = nullptr);

// Neighbor search (trust_anchor_knn, or anchor_knn when trust is null) then
// completion. The agent field of the result is `target`.
Ranking complete_for_target(const Dataset& ds, const FeatureMatrix& f, const TrustVector* trust, AgentId target,
                            const CompletionConfig& cfg, CertaintyCache* cache = nullptr);

// Merges the target's observed order with a completed ranking: observed
// alternatives keep their relative order, the others follow the completion.
Ranking pin_observed_order(const Ranking& observed, const Ranking& completed);

}  // namespace tpc
