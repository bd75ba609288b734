// Filter feature selection: global scorers (information gain, chi-squared),
// a per-class local scorer (odds ratio) and the class-quota selectors that
// combine them.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "dcdist/vectorizer.hpp"

namespace dcdist {

// Document-level (term, class) occurrence counts. A stored matrix entry
// marks the term as present in the document.
struct ContingencyCounts {
  std::size_t n_docs = 0;
  std::size_t n_features = 0;
  std::size_t n_classes = 0;
  std::vector<std::size_t> term_df;                 // documents containing the term
  std::vector<std::size_t> class_sizes;             // documents per class
  std::vector<std::vector<std::size_t>> joint;      // [class][term] -> both

  struct Cells {
    double n11, n10, n01, n00;  // present/class, present/other, absent/class, absent/other
  };
  Cells cells(std::size_t term, std::size_t cls) const;
};

ContingencyCounts count_contingency(const CorpusMatrix& presence, std::size_t n_classes);

struct FeatureRanking {
  std::vector<double> scores;
  std::vector<std::size_t> order;  // descending score, ties by ascending index
};

FeatureRanking ranking_from_scores(std::vector<double> scores);

// IG(t) = H(C) - P(t) H(C | t present) - P(!t) H(C | t absent), in nats.
FeatureRanking information_gain(const ContingencyCounts& counts);

// Per class: N (n11 n00 - n10 n01)^2 / ((n11+n01)(n10+n00)(n11+n10)(n01+n00)),
// zero when the denominator degenerates; the global score is the maximum
// over classes.
FeatureRanking chi_squared(const ContingencyCounts& counts);

// log[(n11+.5)(n00+.5) / ((n10+.5)(n01+.5))] with Haldane smoothing, so the
// score is finite for every cell pattern.
std::vector<double> odds_ratio(const ContingencyCounts& counts, std::size_t cls);

// The class with the maximal local score for each feature; ties go to the
// lowest class index. local_scores is indexed [class][feature].
std::vector<std::size_t> assign_feature_class(
    const std::vector<std::vector<double>>& local_scores);

// Odds-ratio local scores for every class, then assign_feature_class.
std::vector<std::size_t> odds_ratio_feature_classes(const ContingencyCounts& counts);

struct FeatureMask {
  std::vector<std::size_t> selected;  // strictly increasing
  std::size_t size() const { return selected.size(); }
};

// Top n_sel of the global ranking.
FeatureMask top_n_mask(const FeatureRanking& ranking, std::size_t n_sel);

// Walk the global ranking taking a feature only while its class quota
// ceil(n_sel / k) is unfilled; if the pass selects fewer than n_sel, the
// best unselected features fill the remainder regardless of class.
FeatureMask igfss_select(const FeatureRanking& ranking,
                         std::span<const std::size_t> feature_classes, std::size_t n_sel,
                         std::size_t n_classes);

// Same walk with quotas proportional to the class sizes (largest-remainder
// rounding, so the quotas sum to exactly n_sel).
FeatureMask vgfss_select(const FeatureRanking& ranking,
                         std::span<const std::size_t> feature_classes, std::size_t n_sel,
                         std::span<const std::size_t> class_sizes);

std::vector<std::size_t> proportional_quotas(std::size_t n_sel,
                                             std::span<const std::size_t> class_sizes);

// Drop the columns outside the mask and re-index the survivors densely,
// preserving their order.
CorpusMatrix apply_mask(const CorpusMatrix& matrix, const FeatureMask& mask);

// "<term> TAB <score>" in ranking order.
std::string format_ranking(const FeatureRanking& ranking, const Vocabulary& vocab);
void save_ranking(const FeatureRanking& ranking, const Vocabulary& vocab,
                  const std::string& path);
void save_mask(const FeatureMask& mask, const std::string& path);

}  // namespace dcdist
