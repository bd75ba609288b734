#include "dcdist/featselect.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace dcdist {

ContingencyCounts::Cells ContingencyCounts::cells(std::size_t term, std::size_t cls) const {
  Cells c{};
  const double both = static_cast<double>(joint[cls][term]);
  c.n11 = both;
  c.n10 = static_cast<double>(term_df[term]) - both;
  c.n01 = static_cast<double>(class_sizes[cls]) - both;
  c.n00 = static_cast<double>(n_docs) - c.n11 - c.n10 - c.n01;
  return c;
}

ContingencyCounts count_contingency(const CorpusMatrix& presence, std::size_t n_classes) {
  ContingencyCounts counts;
  counts.n_docs = presence.rows.size();
  counts.n_features = presence.dim;
  counts.n_classes = n_classes;
  counts.term_df.assign(presence.dim, 0);
  counts.class_sizes.assign(n_classes, 0);
  counts.joint.assign(n_classes, std::vector<std::size_t>(presence.dim, 0));

  for (std::size_t i = 0; i < presence.rows.size(); ++i) {
    const std::size_t cls = presence.labels[i];
    if (cls >= n_classes)
      throw std::runtime_error("row label " + std::to_string(cls) + " out of range");
    counts.class_sizes[cls]++;
    for (const auto& [j, w] : presence.rows[i].entries) {
      counts.term_df[j]++;
      counts.joint[cls][j]++;
    }
  }
  return counts;
}

FeatureRanking ranking_from_scores(std::vector<double> scores) {
  FeatureRanking ranking;
  ranking.order.resize(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) ranking.order[i] = i;
  ranking.scores = std::move(scores);
  std::sort(ranking.order.begin(), ranking.order.end(),
            [&ranking](std::size_t a, std::size_t b) {
              if (ranking.scores[a] != ranking.scores[b])
                return ranking.scores[a] > ranking.scores[b];
              return a < b;
            });
  return ranking;
}

namespace {

// -sum p ln p over the class distribution given by parts / total
double entropy(std::span<const double> parts, double total) {
  if (total <= 0.0) return 0.0;
  double h = 0.0;
  for (const double part : parts) {
    if (part <= 0.0) continue;
    const double p = part / total;
    h -= p * std::log(p);
  }
  return h;
}

}  // namespace

FeatureRanking information_gain(const ContingencyCounts& counts) {
  const double n = static_cast<double>(counts.n_docs);
  std::vector<double> class_totals(counts.n_classes);
  for (std::size_t c = 0; c < counts.n_classes; ++c)
    class_totals[c] = static_cast<double>(counts.class_sizes[c]);
  const double h_class = entropy(class_totals, n);

  std::vector<double> scores(counts.n_features, 0.0);
  std::vector<double> present(counts.n_classes), absent(counts.n_classes);
  for (std::size_t t = 0; t < counts.n_features; ++t) {
    const double df = static_cast<double>(counts.term_df[t]);
    for (std::size_t c = 0; c < counts.n_classes; ++c) {
      present[c] = static_cast<double>(counts.joint[c][t]);
      absent[c] = class_totals[c] - present[c];
    }
    const double gain = h_class - (df / n) * entropy(present, df) -
                        ((n - df) / n) * entropy(absent, n - df);
    scores[t] = std::max(gain, 0.0);  // clip the odd -1e-17 from rounding
  }
  return ranking_from_scores(std::move(scores));
}

FeatureRanking chi_squared(const ContingencyCounts& counts) {
  const double n = static_cast<double>(counts.n_docs);
  std::vector<double> scores(counts.n_features, 0.0);
  for (std::size_t t = 0; t < counts.n_features; ++t) {
    double best = 0.0;
    for (std::size_t c = 0; c < counts.n_classes; ++c) {
      const auto [n11, n10, n01, n00] = counts.cells(t, c);
      const double denom = (n11 + n01) * (n10 + n00) * (n11 + n10) * (n01 + n00);
      if (denom == 0.0) continue;
      const double diff = n11 * n00 - n10 * n01;
      best = std::max(best, n * diff * diff / denom);
    }
    scores[t] = best;
  }
  return ranking_from_scores(std::move(scores));
}

std::vector<double> odds_ratio(const ContingencyCounts& counts, std::size_t cls) {
  if (cls >= counts.n_classes) throw std::runtime_error("odds_ratio: class out of range");
  std::vector<double> scores(counts.n_features);
  for (std::size_t t = 0; t < counts.n_features; ++t) {
    const auto [n11, n10, n01, n00] = counts.cells(t, cls);
    scores[t] = std::log(((n11 + 0.5) * (n00 + 0.5)) / ((n10 + 0.5) * (n01 + 0.5)));
  }
  return scores;
}

std::vector<std::size_t> assign_feature_class(
    const std::vector<std::vector<double>>& local_scores) {
  if (local_scores.empty()) return {};
  const std::size_t n_features = local_scores.front().size();
  std::vector<std::size_t> assignment(n_features, 0);
  for (std::size_t t = 0; t < n_features; ++t) {
    for (std::size_t c = 1; c < local_scores.size(); ++c)
      if (local_scores[c][t] > local_scores[assignment[t]][t]) assignment[t] = c;
  }
  return assignment;
}

std::vector<std::size_t> odds_ratio_feature_classes(const ContingencyCounts& counts) {
  std::vector<std::vector<double>> local(counts.n_classes);
  for (std::size_t c = 0; c < counts.n_classes; ++c) local[c] = odds_ratio(counts, c);
  return assign_feature_class(local);
}

namespace {

FeatureMask quota_walk(const FeatureRanking& ranking,
                       std::span<const std::size_t> feature_classes, std::size_t n_sel,
                       const std::vector<std::size_t>& quotas) {
  const std::size_t d = ranking.scores.size();
  if (n_sel > d)
    throw std::runtime_error("cannot select " + std::to_string(n_sel) + " of " +
                             std::to_string(d) + " features");
  if (feature_classes.size() != d)
    throw std::runtime_error("feature class assignment does not match ranking size");

  std::vector<bool> picked(d, false);
  std::vector<std::size_t> taken(quotas.size(), 0);
  std::size_t n_picked = 0;
  for (const std::size_t f : ranking.order) {
    if (n_picked == n_sel) break;
    const std::size_t c = feature_classes[f];
    if (c >= quotas.size())
      throw std::runtime_error("feature class " + std::to_string(c) + " out of range");
    if (taken[c] >= quotas[c]) continue;
    taken[c]++;
    picked[f] = true;
    n_picked++;
  }
  // quotas exhausted before the budget: fill with the best leftovers
  for (const std::size_t f : ranking.order) {
    if (n_picked == n_sel) break;
    if (picked[f]) continue;
    picked[f] = true;
    n_picked++;
  }

  FeatureMask mask;
  mask.selected.reserve(n_sel);
  for (std::size_t f = 0; f < d; ++f)
    if (picked[f]) mask.selected.push_back(f);
  return mask;
}

}  // namespace

FeatureMask top_n_mask(const FeatureRanking& ranking, std::size_t n_sel) {
  const std::size_t d = ranking.scores.size();
  if (n_sel > d)
    throw std::runtime_error("cannot select " + std::to_string(n_sel) + " of " +
                             std::to_string(d) + " features");
  FeatureMask mask;
  mask.selected.assign(ranking.order.begin(),
                       ranking.order.begin() + static_cast<std::ptrdiff_t>(n_sel));
  std::sort(mask.selected.begin(), mask.selected.end());
  return mask;
}

FeatureMask igfss_select(const FeatureRanking& ranking,
                         std::span<const std::size_t> feature_classes, std::size_t n_sel,
                         std::size_t n_classes) {
  if (n_classes == 0) throw std::runtime_error("igfss_select: no classes");
  const std::size_t quota = (n_sel + n_classes - 1) / n_classes;  // ceil
  return quota_walk(ranking, feature_classes, n_sel,
                    std::vector<std::size_t>(n_classes, quota));
}

std::vector<std::size_t> proportional_quotas(std::size_t n_sel,
                                             std::span<const std::size_t> class_sizes) {
  std::size_t total = 0;
  for (const std::size_t s : class_sizes) total += s;
  if (total == 0) throw std::runtime_error("proportional_quotas: empty classes");

  // floor of the exact share, then hand the leftover seats to the largest
  // remainders (ties to the lowest class index)
  std::vector<std::size_t> quotas(class_sizes.size());
  std::vector<std::pair<std::size_t, std::size_t>> remainders;  // (remainder, class)
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < class_sizes.size(); ++c) {
    const std::size_t numerator = n_sel * class_sizes[c];
    quotas[c] = numerator / total;
    assigned += quotas[c];
    remainders.emplace_back(numerator % total, c);
  }
  std::sort(remainders.begin(), remainders.end(),
            [](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first > b.first;
              return a.second < b.second;
            });
  for (std::size_t i = 0; assigned < n_sel && i < remainders.size(); ++i, ++assigned)
    quotas[remainders[i].second]++;
  return quotas;
}

FeatureMask vgfss_select(const FeatureRanking& ranking,
                         std::span<const std::size_t> feature_classes, std::size_t n_sel,
                         std::span<const std::size_t> class_sizes) {
  return quota_walk(ranking, feature_classes, n_sel,
                    proportional_quotas(n_sel, class_sizes));
}

CorpusMatrix apply_mask(const CorpusMatrix& matrix, const FeatureMask& mask) {
  constexpr std::size_t kDropped = static_cast<std::size_t>(-1);
  std::vector<std::size_t> new_index(matrix.dim, kDropped);
  for (std::size_t pos = 0; pos < mask.selected.size(); ++pos) {
    const std::size_t j = mask.selected[pos];
    if (j >= matrix.dim)
      throw std::runtime_error("mask index " + std::to_string(j) + " out of range");
    new_index[j] = pos;
  }

  CorpusMatrix out;
  out.dim = mask.selected.size();
  out.labels = matrix.labels;
  out.rows.resize(matrix.rows.size());
  for (std::size_t i = 0; i < matrix.rows.size(); ++i) {
    for (const auto& [j, w] : matrix.rows[i].entries)
      if (new_index[j] != kDropped) out.rows[i].entries.emplace_back(new_index[j], w);
  }
  return out;
}

std::string format_ranking(const FeatureRanking& ranking, const Vocabulary& vocab) {
  std::string out;
  char buf[64];
  for (const std::size_t f : ranking.order) {
    std::snprintf(buf, sizeof(buf), "\t%.17g\n", ranking.scores[f]);
    out += f < vocab.size() ? vocab.terms[f] : std::to_string(f);
    out += buf;
  }
  return out;
}

void save_ranking(const FeatureRanking& ranking, const Vocabulary& vocab,
                  const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write ranking file: " + path);
  out << format_ranking(ranking, vocab);
}

void save_mask(const FeatureMask& mask, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write mask file: " + path);
  for (const std::size_t j : mask.selected) out << j << "\n";
}

}  // namespace dcdist
