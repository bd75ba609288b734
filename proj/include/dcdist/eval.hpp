// Cross-validated experiment driver: preprocess, vectorize, transform or
// select, classify, score. Fitting of vocabularies, scorers and
// representatives always happens on the training portion of a fold only.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dcdist/classify.hpp"
#include "dcdist/corpus.hpp"
#include "dcdist/dcdistance.hpp"
#include "dcdist/featselect.hpp"
#include "dcdist/synthetic.hpp"
#include "dcdist/vectorizer.hpp"

namespace dcdist {

enum class TransformKind { none, dcd_euclidean, dcd_cosine, ig, chi2, igfss, vgfss };
enum class GfsKind { ig, chi2 };

TransformKind transform_from_string(std::string_view name);
std::string_view to_string(TransformKind kind);
GfsKind gfs_from_string(std::string_view name);
std::string_view to_string(GfsKind kind);

// Selection budget: either "match the class count" (the width the distance
// features produce) or a fraction of the fitted vocabulary.
struct BudgetSpec {
  bool match_k = true;
  double fraction = 0.0;  // in (0, 1] when match_k is false

  static BudgetSpec parse(std::string_view text);
  std::string str() const;
};

struct ClassifierSpec {
  enum class Kind { knn, centroid };
  Kind kind = Kind::knn;
  int k = 5;
  Metric metric = Metric::euclidean;

  static ClassifierSpec parse(std::string_view text);  // "knn:5", "knn:3:cosine", "centroid"
  std::string str() const;
};

struct CorpusSource {
  enum class Kind { directory, tsv, synthetic };
  Kind kind = Kind::synthetic;
  std::string path;
  SyntheticSpec synthetic;
};

struct RunConfig {
  CorpusSource corpus;
  std::string stoplist_path;  // empty means an empty stoplist
  bool use_stopwords = true;
  bool use_stemming = true;
  TransformKind transform = TransformKind::dcd_euclidean;
  GfsKind gfs = GfsKind::ig;  // global scorer behind igfss / vgfss
  BudgetSpec budget;
  ClassifierSpec classifier;
  int n_folds = 10;
  std::uint64_t seed = 42;
  bool stratify = true;
  std::size_t min_df = 1;
  std::string out_dir;  // empty means no artifacts on disk
};

RunConfig config_from_json(const std::string& text);
std::string config_to_json(const RunConfig& config);

struct FoldScore {
  double accuracy = 0.0;
  double micro_f1 = 0.0;
  double macro_f1 = 0.0;
  std::size_t n_features = 0;
  double millis = 0.0;
};

struct EvalReport {
  RunConfig config;
  std::string invocation;  // command line echo, set by callers
  std::size_t n_docs = 0;
  std::size_t n_classes = 0;
  std::size_t n_raw_words = 0;  // distinct words before preprocessing
  std::vector<FoldScore> folds;
  double mean_accuracy = 0.0, std_accuracy = 0.0;
  double mean_micro_f1 = 0.0, std_micro_f1 = 0.0;
  double mean_macro_f1 = 0.0, std_macro_f1 = 0.0;
  double mean_features = 0.0;
  double reduction = 0.0;  // percent, against n_raw_words
  double total_millis = 0.0;
};

double accuracy(std::span<const std::size_t> golds, std::span<const std::size_t> preds);
// TP/FP/FN pooled over classes; equals accuracy whenever every document
// carries exactly one gold label.
double micro_f1(std::span<const std::size_t> golds, std::span<const std::size_t> preds,
                std::size_t n_classes);
// Unweighted mean of per-class F1, with F1 = 0 for classes where precision
// and recall are both zero.
double macro_f1(std::span<const std::size_t> golds, std::span<const std::size_t> preds,
                std::size_t n_classes);

// 100 * (1 - n_selected / n_raw_words)
double reduction_pct(double n_selected, double n_raw_words);

// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
double sample_std(std::span<const double> values);

EvalReport run_experiment(const RunConfig& config);

// The n vocabulary terms with the largest representative entries,
// descending, ties to the lower column; zero entries never qualify.
std::vector<std::string> top_words(const ClassRepresentative& representative,
                                   const Vocabulary& vocab, std::size_t n);

std::string format_report_table(const EvalReport& report);
// Deterministic: carries config echo and per-fold scores but no wall-clock
// fields, so identical runs serialize identically.
std::string report_to_json(const EvalReport& report);

}  // namespace dcdist
