#include "dcdist/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "dcdist/textprep.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace dcdist {

TransformKind transform_from_string(std::string_view name) {
  if (name == "none") return TransformKind::none;
  if (name == "dcd-euclidean") return TransformKind::dcd_euclidean;
  if (name == "dcd-cosine") return TransformKind::dcd_cosine;
  if (name == "ig") return TransformKind::ig;
  if (name == "chi2") return TransformKind::chi2;
  if (name == "igfss") return TransformKind::igfss;
  if (name == "vgfss") return TransformKind::vgfss;
  throw std::runtime_error("unknown transform: " + std::string(name));
}

std::string_view to_string(TransformKind kind) {
  switch (kind) {
    case TransformKind::none: return "none";
    case TransformKind::dcd_euclidean: return "dcd-euclidean";
    case TransformKind::dcd_cosine: return "dcd-cosine";
    case TransformKind::ig: return "ig";
    case TransformKind::chi2: return "chi2";
    case TransformKind::igfss: return "igfss";
    case TransformKind::vgfss: return "vgfss";
  }
  return "?";
}

GfsKind gfs_from_string(std::string_view name) {
  if (name == "ig") return GfsKind::ig;
  if (name == "chi2") return GfsKind::chi2;
  throw std::runtime_error("unknown global scorer: " + std::string(name));
}

std::string_view to_string(GfsKind kind) {
  return kind == GfsKind::ig ? "ig" : "chi2";
}

BudgetSpec BudgetSpec::parse(std::string_view text) {
  BudgetSpec budget;
  if (text == "match-k" || text == "k") {
    budget.match_k = true;
    return budget;
  }
  budget.match_k = false;
  try {
    budget.fraction = std::stod(std::string(text));
  } catch (const std::exception&) {
    throw std::runtime_error("bad budget '" + std::string(text) +
                             "': expected match-k or a fraction in (0,1]");
  }
  if (!(budget.fraction > 0.0 && budget.fraction <= 1.0))
    throw std::runtime_error("budget fraction must be within (0,1], got " +
                             std::string(text));
  return budget;
}

std::string BudgetSpec::str() const {
  if (match_k) return "match-k";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", fraction);
  return buf;
}

ClassifierSpec ClassifierSpec::parse(std::string_view text) {
  ClassifierSpec spec;
  std::string s(text);
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t colon = s.find(':', start);
    parts.push_back(s.substr(start, colon == std::string::npos ? colon : colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.empty()) throw std::runtime_error("empty classifier spec");
  if (parts[0] == "knn") {
    spec.kind = Kind::knn;
    if (parts.size() > 1) spec.k = std::stoi(parts[1]);
    if (parts.size() > 2) spec.metric = metric_from_string(parts[2]);
    if (parts.size() > 3) throw std::runtime_error("bad classifier spec: " + s);
    if (spec.k < 1) throw std::runtime_error("knn needs k >= 1");
  } else if (parts[0] == "centroid") {
    spec.kind = Kind::centroid;
    if (parts.size() > 1) spec.metric = metric_from_string(parts[1]);
    if (parts.size() > 2) throw std::runtime_error("bad classifier spec: " + s);
  } else {
    throw std::runtime_error("unknown classifier: " + parts[0]);
  }
  return spec;
}

std::string ClassifierSpec::str() const {
  if (kind == Kind::knn)
    return "knn:" + std::to_string(k) + ":" + std::string(to_string(metric));
  return "centroid:" + std::string(to_string(metric));
}

double accuracy(std::span<const std::size_t> golds, std::span<const std::size_t> preds) {
  if (golds.size() != preds.size())
    throw std::runtime_error("accuracy: gold/prediction size mismatch");
  if (golds.empty()) throw std::runtime_error("accuracy: no predictions");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < golds.size(); ++i)
    if (golds[i] == preds[i]) correct++;
  return static_cast<double>(correct) / static_cast<double>(golds.size());
}

namespace {

struct Confusion {
  std::vector<double> tp, fp, fn;
  explicit Confusion(std::size_t n_classes) : tp(n_classes), fp(n_classes), fn(n_classes) {}
};

Confusion confusion(std::span<const std::size_t> golds, std::span<const std::size_t> preds,
                    std::size_t n_classes) {
  if (golds.size() != preds.size())
    throw std::runtime_error("f1: gold/prediction size mismatch");
  Confusion c(n_classes);
  for (std::size_t i = 0; i < golds.size(); ++i) {
    if (golds[i] >= n_classes || preds[i] >= n_classes)
      throw std::runtime_error("f1: class index out of range");
    if (golds[i] == preds[i]) {
      c.tp[golds[i]] += 1.0;
    } else {
      c.fn[golds[i]] += 1.0;
      c.fp[preds[i]] += 1.0;
    }
  }
  return c;
}

}  // namespace

double micro_f1(std::span<const std::size_t> golds, std::span<const std::size_t> preds,
                std::size_t n_classes) {
  const Confusion c = confusion(golds, preds, n_classes);
  double tp = 0.0, fp = 0.0, fn = 0.0;
  for (std::size_t k = 0; k < n_classes; ++k) {
    tp += c.tp[k];
    fp += c.fp[k];
    fn += c.fn[k];
  }
  const double denom = 2.0 * tp + fp + fn;
  return denom == 0.0 ? 0.0 : 2.0 * tp / denom;
}

double macro_f1(std::span<const std::size_t> golds, std::span<const std::size_t> preds,
                std::size_t n_classes) {
  if (n_classes == 0) throw std::runtime_error("macro_f1: no classes");
  const Confusion c = confusion(golds, preds, n_classes);
  double sum = 0.0;
  for (std::size_t k = 0; k < n_classes; ++k) {
    const double denom = 2.0 * c.tp[k] + c.fp[k] + c.fn[k];
    sum += denom == 0.0 ? 0.0 : 2.0 * c.tp[k] / denom;
  }
  return sum / static_cast<double>(n_classes);
}

double reduction_pct(double n_selected, double n_raw_words) {
  if (n_raw_words <= 0.0) throw std::runtime_error("reduction_pct: empty raw vocabulary");
  return 100.0 * (1.0 - n_selected / n_raw_words);
}

double sample_std(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  double mean = 0.0;
  for (const double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double sum_sq = 0.0;
  for (const double v : values) sum_sq += (v - mean) * (v - mean);
  return std::sqrt(sum_sq / static_cast<double>(values.size() - 1));
}

std::vector<std::string> top_words(const ClassRepresentative& representative,
                                   const Vocabulary& vocab, std::size_t n) {
  std::vector<std::size_t> order;
  order.reserve(representative.vector.size());
  for (std::size_t j = 0; j < representative.vector.size(); ++j)
    if (representative.vector[j] > 0.0) order.push_back(j);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (representative.vector[a] != representative.vector[b])
      return representative.vector[a] > representative.vector[b];
    return a < b;
  });
  if (order.size() > n) order.resize(n);
  std::vector<std::string> words;
  words.reserve(order.size());
  for (const std::size_t j : order)
    words.push_back(j < vocab.size() ? vocab.terms[j] : std::to_string(j));
  return words;
}

namespace {

LabeledCorpus load_corpus(const CorpusSource& source) {
  switch (source.kind) {
    case CorpusSource::Kind::directory: return load_directory_corpus(source.path);
    case CorpusSource::Kind::tsv: return load_tsv_corpus(source.path);
    case CorpusSource::Kind::synthetic: return make_synthetic_corpus(source.synthetic);
  }
  throw std::runtime_error("bad corpus source");
}

std::vector<std::size_t> rows_for_ids(const std::vector<std::string>& ids,
                                      const std::unordered_map<std::string, std::size_t>& index) {
  std::vector<std::size_t> rows;
  rows.reserve(ids.size());
  for (const std::string& id : ids) rows.push_back(index.at(id));
  return rows;
}

struct FoldData {
  CorpusMatrix train;
  CorpusMatrix test;
  std::size_t n_features = 0;
  // populated for the distance transforms, for artifacts and top-words
  std::vector<ClassRepresentative> representatives;
  FeatureMask mask;  // populated for the selection transforms
  bool has_mask = false;
};

// Fits everything on the training matrix only, then maps both portions into
// the feature space of the configured technique.
FoldData build_features(const RunConfig& config, CorpusMatrix train, CorpusMatrix test,
                        std::size_t n_classes) {
  FoldData data;
  const std::size_t d = train.dim;

  if (config.transform == TransformKind::none) {
    data.n_features = d;
    data.train = std::move(train);
    data.test = std::move(test);
    return data;
  }

  if (config.transform == TransformKind::dcd_euclidean ||
      config.transform == TransformKind::dcd_cosine) {
    const Metric metric = config.transform == TransformKind::dcd_euclidean
                              ? Metric::euclidean
                              : Metric::cosine;
    data.representatives = build_representatives(train, n_classes);
    const DcdFeatures train_feats = dcd_transform(train, data.representatives, metric);
    const DcdFeatures test_feats = dcd_transform(test, data.representatives, metric);
    data.n_features = n_classes;
    data.train = to_matrix(train_feats, train.labels);
    data.test = to_matrix(test_feats, test.labels);
    return data;
  }

  // filter selection
  const std::size_t n_sel = config.budget.match_k
                                ? std::min(n_classes, d)
                                : std::max<std::size_t>(
                                      1, static_cast<std::size_t>(std::llround(
                                             config.budget.fraction * static_cast<double>(d))));
  const ContingencyCounts counts = count_contingency(train, n_classes);
  FeatureRanking ranking;
  switch (config.transform == TransformKind::chi2
              ? GfsKind::chi2
              : (config.transform == TransformKind::ig ? GfsKind::ig : config.gfs)) {
    case GfsKind::ig: ranking = information_gain(counts); break;
    case GfsKind::chi2: ranking = chi_squared(counts); break;
  }

  if (config.transform == TransformKind::ig || config.transform == TransformKind::chi2) {
    data.mask = top_n_mask(ranking, std::min(n_sel, d));
  } else {
    const std::vector<std::size_t> feature_classes = odds_ratio_feature_classes(counts);
    if (config.transform == TransformKind::igfss)
      data.mask = igfss_select(ranking, feature_classes, std::min(n_sel, d), n_classes);
    else
      data.mask = vgfss_select(ranking, feature_classes, std::min(n_sel, d),
                               counts.class_sizes);
  }
  data.has_mask = true;
  data.n_features = data.mask.size();
  data.train = apply_mask(train, data.mask);
  data.test = apply_mask(test, data.mask);
  return data;
}

std::vector<std::size_t> predicted_classes(const std::vector<Prediction>& predictions) {
  std::vector<std::size_t> out;
  out.reserve(predictions.size());
  for (const Prediction& p : predictions) out.push_back(p.predicted);
  return out;
}

ordered_json config_json(const RunConfig& config) {
  ordered_json j;
  switch (config.corpus.kind) {
    case CorpusSource::Kind::directory: j["corpus"] = {{"dir", config.corpus.path}}; break;
    case CorpusSource::Kind::tsv: j["corpus"] = {{"tsv", config.corpus.path}}; break;
    case CorpusSource::Kind::synthetic:
      j["corpus"] = {{"synthetic",
                      {{"classes", config.corpus.synthetic.n_classes},
                       {"docs", config.corpus.synthetic.n_docs},
                       {"words_per_class", config.corpus.synthetic.words_per_class},
                       {"shared_words", config.corpus.synthetic.shared_words},
                       {"tokens_per_doc", config.corpus.synthetic.tokens_per_doc},
                       {"noise_fraction", config.corpus.synthetic.noise_fraction},
                       {"seed", config.corpus.synthetic.seed}}}};
      break;
  }
  j["stoplist"] = config.stoplist_path;
  j["stopwords"] = config.use_stopwords;
  j["stemming"] = config.use_stemming;
  j["transform"] = std::string(to_string(config.transform));
  j["gfs"] = std::string(to_string(config.gfs));
  j["budget"] = config.budget.str();
  j["classifier"] = config.classifier.str();
  j["folds"] = config.n_folds;
  j["seed"] = config.seed;
  j["stratify"] = config.stratify;
  j["min_df"] = config.min_df;
  j["out_dir"] = config.out_dir;
  return j;
}

}  // namespace

std::string config_to_json(const RunConfig& config) { return config_json(config).dump(2); }

RunConfig config_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig config;
  bool have_corpus = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "corpus") {
      have_corpus = true;
      if (value.contains("dir")) {
        config.corpus.kind = CorpusSource::Kind::directory;
        config.corpus.path = value.at("dir").get<std::string>();
      } else if (value.contains("tsv")) {
        config.corpus.kind = CorpusSource::Kind::tsv;
        config.corpus.path = value.at("tsv").get<std::string>();
      } else if (value.contains("synthetic")) {
        config.corpus.kind = CorpusSource::Kind::synthetic;
        const auto& s = value.at("synthetic");
        SyntheticSpec& spec = config.corpus.synthetic;
        if (s.contains("classes")) spec.n_classes = s.at("classes").get<std::size_t>();
        if (s.contains("docs")) spec.n_docs = s.at("docs").get<std::size_t>();
        if (s.contains("words_per_class"))
          spec.words_per_class = s.at("words_per_class").get<std::size_t>();
        if (s.contains("shared_words")) spec.shared_words = s.at("shared_words").get<std::size_t>();
        if (s.contains("tokens_per_doc"))
          spec.tokens_per_doc = s.at("tokens_per_doc").get<std::size_t>();
        if (s.contains("noise_fraction")) spec.noise_fraction = s.at("noise_fraction").get<double>();
        if (s.contains("seed")) spec.seed = s.at("seed").get<std::uint64_t>();
      } else {
        throw std::runtime_error("config corpus needs one of: dir, tsv, synthetic");
      }
    } else if (key == "stoplist") {
      config.stoplist_path = value.get<std::string>();
    } else if (key == "stopwords") {
      config.use_stopwords = value.get<bool>();
    } else if (key == "stemming") {
      config.use_stemming = value.get<bool>();
    } else if (key == "transform") {
      config.transform = transform_from_string(value.get<std::string>());
    } else if (key == "gfs") {
      config.gfs = gfs_from_string(value.get<std::string>());
    } else if (key == "budget") {
      config.budget = BudgetSpec::parse(value.is_string() ? value.get<std::string>()
                                                          : value.dump());
    } else if (key == "classifier") {
      config.classifier = ClassifierSpec::parse(value.get<std::string>());
    } else if (key == "folds") {
      config.n_folds = value.get<int>();
    } else if (key == "seed") {
      config.seed = value.get<std::uint64_t>();
    } else if (key == "stratify") {
      config.stratify = value.get<bool>();
    } else if (key == "min_df") {
      config.min_df = value.get<std::size_t>();
    } else if (key == "out_dir") {
      config.out_dir = value.get<std::string>();
    } else {
      throw std::runtime_error("unknown config key: " + key);
    }
  }
  if (!have_corpus) throw std::runtime_error("config is missing the corpus section");
  if (config.n_folds < 2) throw std::runtime_error("config needs folds >= 2");
  return config;
}

EvalReport run_experiment(const RunConfig& config) {
  using clock = std::chrono::steady_clock;
  const auto t_start = clock::now();

  EvalReport report;
  report.config = config;

  const LabeledCorpus corpus = load_corpus(config.corpus);
  const std::vector<std::size_t> labels = corpus.label_indices();
  report.n_docs = corpus.docs.size();
  report.n_classes = corpus.n_classes();
  report.n_raw_words = raw_vocabulary_size(corpus);

  const Stoplist stoplist = config.stoplist_path.empty()
                                ? Stoplist{}
                                : Stoplist::from_file(config.stoplist_path);
  const PrepOptions prep{config.use_stopwords, config.use_stemming};
  const std::vector<TokenizedDoc> tokenized = preprocess_corpus(corpus, stoplist, prep);

  const std::vector<FoldSplit> folds =
      config.stratify ? stratified_kfold(corpus, config.n_folds, config.seed)
                      : plain_kfold(corpus, config.n_folds, config.seed);

  std::unordered_map<std::string, std::size_t> row_of_id;
  for (std::size_t i = 0; i < corpus.docs.size(); ++i) row_of_id.emplace(corpus.docs[i].id, i);

  const bool artifacts = !config.out_dir.empty();
  if (artifacts) fs::create_directories(config.out_dir);

  for (const FoldSplit& fold : folds) {
    const auto t_fold = clock::now();
    try {
      const std::vector<std::size_t> train_rows = rows_for_ids(fold.train_ids, row_of_id);
      const std::vector<std::size_t> test_rows = rows_for_ids(fold.test_ids, row_of_id);

      std::vector<TokenizedDoc> train_docs, test_docs;
      std::vector<std::size_t> train_labels, test_labels;
      std::vector<std::string> test_ids;
      for (const std::size_t r : train_rows) {
        train_docs.push_back(tokenized[r]);
        train_labels.push_back(labels[r]);
      }
      for (const std::size_t r : test_rows) {
        test_docs.push_back(tokenized[r]);
        test_labels.push_back(labels[r]);
        test_ids.push_back(corpus.docs[r].id);
      }

      const Vocabulary vocab = fit_vocabulary(train_docs, config.min_df);
      CorpusMatrix train_matrix = transform(train_docs, vocab, train_labels);
      CorpusMatrix test_matrix = transform(test_docs, vocab, test_labels);

      FoldData data = build_features(config, std::move(train_matrix), std::move(test_matrix),
                                     report.n_classes);

      std::vector<Prediction> predictions;
      if (config.classifier.kind == ClassifierSpec::Kind::knn) {
        const KnnModel model(std::move(data.train), config.classifier.k,
                             config.classifier.metric);
        predictions = model.predict(data.test, test_ids);
      } else {
        const auto centroids = build_representatives(data.train, report.n_classes);
        predictions = centroid_predict(centroids, data.test, config.classifier.metric,
                                       test_ids);
      }

      const std::vector<std::size_t> preds = predicted_classes(predictions);
      FoldScore score;
      score.accuracy = accuracy(test_labels, preds);
      score.micro_f1 = micro_f1(test_labels, preds, report.n_classes);
      score.macro_f1 = macro_f1(test_labels, preds, report.n_classes);
      score.n_features = data.n_features;
      // single-label identity; a violation means the pooling is broken
      if (score.micro_f1 != score.accuracy)
        throw std::logic_error("micro-F1 diverged from accuracy on a single-label run");

      score.millis = std::chrono::duration<double, std::milli>(clock::now() - t_fold).count();
      report.folds.push_back(score);

      if (artifacts) {
        const fs::path fold_dir =
            fs::path(config.out_dir) / ("fold" + std::to_string(fold.fold_index));
        fs::create_directories(fold_dir);
        std::ofstream preds_out(fold_dir / "predictions.tsv", std::ios::binary);
        preds_out << format_predictions(predictions, test_labels, corpus.classes);
        if (data.has_mask) save_mask(data.mask, (fold_dir / "mask.txt").string());
        if (!data.representatives.empty())
          save_representatives(data.representatives, corpus.classes,
                               (fold_dir / "representatives.tsv").string());
      }
    } catch (const std::logic_error&) {
      throw;
    } catch (const std::exception& e) {
      throw std::runtime_error("fold " + std::to_string(fold.fold_index) + ": " + e.what());
    }
  }

  std::vector<double> accs, micros, macros;
  for (const FoldScore& s : report.folds) {
    accs.push_back(s.accuracy);
    micros.push_back(s.micro_f1);
    macros.push_back(s.macro_f1);
    report.mean_features += static_cast<double>(s.n_features);
  }
  const auto mean = [](const std::vector<double>& v) {
    double sum = 0.0;
    for (const double x : v) sum += x;
    return sum / static_cast<double>(v.size());
  };
  report.mean_accuracy = mean(accs);
  report.mean_micro_f1 = mean(micros);
  report.mean_macro_f1 = mean(macros);
  report.std_accuracy = sample_std(accs);
  report.std_micro_f1 = sample_std(micros);
  report.std_macro_f1 = sample_std(macros);
  report.mean_features /= static_cast<double>(report.folds.size());
  report.reduction = reduction_pct(report.mean_features, static_cast<double>(report.n_raw_words));
  report.total_millis =
      std::chrono::duration<double, std::milli>(clock::now() - t_start).count();

  if (artifacts) {
    save_fold_assignments(folds, (fs::path(config.out_dir) / "folds.tsv").string());
    std::ofstream json_out(fs::path(config.out_dir) / "report.json", std::ios::binary);
    json_out << report_to_json(report);
    std::ofstream table_out(fs::path(config.out_dir) / "report.txt", std::ios::binary);
    table_out << format_report_table(report);
  }
  return report;
}

std::string format_report_table(const EvalReport& report) {
  char line[256];
  std::string out;
  out += "Tech            Classifier        Accuracy       Micro-F1       Macro-F1       "
         "Feat.     Red(%)\n";
  std::snprintf(line, sizeof(line),
                "%-15s %-17s %5.2f +- %4.2f %5.2f +- %4.2f %5.2f +- %4.2f %-9.0f %.2f\n",
                std::string(to_string(report.config.transform)).c_str(),
                report.config.classifier.str().c_str(), 100.0 * report.mean_accuracy,
                100.0 * report.std_accuracy, 100.0 * report.mean_micro_f1,
                100.0 * report.std_micro_f1, 100.0 * report.mean_macro_f1,
                100.0 * report.std_macro_f1, report.mean_features, report.reduction);
  out += line;
  std::snprintf(line, sizeof(line),
                "docs=%zu classes=%zu raw_words=%zu folds=%zu seed=%llu time=%.0fms\n",
                report.n_docs, report.n_classes, report.n_raw_words, report.folds.size(),
                static_cast<unsigned long long>(report.config.seed), report.total_millis);
  out += line;
  return out;
}

std::string report_to_json(const EvalReport& report) {
  ordered_json j;
  j["config"] = config_json(report.config);
  j["invocation"] = report.invocation;
  j["metadata"] = {{"idf_log_base", "natural"},
                   {"dcd_cosine_feature", "one_minus_similarity"},
                   {"std", "sample"}};
  j["n_docs"] = report.n_docs;
  j["n_classes"] = report.n_classes;
  j["n_raw_words"] = report.n_raw_words;
  ordered_json folds = ordered_json::array();
  for (const FoldScore& s : report.folds)
    folds.push_back({{"accuracy", s.accuracy},
                     {"micro_f1", s.micro_f1},
                     {"macro_f1", s.macro_f1},
                     {"n_features", s.n_features}});
  j["folds"] = folds;
  j["mean_accuracy"] = report.mean_accuracy;
  j["std_accuracy"] = report.std_accuracy;
  j["mean_micro_f1"] = report.mean_micro_f1;
  j["std_micro_f1"] = report.std_micro_f1;
  j["mean_macro_f1"] = report.mean_macro_f1;
  j["std_macro_f1"] = report.std_macro_f1;
  j["mean_features"] = report.mean_features;
  j["reduction_pct"] = report.reduction;
  return j.dump(2) + "\n";
}

}  // namespace dcdist
