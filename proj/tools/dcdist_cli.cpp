// Command-line front end: preprocessing, vectorization, feature transforms
// and cross-validated benchmarks.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dcdist/classify.hpp"
#include "dcdist/corpus.hpp"
#include "dcdist/dcdistance.hpp"
#include "dcdist/eval.hpp"
#include "dcdist/featselect.hpp"
#include "dcdist/synthetic.hpp"
#include "dcdist/textprep.hpp"
#include "dcdist/vectorizer.hpp"

namespace fs = std::filesystem;
using dcdist::RunConfig;

namespace {

std::string default_stoplist() {
  return std::string(DCDIST_DATA_DIR) + "/stoplists/smart_english.txt";
}

std::string cache_dir() {
  if (const char* env = std::getenv("DCDIST_CACHE_DIR")) return env;
  return "dcdist_cache";
}

std::string join_invocation(int argc, char** argv) {
  std::string line;
  for (int i = 0; i < argc; ++i) {
    if (i > 0) line += ' ';
    line += argv[i];
  }
  return line;
}

// Flags shared by the subcommands that read a corpus.
struct CorpusFlags {
  std::string dir;
  std::string tsv;
  std::string dataset;  // reuters | news20 | synthetic, resolved via the cache dir

  dcdist::CorpusSource resolve() const {
    dcdist::CorpusSource source;
    const int given = (!dir.empty()) + (!tsv.empty()) + (!dataset.empty());
    if (given != 1)
      throw std::runtime_error(
          "pick exactly one corpus: --corpus-dir, --corpus-tsv or --dataset");
    if (!dir.empty()) {
      source.kind = dcdist::CorpusSource::Kind::directory;
      source.path = dir;
      return source;
    }
    if (!tsv.empty()) {
      source.kind = dcdist::CorpusSource::Kind::tsv;
      source.path = tsv;
      return source;
    }
    if (dataset == "synthetic") {
      source.kind = dcdist::CorpusSource::Kind::synthetic;
      return source;
    }
    // Named datasets are resolved against the cache directory; see the
    // README for the expected layouts. There is no downloader here, the
    // files have to be fetched once by hand.
    const fs::path cache(cache_dir());
    if (dataset == "reuters") {
      if (fs::exists(cache / "reuters.tsv")) {
        source.kind = dcdist::CorpusSource::Kind::tsv;
        source.path = (cache / "reuters.tsv").string();
        return source;
      }
      if (fs::is_directory(cache / "reuters")) {
        source.kind = dcdist::CorpusSource::Kind::directory;
        source.path = (cache / "reuters").string();
        return source;
      }
      throw std::runtime_error("dataset 'reuters' not found under " + cache.string() +
                               " (expected reuters.tsv or reuters/); set DCDIST_CACHE_DIR");
    }
    if (dataset == "news20") {
      if (fs::is_directory(cache / "20news-bydate-test")) {
        source.kind = dcdist::CorpusSource::Kind::directory;
        source.path = (cache / "20news-bydate-test").string();
        return source;
      }
      throw std::runtime_error("dataset 'news20' not found under " + cache.string() +
                               " (expected 20news-bydate-test/); set DCDIST_CACHE_DIR");
    }
    throw std::runtime_error("unknown dataset: " + dataset);
  }
};

void add_corpus_flags(CLI::App* cmd, CorpusFlags& flags) {
  cmd->add_option("--corpus-dir", flags.dir, "corpus root with one directory per class");
  cmd->add_option("--corpus-tsv", flags.tsv, "corpus file with <label>TAB<text> lines");
  cmd->add_option("--dataset", flags.dataset, "named dataset: reuters, news20, synthetic");
}

dcdist::LabeledCorpus load_source(const dcdist::CorpusSource& source) {
  switch (source.kind) {
    case dcdist::CorpusSource::Kind::directory:
      return dcdist::load_directory_corpus(source.path);
    case dcdist::CorpusSource::Kind::tsv:
      return dcdist::load_tsv_corpus(source.path);
    case dcdist::CorpusSource::Kind::synthetic:
      return dcdist::make_synthetic_corpus(source.synthetic);
  }
  throw std::runtime_error("bad corpus source");
}

void write_meta(const std::string& path, const std::string& invocation,
                std::uint64_t seed) {
  nlohmann::ordered_json meta;
  meta["invocation"] = invocation;
  meta["seed"] = seed;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << meta.dump(2) << "\n";
}

struct PipelineArtifacts {
  dcdist::LabeledCorpus corpus;
  std::vector<dcdist::TokenizedDoc> tokenized;
  dcdist::Vocabulary vocab;
  dcdist::CorpusMatrix matrix;
};

// Whole-corpus fit for the inspection subcommands (no train/test split).
PipelineArtifacts run_pipeline(const dcdist::CorpusSource& source,
                               const std::string& stoplist_path, std::size_t min_df) {
  PipelineArtifacts art;
  art.corpus = load_source(source);
  const dcdist::Stoplist stoplist = stoplist_path.empty()
                                        ? dcdist::Stoplist{}
                                        : dcdist::Stoplist::from_file(stoplist_path);
  art.tokenized = dcdist::preprocess_corpus(art.corpus, stoplist);
  art.vocab = dcdist::fit_vocabulary(art.tokenized, min_df);
  art.matrix = dcdist::transform(art.tokenized, art.vocab, art.corpus.label_indices());
  return art;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dcdist: distance-to-class-representative text features and "
               "feature-selection benchmarks"};
  app.require_subcommand(1);
  const std::string invocation = join_invocation(argc, argv);

  CorpusFlags corpus_flags;
  std::string stoplist_path = default_stoplist();
  std::size_t min_df = 1;
  std::string out_path;
  std::string out_prefix = "dcdist_out";
  std::string metric_name = "euclidean";
  std::string transform_name;
  std::string gfs_name = "ig";
  std::string budget_text = "match-k";
  std::string classifier_text = "knn:5:euclidean";
  std::string config_path;
  std::string out_dir;
  int n_folds = 10;
  std::uint64_t seed = 42;
  bool no_stratify = false;
  bool no_stopwords = false;
  bool no_stemming = false;
  std::size_t top_n = 10;

  auto add_prep_flags = [&](CLI::App* cmd) {
    add_corpus_flags(cmd, corpus_flags);
    cmd->add_option("--stoplist", stoplist_path, "stoplist file; empty disables");
    cmd->add_flag("--no-stopwords", no_stopwords, "keep stopwords");
    cmd->add_flag("--no-stemming", no_stemming, "skip stemming");
  };

  CLI::App* prep = app.add_subcommand("prep", "tokenize, filter and stem a corpus");
  add_prep_flags(prep);
  prep->add_option("--out", out_path, "output file (default stdout)");
  prep->callback([&] {
    const auto corpus = load_source(corpus_flags.resolve());
    const dcdist::Stoplist stoplist = stoplist_path.empty()
                                          ? dcdist::Stoplist{}
                                          : dcdist::Stoplist::from_file(stoplist_path);
    const dcdist::PrepOptions options{!no_stopwords, !no_stemming};
    std::ostringstream body;
    for (std::size_t i = 0; i < corpus.docs.size(); ++i) {
      const auto doc = dcdist::preprocess_document(corpus.docs[i], stoplist, options);
      body << doc.id << '\t' << corpus.docs[i].label << '\t';
      for (std::size_t t = 0; t < doc.tokens.size(); ++t) {
        if (t > 0) body << ' ';
        body << doc.tokens[t];
      }
      body << '\n';
    }
    if (out_path.empty()) {
      std::cout << body.str();
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + out_path);
      out << body.str();
      write_meta(out_path + ".meta.json", invocation, seed);
    }
  });

  CLI::App* vectorize = app.add_subcommand("vectorize", "fit a vocabulary and write "
                                                        "the sparse matrix");
  add_prep_flags(vectorize);
  vectorize->add_option("--min-df", min_df, "drop terms in fewer training documents");
  vectorize->add_option("--out-prefix", out_prefix, "writes <prefix>.svm and <prefix>.vocab");
  vectorize->callback([&] {
    const auto art = run_pipeline(corpus_flags.resolve(), stoplist_path, min_df);
    dcdist::save_matrix(art.matrix, out_prefix + ".svm");
    dcdist::save_vocabulary(art.vocab, out_prefix + ".vocab");
    write_meta(out_prefix + ".meta.json", invocation, seed);
    std::cout << "docs=" << art.matrix.rows.size() << " terms=" << art.vocab.size()
              << " classes=" << art.corpus.n_classes() << "\n";
  });

  CLI::App* dcd = app.add_subcommand("dcd", "distance-to-representative features");
  add_prep_flags(dcd);
  dcd->add_option("--metric", metric_name, "euclidean or cosine");
  dcd->add_option("--min-df", min_df, "drop terms in fewer training documents");
  dcd->add_option("--out-prefix", out_prefix,
                  "writes <prefix>.svm and <prefix>.representatives.tsv");
  dcd->callback([&] {
    const auto art = run_pipeline(corpus_flags.resolve(), stoplist_path, min_df);
    const auto reps = dcdist::build_representatives(art.matrix, art.corpus.n_classes());
    const auto features =
        dcdist::dcd_transform(art.matrix, reps, dcdist::metric_from_string(metric_name));
    dcdist::save_matrix(dcdist::to_matrix(features, art.matrix.labels), out_prefix + ".svm");
    dcdist::save_representatives(reps, art.corpus.classes,
                                 out_prefix + ".representatives.tsv");
    write_meta(out_prefix + ".meta.json", invocation, seed);
    std::cout << "docs=" << art.matrix.rows.size() << " features=" << features.n_classes()
              << " raw_dim=" << art.matrix.dim << "\n";
  });

  CLI::App* select = app.add_subcommand("select", "rank features and write a mask");
  add_prep_flags(select);
  select->add_option("--transform", transform_name, "ig, chi2, igfss or vgfss")
      ->required();
  select->add_option("--gfs", gfs_name, "global scorer behind igfss/vgfss: ig or chi2");
  select->add_option("--budget", budget_text, "match-k or a fraction in (0,1]");
  select->add_option("--min-df", min_df, "drop terms in fewer training documents");
  select->add_option("--out-prefix", out_prefix,
                     "writes <prefix>.ranking.tsv and <prefix>.mask.txt");
  select->callback([&] {
    const auto kind = dcdist::transform_from_string(transform_name);
    if (kind == dcdist::TransformKind::none ||
        kind == dcdist::TransformKind::dcd_euclidean ||
        kind == dcdist::TransformKind::dcd_cosine)
      throw std::runtime_error("select expects a feature-selection transform");
    const auto art = run_pipeline(corpus_flags.resolve(), stoplist_path, min_df);
    const std::size_t k = art.corpus.n_classes();
    const auto counts = dcdist::count_contingency(art.matrix, k);
    const auto budget = dcdist::BudgetSpec::parse(budget_text);
    const std::size_t n_sel =
        budget.match_k
            ? std::min(k, art.matrix.dim)
            : std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(
                                           budget.fraction *
                                           static_cast<double>(art.matrix.dim))));
    dcdist::FeatureRanking ranking;
    const bool use_chi = kind == dcdist::TransformKind::chi2 ||
                         (kind != dcdist::TransformKind::ig &&
                          dcdist::gfs_from_string(gfs_name) == dcdist::GfsKind::chi2);
    ranking = use_chi ? dcdist::chi_squared(counts) : dcdist::information_gain(counts);
    dcdist::FeatureMask mask;
    if (kind == dcdist::TransformKind::ig || kind == dcdist::TransformKind::chi2) {
      mask = dcdist::top_n_mask(ranking, n_sel);
    } else {
      const auto feature_classes = dcdist::odds_ratio_feature_classes(counts);
      mask = kind == dcdist::TransformKind::igfss
                 ? dcdist::igfss_select(ranking, feature_classes, n_sel, k)
                 : dcdist::vgfss_select(ranking, feature_classes, n_sel,
                                        counts.class_sizes);
    }
    dcdist::save_ranking(ranking, art.vocab, out_prefix + ".ranking.tsv");
    dcdist::save_mask(mask, out_prefix + ".mask.txt");
    write_meta(out_prefix + ".meta.json", invocation, seed);
    std::cout << "selected=" << mask.size() << " of " << art.matrix.dim << "\n";
  });

  CLI::App* topwords = app.add_subcommand("topwords", "strongest representative terms "
                                                      "per class");
  add_prep_flags(topwords);
  topwords->add_option("--n", top_n, "words per class");
  topwords->add_option("--min-df", min_df, "drop terms in fewer training documents");
  topwords->callback([&] {
    const auto art = run_pipeline(corpus_flags.resolve(), stoplist_path, min_df);
    const auto reps = dcdist::build_representatives(art.matrix, art.corpus.n_classes());
    for (std::size_t c = 0; c < reps.size(); ++c) {
      const auto words = dcdist::top_words(reps[c], art.vocab, top_n);
      std::cout << art.corpus.classes[c] << '\t';
      for (std::size_t w = 0; w < words.size(); ++w) {
        if (w > 0) std::cout << ',';
        std::cout << words[w];
      }
      std::cout << '\n';
    }
  });

  auto add_eval_flags = [&](CLI::App* cmd) {
    add_prep_flags(cmd);
    cmd->add_option("--transform", transform_name,
                    "none, dcd-euclidean, dcd-cosine, ig, chi2, igfss, vgfss");
    cmd->add_option("--gfs", gfs_name, "global scorer behind igfss/vgfss");
    cmd->add_option("--budget", budget_text, "match-k or a fraction in (0,1]");
    cmd->add_option("--classifier", classifier_text, "knn:<k>[:<metric>] or "
                                                     "centroid[:<metric>]");
    cmd->add_option("--folds", n_folds, "number of cross-validation folds");
    cmd->add_option("--seed", seed, "fold shuffling seed");
    cmd->add_flag("--no-stratify", no_stratify, "plain shuffled folds");
    cmd->add_option("--min-df", min_df, "drop terms in fewer training documents");
  };

  auto flag_count = [](CLI::App* cmd, const std::string& name) -> std::size_t {
    const CLI::Option* option = cmd->get_option_no_throw(name);
    return option ? option->count() : 0;
  };

  // Builds the run configuration from config file plus flag overrides; only
  // flags the user actually passed override the file.
  auto make_config = [&](CLI::App* cmd) {
    RunConfig config;
    if (!config_path.empty()) {
      std::ifstream in(config_path, std::ios::binary);
      if (!in) throw std::runtime_error("cannot open config: " + config_path);
      std::ostringstream text;
      text << in.rdbuf();
      config = dcdist::config_from_json(text.str());
    } else {
      config.stoplist_path = default_stoplist();
    }
    if (cmd->count("--corpus-dir") || cmd->count("--corpus-tsv") || cmd->count("--dataset"))
      config.corpus = corpus_flags.resolve();
    else if (config_path.empty())
      config.corpus = corpus_flags.resolve();  // no config file: corpus flags required
    if (cmd->count("--stoplist")) config.stoplist_path = stoplist_path;
    if (cmd->count("--no-stopwords")) config.use_stopwords = false;
    if (cmd->count("--no-stemming")) config.use_stemming = false;
    if (cmd->count("--transform"))
      config.transform = dcdist::transform_from_string(transform_name);
    if (cmd->count("--gfs")) config.gfs = dcdist::gfs_from_string(gfs_name);
    if (cmd->count("--budget")) config.budget = dcdist::BudgetSpec::parse(budget_text);
    if (cmd->count("--classifier"))
      config.classifier = dcdist::ClassifierSpec::parse(classifier_text);
    if (cmd->count("--folds")) config.n_folds = n_folds;
    if (cmd->count("--seed")) config.seed = seed;
    if (cmd->count("--no-stratify")) config.stratify = false;
    if (cmd->count("--min-df")) config.min_df = min_df;
    if (flag_count(cmd, "--out-dir")) config.out_dir = out_dir;
    return config;
  };

  CLI::App* eval = app.add_subcommand("eval", "cross-validated experiment from a config "
                                              "file and/or flags");
  eval->add_option("--config", config_path, "JSON run configuration");
  add_eval_flags(eval);
  eval->add_option("--out-dir", out_dir, "directory for the report and fold artifacts");
  eval->callback([&] {
    RunConfig config = make_config(eval);
    dcdist::EvalReport report = dcdist::run_experiment(config);
    report.invocation = invocation;
    if (!config.out_dir.empty()) {
      std::ofstream json_out(fs::path(config.out_dir) / "report.json", std::ios::binary);
      json_out << dcdist::report_to_json(report);  // rewrite with invocation echo
    }
    std::cout << dcdist::format_report_table(report);
  });

  CLI::App* bench = app.add_subcommand("bench", "one-line benchmark row");
  bench->add_option("--config", config_path, "JSON run configuration");
  add_eval_flags(bench);
  bench->callback([&] {
    RunConfig config = make_config(bench);
    dcdist::EvalReport report = dcdist::run_experiment(config);
    report.invocation = invocation;
    std::cout << dcdist::format_report_table(report);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
