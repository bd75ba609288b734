#include "dcdist/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "dcdist/rng.hpp"

namespace fs = std::filesystem;

namespace dcdist {

std::size_t LabeledCorpus::class_index(const std::string& label) const {
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i] == label) return i;
  throw std::runtime_error("unknown class label: " + label);
}

std::vector<std::size_t> LabeledCorpus::label_indices() const {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < classes.size(); ++i) index.emplace(classes[i], i);
  std::vector<std::size_t> out;
  out.reserve(docs.size());
  for (const Document& doc : docs) {
    auto it = index.find(doc.label);
    if (it == index.end()) throw std::runtime_error("unknown class label: " + doc.label);
    out.push_back(it->second);
  }
  return out;
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw std::runtime_error("cannot read file: " + path.string());
  return buffer.str();
}

void check_corpus(const LabeledCorpus& corpus, const std::string& source) {
  std::unordered_set<std::string> seen;
  for (const Document& doc : corpus.docs) {
    if (!seen.insert(doc.id).second)
      throw std::runtime_error("duplicate document id '" + doc.id + "' in " + source);
    if (doc.label.empty())
      throw std::runtime_error("empty label for document '" + doc.id + "' in " + source);
  }
}

}  // namespace

LabeledCorpus load_directory_corpus(const std::string& root_path) {
  const fs::path root(root_path);
  if (!fs::exists(root) || !fs::is_directory(root))
    throw std::runtime_error("corpus root is not a directory: " + root_path);

  std::vector<fs::path> class_dirs;
  for (const auto& entry : fs::directory_iterator(root))
    if (entry.is_directory()) class_dirs.push_back(entry.path());
  std::sort(class_dirs.begin(), class_dirs.end());

  LabeledCorpus corpus;
  for (const fs::path& dir : class_dirs) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) continue;

    const std::string label = dir.filename().string();
    corpus.classes.push_back(label);
    for (const fs::path& file : files) {
      Document doc;
      doc.id = label + "/" + file.filename().string();
      doc.text = read_file(file);
      doc.label = label;
      corpus.docs.push_back(std::move(doc));
    }
  }
  if (corpus.docs.empty())
    throw std::runtime_error("no class directories with documents under: " + root_path);
  check_corpus(corpus, root_path);
  return corpus;
}

LabeledCorpus load_tsv_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);

  LabeledCorpus corpus;
  std::unordered_set<std::string> seen_classes;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;  // blank

    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                               ": expected <label>TAB<text>");
    Document doc;
    doc.label = line.substr(0, tab);
    doc.text = line.substr(tab + 1);
    doc.id = "line" + std::to_string(line_no);
    if (doc.label.empty())
      throw std::runtime_error(path + ": line " + std::to_string(line_no) + ": empty label");
    if (seen_classes.insert(doc.label).second) corpus.classes.push_back(doc.label);
    corpus.docs.push_back(std::move(doc));
  }
  if (corpus.docs.empty()) throw std::runtime_error("no documents in corpus file: " + path);
  check_corpus(corpus, path);
  return corpus;
}

namespace {

std::vector<FoldSplit> folds_from_assignment(const LabeledCorpus& corpus,
                                             const std::vector<int>& fold_of_doc,
                                             int n_folds) {
  std::vector<FoldSplit> folds(static_cast<std::size_t>(n_folds));
  for (int f = 0; f < n_folds; ++f) folds[static_cast<std::size_t>(f)].fold_index = f;
  for (std::size_t i = 0; i < corpus.docs.size(); ++i) {
    const std::string& id = corpus.docs[i].id;
    for (int f = 0; f < n_folds; ++f) {
      auto& fold = folds[static_cast<std::size_t>(f)];
      if (fold_of_doc[i] == f)
        fold.test_ids.push_back(id);
      else
        fold.train_ids.push_back(id);
    }
  }
  return folds;
}

}  // namespace

std::vector<FoldSplit> stratified_kfold(const LabeledCorpus& corpus, int n_folds,
                                        std::uint64_t seed) {
  if (n_folds < 2) throw std::runtime_error("n_folds must be >= 2");

  const std::vector<std::size_t> labels = corpus.label_indices();
  std::vector<std::vector<std::size_t>> by_class(corpus.n_classes());
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);

  for (std::size_t c = 0; c < by_class.size(); ++c)
    if (by_class[c].size() < static_cast<std::size_t>(n_folds))
      throw std::runtime_error("class '" + corpus.classes[c] + "' has " +
                               std::to_string(by_class[c].size()) + " documents, fewer than " +
                               std::to_string(n_folds) + " folds");

  // Shuffle within each class, then deal round-robin with a fold counter that
  // runs on across classes. Per class the test counts differ by at most one,
  // and overall fold sizes stay within one of each other as well.
  SplitMix64 rng(seed);
  std::vector<int> fold_of_doc(corpus.docs.size(), 0);
  int next_fold = 0;
  for (auto& members : by_class) {
    shuffle(members, rng);
    for (std::size_t doc : members) {
      fold_of_doc[doc] = next_fold;
      next_fold = (next_fold + 1) % n_folds;
    }
  }
  return folds_from_assignment(corpus, fold_of_doc, n_folds);
}

std::vector<FoldSplit> plain_kfold(const LabeledCorpus& corpus, int n_folds,
                                   std::uint64_t seed) {
  if (n_folds < 2) throw std::runtime_error("n_folds must be >= 2");
  if (corpus.docs.size() < static_cast<std::size_t>(n_folds))
    throw std::runtime_error("corpus smaller than the number of folds");

  SplitMix64 rng(seed);
  std::vector<std::size_t> order(corpus.docs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  shuffle(order, rng);

  std::vector<int> fold_of_doc(corpus.docs.size(), 0);
  for (std::size_t pos = 0; pos < order.size(); ++pos)
    fold_of_doc[order[pos]] = static_cast<int>(pos % static_cast<std::size_t>(n_folds));

  // Without stratification a label can end up entirely inside one test fold.
  const std::vector<std::size_t> labels = corpus.label_indices();
  for (int f = 0; f < n_folds; ++f) {
    std::vector<bool> in_train(corpus.n_classes(), false);
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (fold_of_doc[i] != f) in_train[labels[i]] = true;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (fold_of_doc[i] == f && !in_train[labels[i]])
        throw std::runtime_error("fold " + std::to_string(f) + ": class '" +
                                 corpus.docs[i].label +
                                 "' appears in the test portion but not in training");
  }
  return folds_from_assignment(corpus, fold_of_doc, n_folds);
}

std::string format_fold_assignments(const std::vector<FoldSplit>& folds) {
  std::string out;
  for (const FoldSplit& fold : folds)
    for (const std::string& id : fold.test_ids)
      out += id + "\t" + std::to_string(fold.fold_index) + "\n";
  return out;
}

void save_fold_assignments(const std::vector<FoldSplit>& folds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write fold file: " + path);
  out << format_fold_assignments(folds);
}

}  // namespace dcdist
