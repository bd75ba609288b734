// Labeled text corpora: loading from disk and cross-validation splits.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dcdist {

struct Document {
  std::string id;     // unique within a corpus
  std::string text;   // raw text, may be empty
  std::string label;  // class identifier, never empty
};

// Documents plus the distinct labels in first-appearance order.
struct LabeledCorpus {
  std::vector<Document> docs;
  std::vector<std::string> classes;

  std::size_t n_classes() const { return classes.size(); }

  // Index of `label` in classes; throws if the label is unknown.
  std::size_t class_index(const std::string& label) const;

  // Per-document class index, aligned with docs.
  std::vector<std::size_t> label_indices() const;
};

struct FoldSplit {
  int fold_index = 0;
  std::vector<std::string> train_ids;
  std::vector<std::string> test_ids;
};

// One subdirectory per class, one file per document. label = directory name,
// id = "<dir>/<filename>", documents ordered lexicographically.
LabeledCorpus load_directory_corpus(const std::string& root_path);

// One record per non-blank line: <label> TAB <text>. The line number seeds
// the document id.
LabeledCorpus load_tsv_corpus(const std::string& path);

// Per-class folding: every class is spread over the folds so that test
// counts per class differ by at most one. Identical seed, identical splits.
std::vector<FoldSplit> stratified_kfold(const LabeledCorpus& corpus, int n_folds,
                                        std::uint64_t seed);

// Plain shuffled folding without class balancing. Errors if some test fold
// contains a label that is absent from its training portion.
std::vector<FoldSplit> plain_kfold(const LabeledCorpus& corpus, int n_folds,
                                   std::uint64_t seed);

// Two-column audit format: <doc id> TAB <fold index>, one line per document,
// ordered by fold then id order within the fold.
std::string format_fold_assignments(const std::vector<FoldSplit>& folds);
void save_fold_assignments(const std::vector<FoldSplit>& folds, const std::string& path);

}  // namespace dcdist
