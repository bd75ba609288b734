// Vocabulary fitting and sparse TF-IDF matrices.
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dcdist/textprep.hpp"

namespace dcdist {

// Fitted on training documents only; test documents are projected onto it
// and out-of-vocabulary terms dropped.
struct Vocabulary {
  std::unordered_map<std::string, std::size_t> term_to_index;
  std::vector<std::string> terms;      // column -> term, first-appearance order
  std::vector<std::size_t> doc_freq;   // column -> training document frequency
  std::size_t n_train_docs = 0;

  std::size_t size() const { return terms.size(); }
};

struct SparseVector {
  // (column, weight) with strictly increasing columns; zero weights are
  // never stored.
  std::vector<std::pair<std::size_t, double>> entries;
};

struct CorpusMatrix {
  std::vector<SparseVector> rows;
  std::vector<std::size_t> labels;  // class index per row
  std::size_t dim = 0;
};

// One column per distinct training term. doc_freq counts documents, not
// occurrences. min_df > 1 drops rarer terms (column order is preserved).
// Errors if every document is empty after preprocessing.
Vocabulary fit_vocabulary(std::span<const TokenizedDoc> docs, std::size_t min_df = 1);

// w = count(term, doc) * ln(N / df(term)) for in-vocabulary terms; terms in
// every training document get idf 0 and are therefore not stored.
CorpusMatrix transform(std::span<const TokenizedDoc> docs, const Vocabulary& vocab,
                       std::span<const std::size_t> labels);

// svmlight-style serialization: "<label> <col>:<weight> ..." with weights at
// 17 significant digits so that load followed by save is byte-identical.
std::string format_matrix(const CorpusMatrix& matrix);
void save_matrix(const CorpusMatrix& matrix, const std::string& path);
CorpusMatrix load_matrix(const std::string& path, std::size_t dim = 0);

// Sidecar vocabulary file: "<term> TAB <col> TAB <df>" plus a first line
// carrying the training document count.
void save_vocabulary(const Vocabulary& vocab, const std::string& path);
Vocabulary load_vocabulary(const std::string& path);

}  // namespace dcdist
