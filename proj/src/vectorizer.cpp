#include "dcdist/vectorizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dcdist {

Vocabulary fit_vocabulary(std::span<const TokenizedDoc> docs, std::size_t min_df) {
  Vocabulary vocab;
  vocab.n_train_docs = docs.size();

  // last_doc[j] tracks the most recent document that touched column j so a
  // repeated term counts once per document.
  std::vector<std::size_t> last_doc;
  bool any_token = false;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (const std::string& token : docs[d].tokens) {
      any_token = true;
      auto [it, inserted] = vocab.term_to_index.try_emplace(token, vocab.terms.size());
      if (inserted) {
        vocab.terms.push_back(token);
        vocab.doc_freq.push_back(0);
        last_doc.push_back(docs.size());  // sentinel: not seen yet
      }
      const std::size_t j = it->second;
      if (last_doc[j] != d) {
        last_doc[j] = d;
        vocab.doc_freq[j]++;
      }
    }
  }
  if (!any_token)
    throw std::runtime_error("cannot fit a vocabulary: all documents are empty");

  if (min_df > 1) {
    Vocabulary pruned;
    pruned.n_train_docs = vocab.n_train_docs;
    for (std::size_t j = 0; j < vocab.size(); ++j) {
      if (vocab.doc_freq[j] < min_df) continue;
      pruned.term_to_index.emplace(vocab.terms[j], pruned.terms.size());
      pruned.terms.push_back(vocab.terms[j]);
      pruned.doc_freq.push_back(vocab.doc_freq[j]);
    }
    if (pruned.terms.empty())
      throw std::runtime_error("min_df=" + std::to_string(min_df) +
                               " removed every vocabulary term");
    return pruned;
  }
  return vocab;
}

CorpusMatrix transform(std::span<const TokenizedDoc> docs, const Vocabulary& vocab,
                       std::span<const std::size_t> labels) {
  if (!labels.empty() && labels.size() != docs.size())
    throw std::runtime_error("transform: labels do not align with documents");

  CorpusMatrix matrix;
  matrix.dim = vocab.size();
  matrix.rows.resize(docs.size());
  matrix.labels.assign(labels.begin(), labels.end());
  if (matrix.labels.empty()) matrix.labels.resize(docs.size(), 0);

  const double n_train = static_cast<double>(vocab.n_train_docs);
  std::vector<std::pair<std::size_t, std::size_t>> counts;  // (column, count)
  for (std::size_t d = 0; d < docs.size(); ++d) {
    counts.clear();
    for (const std::string& token : docs[d].tokens) {
      auto it = vocab.term_to_index.find(token);
      if (it == vocab.term_to_index.end()) continue;  // out of vocabulary
      counts.emplace_back(it->second, 1);
    }
    std::sort(counts.begin(), counts.end());
    SparseVector& row = matrix.rows[d];
    for (std::size_t i = 0; i < counts.size();) {
      std::size_t run = i + 1;
      while (run < counts.size() && counts[run].first == counts[i].first) ++run;
      const std::size_t j = counts[i].first;
      const double idf = std::log(n_train / static_cast<double>(vocab.doc_freq[j]));
      const double w = static_cast<double>(run - i) * idf;
      if (w > 0.0) row.entries.emplace_back(j, w);
      i = run;
    }
  }
  return matrix;
}

std::string format_matrix(const CorpusMatrix& matrix) {
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < matrix.rows.size(); ++i) {
    out += std::to_string(matrix.labels[i]);
    for (const auto& [j, w] : matrix.rows[i].entries) {
      std::snprintf(buf, sizeof(buf), " %zu:%.17g", j, w);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void save_matrix(const CorpusMatrix& matrix, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write matrix file: " + path);
  out << format_matrix(matrix);
}

CorpusMatrix load_matrix(const std::string& path, std::size_t dim) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open matrix file: " + path);

  CorpusMatrix matrix;
  std::size_t max_col = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::size_t label = 0;
    if (!(fields >> label))
      throw std::runtime_error(path + ": line " + std::to_string(line_no) + ": bad label");
    SparseVector row;
    std::string entry;
    while (fields >> entry) {
      const std::size_t colon = entry.find(':');
      if (colon == std::string::npos)
        throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                                 ": bad entry '" + entry + "'");
      const std::size_t j = std::stoull(entry.substr(0, colon));
      const double w = std::stod(entry.substr(colon + 1));
      row.entries.emplace_back(j, w);
      max_col = std::max(max_col, j + 1);
    }
    matrix.labels.push_back(label);
    matrix.rows.push_back(std::move(row));
  }
  matrix.dim = dim > 0 ? dim : max_col;
  return matrix;
}

void save_vocabulary(const Vocabulary& vocab, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write vocabulary file: " + path);
  out << "#train_docs\t" << vocab.n_train_docs << "\n";
  for (std::size_t j = 0; j < vocab.size(); ++j)
    out << vocab.terms[j] << "\t" << j << "\t" << vocab.doc_freq[j] << "\n";
}

Vocabulary load_vocabulary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open vocabulary file: " + path);
  Vocabulary vocab;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string term, col, df;
    if (!std::getline(fields, term, '\t') || !std::getline(fields, col, '\t'))
      throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                               ": expected <term>TAB<col>TAB<df>");
    if (term == "#train_docs") {
      vocab.n_train_docs = std::stoull(col);
      continue;
    }
    if (!std::getline(fields, df))
      throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                               ": expected <term>TAB<col>TAB<df>");
    const std::size_t j = std::stoull(col);
    if (j != vocab.terms.size())
      throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                               ": columns out of order");
    vocab.term_to_index.emplace(term, j);
    vocab.terms.push_back(term);
    vocab.doc_freq.push_back(std::stoull(df));
  }
  return vocab;
}

}  // namespace dcdist
