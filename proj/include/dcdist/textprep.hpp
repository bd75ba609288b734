// Tokenization, stopword removal and Porter stemming.
#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "dcdist/corpus.hpp"

namespace dcdist {

struct TokenizedDoc {
  std::string id;
  std::vector<std::string> tokens;
};

// Lowercases and splits on every non-alphabetic character, so tokens are
// pure a-z runs and numeric fragments disappear. Empty text gives an empty
// list.
std::vector<std::string> tokenize(std::string_view text);

class Stoplist {
 public:
  Stoplist() = default;
  explicit Stoplist(const std::vector<std::string>& terms);

  // One lowercase term per line; lines starting with '#' are comments.
  static Stoplist from_file(const std::string& path);

  bool contains(const std::string& term) const { return terms_.count(term) != 0; }
  std::size_t size() const { return terms_.size(); }

 private:
  std::unordered_set<std::string> terms_;
};

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const Stoplist& stoplist);

// Porter (1980) suffix stripping, matching the reference implementation's
// behaviour (including its two documented step-2 amendments: bli->ble and
// logi->log). Expects a lowercase alphabetic token.
std::string porter_stem(const std::string& token);

struct PrepOptions {
  bool remove_stopwords = true;
  bool stem = true;
};

// tokenize -> stopword removal -> stemming, in that order.
TokenizedDoc preprocess_document(const Document& doc, const Stoplist& stoplist,
                                 const PrepOptions& options = {});
std::vector<TokenizedDoc> preprocess_corpus(const LabeledCorpus& corpus,
                                            const Stoplist& stoplist,
                                            const PrepOptions& options = {});

// Distinct token count with tokenization only, i.e. before stopword removal
// and stemming. Denominator of the feature-reduction percentage.
std::size_t raw_vocabulary_size(const LabeledCorpus& corpus);

}  // namespace dcdist
