#include "dcdist/textprep.hpp"

#include <fstream>
#include <stdexcept>
#include <unordered_set>

namespace dcdist {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (const char ch : text) {
    if (ch >= 'a' && ch <= 'z') {
      current.push_back(ch);
    } else if (ch >= 'A' && ch <= 'Z') {
      current.push_back(static_cast<char>(ch - 'A' + 'a'));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

namespace {

std::string ascii_lower(std::string s) {
  for (char& ch : s)
    if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
  return s;
}

}  // namespace

Stoplist::Stoplist(const std::vector<std::string>& terms) {
  for (const std::string& term : terms)
    if (!term.empty()) terms_.insert(ascii_lower(term));
}

Stoplist Stoplist::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open stoplist: " + path);
  Stoplist list;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t begin = line.find_first_not_of(" \t");
    if (begin == std::string::npos || line[begin] == '#') continue;
    const std::size_t end = line.find_last_not_of(" \t");
    list.terms_.insert(ascii_lower(line.substr(begin, end - begin + 1)));
  }
  return list;
}

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const Stoplist& stoplist) {
  std::vector<std::string> kept;
  kept.reserve(tokens.size());
  for (const std::string& token : tokens)
    if (!stoplist.contains(token)) kept.push_back(token);
  return kept;
}

TokenizedDoc preprocess_document(const Document& doc, const Stoplist& stoplist,
                                 const PrepOptions& options) {
  TokenizedDoc out;
  out.id = doc.id;
  out.tokens = tokenize(doc.text);
  if (options.remove_stopwords) out.tokens = remove_stopwords(out.tokens, stoplist);
  if (options.stem)
    for (std::string& token : out.tokens) token = porter_stem(token);
  return out;
}

std::vector<TokenizedDoc> preprocess_corpus(const LabeledCorpus& corpus,
                                            const Stoplist& stoplist,
                                            const PrepOptions& options) {
  std::vector<TokenizedDoc> out;
  out.reserve(corpus.docs.size());
  for (const Document& doc : corpus.docs)
    out.push_back(preprocess_document(doc, stoplist, options));
  return out;
}

std::size_t raw_vocabulary_size(const LabeledCorpus& corpus) {
  std::unordered_set<std::string> distinct;
  for (const Document& doc : corpus.docs)
    for (std::string& token : tokenize(doc.text)) distinct.insert(std::move(token));
  return distinct.size();
}

}  // namespace dcdist
