#include "dcdist/synthetic.hpp"

#include <stdexcept>
#include <unordered_set>

#include "dcdist/rng.hpp"

namespace dcdist {

namespace {

// Pronounceable lowercase word: prefix + alternating consonant/vowel pairs.
std::string make_word(const std::string& prefix, SplitMix64& rng) {
  static const char consonants[] = "bcdfghjklmnpqrstvwz";
  static const char vowels[] = "aeiou";
  std::string word = prefix;
  for (int i = 0; i < 3; ++i) {
    word += consonants[rng.below(sizeof(consonants) - 1)];
    word += vowels[rng.below(sizeof(vowels) - 1)];
  }
  return word;
}

std::vector<std::string> make_pool(const std::string& prefix, std::size_t size,
                                   SplitMix64& rng) {
  std::vector<std::string> pool;
  std::unordered_set<std::string> seen;
  pool.reserve(size);
  std::size_t length_boost = 0;
  std::size_t stale_draws = 0;
  while (pool.size() < size) {
    std::string word = make_word(prefix, rng);
    for (std::size_t i = 0; i < length_boost; ++i) {
      word += static_cast<char>('b' + rng.below(20));
      word += static_cast<char>('a' + rng.below(5));
    }
    if (seen.insert(word).second) {
      pool.push_back(std::move(word));
      stale_draws = 0;
    } else if (++stale_draws > 50) {
      length_boost++;  // pool larger than the 3-pair word space: grow words
      stale_draws = 0;
    }
  }
  return pool;
}

}  // namespace

LabeledCorpus make_synthetic_corpus(const SyntheticSpec& spec) {
  if (spec.n_classes == 0 || spec.n_docs < spec.n_classes)
    throw std::runtime_error("synthetic corpus needs at least one document per class");
  if (spec.noise_fraction < 0.0 || spec.noise_fraction > 1.0)
    throw std::runtime_error("noise_fraction must be within [0, 1]");

  SplitMix64 rng(spec.seed);
  static const char class_letters[] = "bcdfghjklmnprstvwz";
  constexpr std::size_t n_letters = sizeof(class_letters) - 1;
  if (spec.n_classes > n_letters * n_letters)
    throw std::runtime_error("too many synthetic classes");
  std::vector<std::vector<std::string>> class_pools;
  class_pools.reserve(spec.n_classes);
  for (std::size_t c = 0; c < spec.n_classes; ++c) {
    // distinct prefix per class keeps the pools disjoint under stemming
    std::string prefix = "q";
    prefix += class_letters[c / n_letters];
    prefix += class_letters[c % n_letters];
    class_pools.push_back(make_pool(prefix, spec.words_per_class, rng));
  }
  const std::vector<std::string> noise_pool = make_pool("zz", spec.shared_words, rng);

  const auto n_noise_tokens =
      static_cast<std::size_t>(spec.noise_fraction * static_cast<double>(spec.tokens_per_doc));
  if (spec.words_per_class == 0) throw std::runtime_error("empty class keyword pool");
  if (n_noise_tokens > 0 && spec.shared_words == 0)
    throw std::runtime_error("noise_fraction > 0 needs a shared pool");

  LabeledCorpus corpus;
  for (std::size_t c = 0; c < spec.n_classes; ++c)
    corpus.classes.push_back("class" + std::to_string(c));
  for (std::size_t d = 0; d < spec.n_docs; ++d) {
    const std::size_t c = d % spec.n_classes;
    Document doc;
    doc.id = "synth" + std::to_string(d);
    doc.label = corpus.classes[c];
    for (std::size_t t = 0; t < spec.tokens_per_doc; ++t) {
      const auto& pool = t < n_noise_tokens ? noise_pool : class_pools[c];
      if (t > 0) doc.text += ' ';
      doc.text += pool[rng.below(pool.size())];
    }
    corpus.docs.push_back(std::move(doc));
  }
  return corpus;
}

}  // namespace dcdist
