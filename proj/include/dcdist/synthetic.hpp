// Deterministic synthetic corpora: each class draws from its own keyword
// pool, diluted with a shared noise vocabulary. Stands in for corpora that
// cannot be redistributed, and gives the benchmarks a dataset whose classes
// are separable by construction.
#pragma once

#include <cstdint>

#include "dcdist/corpus.hpp"

namespace dcdist {

struct SyntheticSpec {
  std::size_t n_classes = 3;
  std::size_t n_docs = 300;
  std::size_t words_per_class = 30;   // size of each class keyword pool
  std::size_t shared_words = 60;      // size of the shared noise pool
  std::size_t tokens_per_doc = 40;
  double noise_fraction = 0.5;        // share of tokens drawn from the noise pool
  std::uint64_t seed = 1;
};

// Class pools stay disjoint even after stemming: every word carries a
// class-specific prefix and suffix stripping never touches a prefix.
LabeledCorpus make_synthetic_corpus(const SyntheticSpec& spec);

}  // namespace dcdist
