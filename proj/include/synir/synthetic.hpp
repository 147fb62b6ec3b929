#pragma once

#include <cstdint>
#include <utility>

#include "synir/corpus.hpp"
#include "synir/lexicon.hpp"

namespace synir {

// Shape of the synthetic synonymy structure. Defaults are the frozen
// fixture used by the regression gate; change them there and here
// together or the gate's expectations move.
struct SynonymyParams {
  std::int64_t synset_count = 2400;
  std::int64_t senses_per_synset = 3;   // lemmas per synset
  std::int64_t polysemy = 50;           // synsets per common lemma (exact)
  std::int64_t swap_polysemy = 75;      // synsets per query-only lemma
  std::int64_t synsets_per_doc = 16;    // topic pool size
  std::int64_t pool_stride = 10;        // pool offset between documents
  double query_synonym_swap_rate = 0.5;
};

struct SyntheticData {
  Collection collection;
  Lexicon lexicon;
};

// Builds a collection with a known synonymy structure:
//   - a lexicon of synset_count synthetic noun synsets, each holding
//     senses_per_synset distinct lemmas; lemmas are reused across
//     many synsets, so word forms are ambiguous while synsets are not.
//     The last lemma of every synset is a rare synonym that documents
//     never use (polysemy `swap_polysemy`); the others are the common
//     vocabulary (polysemy `polysemy`);
//   - document d's topic pool is the synsets_per_doc synsets starting
//     at d * pool_stride. A stride equal to the pool size makes topics
//     private to one document; a smaller stride makes neighboring
//     documents share topics, which gives the ranking real competition.
//     Synsets beyond the last pool live only in the lexicon;
//   - each document is doc_len tokens drawn from its pool, one fixed
//     common lemma per (document, synset);
//   - one query per document: one token for each of a sample of its
//     topic synsets, with exactly round(swap_rate * len) of them
//     rewritten to a different lemma of the same synset. The synset
//     survives the swap, the surface and sense key do not, and the
//     pool partition plus a lemma-reuse spacing argument guarantee the
//     swapped-in surface occurs nowhere in the source document.
// Deterministic under seed. Throws std::invalid_argument on infeasible
// parameters (non-positive sizes, either polysemy > 99, swap_rate
// outside [0,1], senses_per_synset < 2 with swap_rate > 0, or
// divisibility violations: each polysemy must divide synset_count,
// the per-document pool must divide the resulting lemma blocks, and
// the pools must fit inside synset_count).
SyntheticData generate_synthetic_collection(std::int64_t n_docs,
                                            std::int64_t doc_len,
                                            const SynonymyParams& params,
                                            std::uint64_t seed);

}  // namespace synir
