#include "synir/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "synir/rng.hpp"

namespace synir {

namespace {

std::string padded(const char* prefix, std::int64_t value, int width) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%0*lld", prefix, std::min(width, 20),
                static_cast<long long>(value));
  return buf;
}

int id_width(std::int64_t n) {
  int w = 1;
  for (std::int64_t v = n - 1; v >= 10; v /= 10) ++w;
  return std::max(w, 3);
}

}  // namespace

// Lemma layout. Member m of every synset comes from band m, a pool of
// synset_count / polysemy(m) lemmas private to that member slot. Each
// band chops the synset ids into blocks of band-size consecutive ids,
// and inside each block the band's lemmas are assigned by a seeded
// permutation, so each lemma lands exactly once per block (polysemy(m)
// synsets in all) at a position unrelated to its co-members. When the
// pool stride equals the pool size, a pool sits inside a single block
// of every band and a lemma occurs in at most one pool synset per
// document. The last band is the rare synonyms: documents never pick
// them, only query swaps do, and their own polysemy is set separately
// so query-side ambiguity can be dialed without touching the text.
// Synsets beyond the last pool exist in the lexicon alone, as further
// senses of the same lemmas, so sense inventories can grow without
// adding text.
SyntheticData generate_synthetic_collection(std::int64_t n_docs,
                                            std::int64_t doc_len,
                                            const SynonymyParams& params,
                                            std::uint64_t seed) {
  const std::int64_t S = params.synset_count;
  const std::int64_t spp = params.senses_per_synset;
  const std::int64_t pool_size = params.synsets_per_doc;
  const std::int64_t stride = params.pool_stride;
  const double swap_rate = params.query_synonym_swap_rate;

  if (n_docs <= 0 || doc_len <= 0 || S <= 0 || spp <= 0 ||
      params.polysemy <= 0 || params.swap_polysemy <= 0 || pool_size <= 0 ||
      stride <= 0) {
    throw std::invalid_argument("infeasible parameters: sizes must be positive");
  }
  if (!(swap_rate >= 0.0 && swap_rate <= 1.0)) {
    throw std::invalid_argument("infeasible parameters: swap rate outside [0,1]");
  }
  if (spp < 2 && swap_rate > 0.0) {
    throw std::invalid_argument(
        "infeasible parameters: synonym swaps need at least 2 lemmas per synset");
  }
  if (stride > pool_size) {
    throw std::invalid_argument(
        "infeasible parameters: pool_stride must not exceed synsets_per_doc");
  }
  if ((n_docs - 1) * stride + pool_size > S) {
    throw std::invalid_argument(
        "infeasible parameters: document pools exceed synset_count");
  }
  // Bands 0..spp-2 hold the common vocabulary, band spp-1 the rare
  // synonyms (with a single band everything is common vocabulary).
  auto poly_of = [&](std::int64_t m) {
    return spp >= 2 && m == spp - 1 ? params.swap_polysemy : params.polysemy;
  };
  std::vector<std::int64_t> band_size(static_cast<std::size_t>(spp));
  std::vector<std::int64_t> band_base(static_cast<std::size_t>(spp));
  std::int64_t n_lemmas = 0;
  for (std::int64_t m = 0; m < spp; ++m) {
    const std::int64_t poly = poly_of(m);
    if (poly > 99) {
      throw std::invalid_argument(
          "infeasible parameters: sense keys hold at most 99 senses per lemma");
    }
    if (S % poly != 0) {
      throw std::invalid_argument(
          "infeasible parameters: each polysemy must divide synset_count");
    }
    if ((S / poly) % pool_size != 0) {
      throw std::invalid_argument(
          "infeasible parameters: synset_count/polysemy must be a multiple of "
          "synsets_per_doc");
    }
    band_size[static_cast<std::size_t>(m)] = S / poly;
    band_base[static_cast<std::size_t>(m)] = n_lemmas;
    n_lemmas += S / poly;
  }

  const int lemma_w = id_width(n_lemmas);
  const int doc_w = id_width(n_docs);

  // lemma_of[s * spp + m] = lemma index of member m of synset s.
  std::vector<std::int64_t> lemma_of(static_cast<std::size_t>(S * spp));
  for (std::int64_t m = 0; m < spp; ++m) {
    const std::int64_t block = band_size[static_cast<std::size_t>(m)];
    std::vector<std::int64_t> perm(static_cast<std::size_t>(block));
    for (std::int64_t q = 0; q < poly_of(m); ++q) {
      for (std::int64_t r = 0; r < block; ++r) perm[r] = r;
      SplitMix64 prng = substream(
          seed, "lex:" + std::to_string(m) + ":" + std::to_string(q));
      for (std::int64_t r = block - 1; r > 0; --r) {
        std::int64_t j = static_cast<std::int64_t>(
            prng.bounded(static_cast<std::uint64_t>(r) + 1));
        std::swap(perm[r], perm[j]);
      }
      for (std::int64_t r = 0; r < block; ++r) {
        lemma_of[(q * block + r) * spp + m] =
            band_base[static_cast<std::size_t>(m)] + perm[r];
      }
    }
  }

  auto lemma_name = [&](std::int64_t l) { return padded("w", l, lemma_w); };
  auto synset_name = [&](std::int64_t s) { return padded("n", s, 8); };
  // One synset per band block, in block order: the sense number is just
  // the block index.
  auto sense_key_of = [&](std::int64_t s, std::int64_t m) {
    char tail[40];
    std::snprintf(tail, sizeof tail, "%%1:10:%02lld::",
                  static_cast<long long>(
                      s / band_size[static_cast<std::size_t>(m)] + 1));
    return lemma_name(lemma_of[s * spp + m]) + tail;
  };
  auto token_for = [&](std::int64_t s, std::int64_t m) {
    std::string name = lemma_name(lemma_of[s * spp + m]);
    return Token{name, name, Pos::Noun, sense_key_of(s, m), synset_name(s)};
  };

  SyntheticData data;
  for (std::int64_t s = 0; s < S; ++s) {
    for (std::int64_t m = 0; m < spp; ++m) {
      data.lexicon.add(lemma_name(lemma_of[s * spp + m]), Pos::Noun,
                       sense_key_of(s, m), synset_name(s));
    }
  }

  // Queries ask for distinct topics: one token per sampled pool synset,
  // so no term dominates the query vector.
  const std::int64_t query_len = std::min(
      pool_size, std::clamp<std::int64_t>(doc_len / 5, 4, 50));
  const auto n_swaps = static_cast<std::int64_t>(
      std::llround(swap_rate * static_cast<double>(query_len)));

  for (std::int64_t d = 0; d < n_docs; ++d) {
    const std::int64_t pool_start = d * stride;
    const std::string doc_id = padded("d", d, doc_w);

    SplitMix64 rng = substream(seed, "gen:D:" + doc_id);
    // One common lemma per pool synset. The rare band stays out of the
    // text, which is what keeps a swapped-in synonym a fresh surface:
    // rare lemmas occur in no document at all.
    const std::int64_t head = spp >= 2 ? spp - 1 : 1;
    std::vector<std::int64_t> member(static_cast<std::size_t>(pool_size));
    for (std::int64_t i = 0; i < pool_size; ++i) {
      member[static_cast<std::size_t>(i)] =
          static_cast<std::int64_t>(rng.bounded(head));
    }

    Document doc;
    doc.id = doc_id;
    doc.tokens.reserve(static_cast<std::size_t>(doc_len));
    for (std::int64_t j = 0; j < doc_len; ++j) {
      // First pass the whole pool in order, then draw freely: every
      // topic synset is present at least once.
      std::int64_t i = j < pool_size
                           ? j
                           : static_cast<std::int64_t>(rng.bounded(pool_size));
      doc.tokens.push_back(
          token_for(pool_start + i, member[static_cast<std::size_t>(i)]));
    }

    // One token per sampled topic, surfaced with the document's lemma
    // except for the swapped ones, which use the synset's rare synonym.
    // The synset survives a swap, the surface and sense key do not.
    SplitMix64 qrng = substream(seed, "gen:Q:" + doc_id);
    std::vector<std::size_t> picked = sample_indices(
        static_cast<std::size_t>(pool_size),
        static_cast<std::size_t>(query_len), qrng);
    std::sort(picked.begin(), picked.end());
    std::vector<std::size_t> swapped = sample_indices(
        static_cast<std::size_t>(query_len), static_cast<std::size_t>(n_swaps),
        qrng);

    Query query;
    query.id = padded("q", d, doc_w);
    query.relevant_doc_id = doc_id;
    std::vector<bool> swap_at(static_cast<std::size_t>(query_len), false);
    for (std::size_t at : swapped) swap_at[at] = true;
    for (std::size_t at = 0; at < picked.size(); ++at) {
      std::size_t i = picked[at];
      std::int64_t m = swap_at[at] ? spp - 1 : member[i];
      query.tokens.push_back(
          token_for(pool_start + static_cast<std::int64_t>(i), m));
    }

    data.collection.documents.push_back(std::move(doc));
    data.collection.queries.push_back(std::move(query));
  }

  return data;
}

}  // namespace synir
