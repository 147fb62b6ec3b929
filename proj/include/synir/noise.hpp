#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "synir/corpus.hpp"
#include "synir/lexicon.hpp"

namespace synir {

enum class NoiseScope { Documents, Queries, Both };

std::optional<NoiseScope> noise_scope_from_string(std::string_view s);
std::string to_string(NoiseScope scope);

struct NoiseSpec {
  double error_rate = 0.0;  // fraction of ambiguous tokens to corrupt, [0,1]
  std::uint64_t seed = 0;
  NoiseScope scope = NoiseScope::Documents;
};

struct InjectionStats {
  std::int64_t altered = 0;   // tokens whose annotation was replaced
  std::int64_t eligible = 0;  // tagged tokens with >= 2 candidates, in scope
  std::int64_t tokens = 0;    // all tokens in scope
};

// Replaces the (sense_key, synset_id) of exactly
// round(error_rate * |eligible(unit)|) eligible tokens per document or
// query in scope, each replacement drawn uniformly from that token's
// *other* lexicon candidates. Eligible means tagged with at least two
// candidates for (lemma, pos); everything else is untouched. Each unit
// corrupts under an independent substream of `seed` keyed by its id,
// so output is deterministic and unit order does not matter.
// Throws DataError when a selected token's annotation is not a known
// candidate (validate against the lexicon first) and
// std::invalid_argument when error_rate is outside [0,1].
Collection inject_errors(const Collection& collection, const Lexicon& lexicon,
                         const NoiseSpec& spec,
                         InjectionStats* stats = nullptr);

// Sidecar line describing a corrupted collection, e.g.
//   #NOISE rate=0.2 seed=7 altered=13 eligible=64 scope=documents tokens=421 rng=splitmix64
std::string noise_metadata_line(const NoiseSpec& spec,
                                const InjectionStats& stats);

}  // namespace synir
