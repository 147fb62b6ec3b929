#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "synir/indexing.hpp"

namespace synir {

// Term weighting applied symmetrically to documents and queries.
//   NNN  raw term frequency, no idf, no normalization
//   ATC  augmented tf (0.5 + 0.5 * tf / max_tf), idf ln(N / df),
//        cosine (unit length) normalization
enum class WeightingScheme { Nnn, Atc };

std::optional<WeightingScheme> weighting_scheme_from_string(std::string_view s);
std::string to_string(WeightingScheme scheme);

using WeightedVector = std::map<std::string, double>;

// Weights one raw term vector against the index's collection statistics.
// Terms absent from the index get weight 0 under ATC (df = 0 has no
// defined idf and such terms cannot match anything). A vector whose
// weights are all zero normalizes to all zeros rather than dividing
// by a zero norm. Throws std::invalid_argument on an empty vector.
WeightedVector weight_vector(const TermVector& raw, WeightingScheme scheme,
                             const InvertedIndex& index);

struct RankedItem {
  std::string doc_id;
  double score;

  bool operator==(const RankedItem&) const = default;
};

struct RankedList {
  std::string query_id;
  std::vector<RankedItem> items;
};

// Scores queries against an index by accumulating postings, so only
// documents sharing a term with the query are touched. Every document
// still appears in the ranking: ties and zero scores order by doc_id
// ascending, which keeps rankings deterministic.
class Scorer {
 public:
  Scorer(const InvertedIndex& index, WeightingScheme scheme);

  // Full ranking, best first. Throws EmptyQueryError when the query
  // projects to an empty term vector.
  std::vector<RankedItem> rank(const TermVector& query) const;

  const InvertedIndex& index() const { return index_; }
  WeightingScheme scheme() const { return scheme_; }

 private:
  double doc_weight(const std::string& doc_id, const std::string& term,
                    std::int64_t tf) const;

  const InvertedIndex& index_;
  WeightingScheme scheme_;
  // ATC: per-document idf-weighted norms, fixed at construction.
  std::map<std::string, double> doc_norm_;
};

// One-shot convenience around Scorer.
std::vector<RankedItem> score_query(const TermVector& query,
                                    const InvertedIndex& index,
                                    WeightingScheme scheme);

}  // namespace synir
