#include "synir/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "synir/errors.hpp"

namespace synir {

std::optional<WeightingScheme> weighting_scheme_from_string(
    std::string_view s) {
  if (s == "nnn") return WeightingScheme::Nnn;
  if (s == "atc") return WeightingScheme::Atc;
  return std::nullopt;
}

std::string to_string(WeightingScheme scheme) {
  return scheme == WeightingScheme::Nnn ? "nnn" : "atc";
}

namespace {

// ATC before normalization: (0.5 + 0.5 tf/max_tf) * ln(N/df).
// df = 0 (term unseen by the index) contributes nothing.
double atc_raw_weight(std::int64_t tf, std::int64_t max_tf, std::int64_t df,
                      std::size_t n_docs) {
  if (df <= 0) return 0.0;
  double aug = 0.5 + 0.5 * static_cast<double>(tf) / static_cast<double>(max_tf);
  double idf = std::log(static_cast<double>(n_docs) / static_cast<double>(df));
  return aug * idf;
}

std::int64_t vector_max_tf(const TermVector& raw) {
  std::int64_t mtf = 0;
  for (const auto& [term, tf] : raw) mtf = std::max(mtf, tf);
  return mtf;
}

}  // namespace

WeightedVector weight_vector(const TermVector& raw, WeightingScheme scheme,
                             const InvertedIndex& index) {
  if (raw.empty()) {
    throw std::invalid_argument("cannot weight an empty term vector");
  }
  WeightedVector weighted;
  if (scheme == WeightingScheme::Nnn) {
    for (const auto& [term, tf] : raw) {
      weighted[term] = static_cast<double>(tf);
    }
    return weighted;
  }
  std::int64_t mtf = vector_max_tf(raw);
  double norm_sq = 0.0;
  for (const auto& [term, tf] : raw) {
    double w = atc_raw_weight(tf, mtf, index.df(term), index.doc_count());
    weighted[term] = w;
    norm_sq += w * w;
  }
  if (norm_sq > 0.0) {
    double norm = std::sqrt(norm_sq);
    for (auto& [term, w] : weighted) w /= norm;
  }
  return weighted;
}

Scorer::Scorer(const InvertedIndex& index, WeightingScheme scheme)
    : index_(index), scheme_(scheme) {
  if (scheme_ != WeightingScheme::Atc) return;
  for (const auto& [doc_id, vec] : index_.doc_vectors()) {
    std::int64_t mtf = index_.max_tf(doc_id);
    double norm_sq = 0.0;
    for (const auto& [term, tf] : vec) {
      double w = atc_raw_weight(tf, mtf, index_.df(term), index_.doc_count());
      norm_sq += w * w;
    }
    doc_norm_[doc_id] = norm_sq > 0.0 ? std::sqrt(norm_sq) : 0.0;
  }
}

double Scorer::doc_weight(const std::string& doc_id, const std::string& term,
                          std::int64_t tf) const {
  if (scheme_ == WeightingScheme::Nnn) return static_cast<double>(tf);
  double norm = doc_norm_.at(doc_id);
  if (norm <= 0.0) return 0.0;
  double w =
      atc_raw_weight(tf, index_.max_tf(doc_id), index_.df(term),
                     index_.doc_count());
  return w / norm;
}

std::vector<RankedItem> Scorer::rank(const TermVector& query) const {
  if (query.empty()) {
    throw EmptyQueryError("query projects to an empty term vector");
  }
  WeightedVector q = weight_vector(query, scheme_, index_);

  std::map<std::string, double> acc;
  for (const auto& [term, qw] : q) {
    if (qw == 0.0) continue;
    const auto* postings = index_.postings(term);
    if (!postings) continue;
    for (const Posting& p : *postings) {
      acc[p.doc_id] += qw * doc_weight(p.doc_id, term, p.tf);
    }
  }

  std::vector<RankedItem> ranked;
  ranked.reserve(index_.doc_count());
  for (const std::string& doc_id : index_.doc_ids()) {
    auto it = acc.find(doc_id);
    ranked.push_back(RankedItem{doc_id, it == acc.end() ? 0.0 : it->second});
  }
  // Stable on an already doc_id-ascending vector, so equal scores
  // (including all the zeros) stay in doc_id order.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const RankedItem& a, const RankedItem& b) {
                     return a.score > b.score;
                   });
  return ranked;
}

std::vector<RankedItem> score_query(const TermVector& query,
                                    const InvertedIndex& index,
                                    WeightingScheme scheme) {
  return Scorer(index, scheme).rank(query);
}

}  // namespace synir
