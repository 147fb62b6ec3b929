#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "synir/corpus.hpp"
#include "synir/lexicon.hpp"

namespace synir {

// The three interchangeable term spaces: word forms, sense keys, synsets.
enum class IndexSpace { Word, Sense, Synset };

std::optional<IndexSpace> index_space_from_string(std::string_view s);
std::string to_string(IndexSpace space);

// Raw term frequencies of one document or query.
using TermVector = std::map<std::string, std::int64_t>;

// Projects a token into a term space.
//   WORD    lowercase(surface)
//   SENSE   sense_key when tagged, else lowercase(surface)
//   SYNSET  synset_id when present, else lowercase(surface)
// Word forms (including fallbacks) are dropped when in stop_words;
// sense keys / synset ids when in stop_senses / stop_synsets.
// Returns nullopt for dropped tokens. Lowercasing is ASCII-only;
// sense keys and synset ids are case-significant and kept verbatim.
std::optional<std::string> project_token(const Token& token, IndexSpace space,
                                         const StopSets& stops);

// Multiset of projections of a token sequence.
TermVector project_tokens(const std::vector<Token>& tokens, IndexSpace space,
                          const StopSets& stops);

// No-disambiguation expansion: every lexicon candidate of (lemma, pos)
// contributes frequency 1 per occurrence, ignoring any annotated sense.
// Tokens without a lexicon entry contribute their WORD-space projection.
// Stop filtering applies after expansion. Space must be SENSE or SYNSET.
TermVector expand_all_senses(const std::vector<Token>& tokens,
                             const Lexicon& lexicon, IndexSpace space,
                             const StopSets& stops);

struct Posting {
  std::string doc_id;
  std::int64_t tf;

  bool operator==(const Posting&) const = default;
};

// Term -> postings with collection statistics. Postings and document
// ids are kept in ascending doc_id order, so rebuilding from the same
// collection gives identical structures regardless of insertion order.
// Immutable once built; safe to share across concurrent readers.
class InvertedIndex {
 public:
  InvertedIndex(IndexSpace space,
                std::map<std::string, TermVector> doc_vectors);

  IndexSpace space() const { return space_; }
  std::size_t doc_count() const { return doc_ids_.size(); }  // N
  const std::vector<std::string>& doc_ids() const { return doc_ids_; }

  // Document frequency; 0 for terms outside the vocabulary.
  std::int64_t df(const std::string& term) const;
  const std::vector<Posting>* postings(const std::string& term) const;
  const std::map<std::string, std::vector<Posting>>& postings_map() const {
    return postings_;
  }

  const std::map<std::string, TermVector>& doc_vectors() const {
    return doc_vectors_;
  }
  const TermVector* doc_vector(const std::string& doc_id) const;
  std::int64_t max_tf(const std::string& doc_id) const;

  std::size_t vocabulary_size() const { return postings_.size(); }

  bool operator==(const InvertedIndex&) const = default;

 private:
  IndexSpace space_;
  std::vector<std::string> doc_ids_;
  std::map<std::string, std::vector<Posting>> postings_;
  std::map<std::string, TermVector> doc_vectors_;
  std::map<std::string, std::int64_t> max_tf_;
};

// Builds an index over the documents' projected tokens.
// Throws DataError on an empty document list or duplicate ids.
InvertedIndex build_index(const std::vector<Document>& docs, IndexSpace space,
                          const StopSets& stops);

// Same, with each document expanded to all candidate senses/synsets.
InvertedIndex build_index_all_senses(const std::vector<Document>& docs,
                                     const Lexicon& lexicon, IndexSpace space,
                                     const StopSets& stops);

// Index file format (byte-stable; see README):
//   #INDEX space=<word|sense|synset> N=<doc count>
//   #DOCS <id>,<id>,...                      ascending
//   term<TAB>df<TAB>doc:tf,doc:tf,...        sorted by term, docs ascending
// Document ids must not contain ',' (checked on write).
void write_index(const InvertedIndex& index, std::ostream& out);
InvertedIndex read_index(std::istream& in, const std::string& name);
InvertedIndex read_index_file(const std::string& path);

}  // namespace synir
