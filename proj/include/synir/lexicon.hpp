#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "synir/corpus.hpp"

namespace synir {

struct SenseCandidate {
  std::string sense_key;
  std::string synset_id;

  bool operator==(const SenseCandidate&) const = default;
};

// Maps (lemma, pos) to its sense candidates in sense-number order.
// The sense_key -> synset_id mapping is functional: each key belongs to
// exactly one (lemma, pos) entry and one synset.
class Lexicon {
 public:
  struct SenseInfo {
    std::string lemma;
    Pos pos;
    std::string synset_id;
  };

  // Appends a candidate; throws DataError on a duplicate sense key.
  void add(const std::string& lemma, Pos pos, const std::string& sense_key,
           const std::string& synset_id);

  // Candidates for (lemma, pos), or nullptr when the entry is absent.
  const std::vector<SenseCandidate>* candidates(std::string_view lemma,
                                                Pos pos) const;

  // Reverse lookup by sense key, or nullptr when unknown.
  const SenseInfo* find_sense(std::string_view sense_key) const;

  std::size_t entry_count() const { return entries_.size(); }
  std::size_t sense_count() const { return by_key_.size(); }

  const std::map<std::pair<std::string, Pos>, std::vector<SenseCandidate>>&
  entries() const {
    return entries_;
  }

 private:
  std::map<std::pair<std::string, Pos>, std::vector<SenseCandidate>> entries_;
  std::map<std::string, SenseInfo, std::less<>> by_key_;
};

// Lexicon file: lemma<TAB>pos<TAB>sense_key<TAB>synset_id, one candidate
// per line, grouped by (lemma, pos) in sense-number order. "#" comments
// and blank lines are ignored.
Lexicon parse_lexicon(std::istream& in, const std::string& name);
Lexicon parse_lexicon_file(const std::string& path);
void write_lexicon(const Lexicon& lexicon, std::ostream& out);

// Word-, sense-, and synset-level stop sets. The sense/synset sets are
// produced by translating each stop word through the lexicon.
struct StopSets {
  std::set<std::string> stop_words;
  std::set<std::string> stop_senses;
  std::set<std::string> stop_synsets;

  bool operator==(const StopSets&) const = default;
};

// Unions the candidates of every (stop_word, pos) entry across all POS.
// Words absent from the lexicon contribute nothing.
StopSets translate_stoplist(const std::set<std::string>& stop_words,
                            const Lexicon& lexicon);

// Stop-word list: one word per line, lowercased on read, "#" comments
// and blank lines ignored.
std::set<std::string> read_stop_words(std::istream& in);
std::set<std::string> read_stop_words_file(const std::string& path);

}  // namespace synir
