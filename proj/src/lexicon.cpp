#include "synir/lexicon.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>

#include "synir/errors.hpp"

namespace synir {

void Lexicon::add(const std::string& lemma, Pos pos,
                  const std::string& sense_key, const std::string& synset_id) {
  auto [it, inserted] =
      by_key_.emplace(sense_key, SenseInfo{lemma, pos, synset_id});
  if (!inserted) {
    const SenseInfo& prev = it->second;
    if (prev.synset_id != synset_id) {
      throw DataError("duplicate sense key '" + sense_key +
                      "' with conflicting synsets '" + prev.synset_id +
                      "' and '" + synset_id + "'");
    }
    throw DataError("duplicate sense key '" + sense_key + "'");
  }
  entries_[{lemma, pos}].push_back(SenseCandidate{sense_key, synset_id});
}

const std::vector<SenseCandidate>* Lexicon::candidates(std::string_view lemma,
                                                       Pos pos) const {
  auto it = entries_.find({std::string(lemma), pos});
  if (it == entries_.end()) return nullptr;
  return &it->second;
}

const Lexicon::SenseInfo* Lexicon::find_sense(std::string_view sense_key) const {
  auto it = by_key_.find(sense_key);
  if (it == by_key_.end()) return nullptr;
  return &it->second;
}

Lexicon parse_lexicon(std::istream& in, const std::string& name) {
  Lexicon lex;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    // lemma<TAB>pos<TAB>sense_key<TAB>synset_id
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      std::size_t tab = line.find('\t', start);
      if (tab == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    if (fields.size() != 4) {
      throw ParseError(name, lineno, 1,
                       "expected 4 tab-separated fields, got " +
                           std::to_string(fields.size()));
    }
    if (fields[0].empty()) {
      throw ParseError(name, lineno, 1, "empty lemma field");
    }
    std::optional<Pos> pos;
    if (fields[1].size() == 1) pos = pos_from_char(fields[1][0]);
    if (!pos || *pos == Pos::Other) {
      throw ParseError(name, lineno, fields[0].size() + 2,
                       "lexicon pos must be one of n,v,a,r");
    }
    if (!valid_sense_key(fields[2])) {
      throw ParseError(name, lineno, 1,
                       "invalid sense key '" + fields[2] + "'");
    }
    if (!valid_synset_id(fields[3])) {
      throw ParseError(name, lineno, 1,
                       "invalid synset id '" + fields[3] + "'");
    }
    try {
      lex.add(fields[0], *pos, fields[2], fields[3]);
    } catch (const DataError& e) {
      throw DataError(name + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return lex;
}

Lexicon parse_lexicon_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open lexicon file: " + path);
  return parse_lexicon(in, path);
}

void write_lexicon(const Lexicon& lexicon, std::ostream& out) {
  for (const auto& [entry, candidates] : lexicon.entries()) {
    for (const SenseCandidate& c : candidates) {
      out << entry.first << '\t' << pos_to_char(entry.second) << '\t'
          << c.sense_key << '\t' << c.synset_id << '\n';
    }
  }
}

StopSets translate_stoplist(const std::set<std::string>& stop_words,
                            const Lexicon& lexicon) {
  StopSets sets;
  sets.stop_words = stop_words;
  for (const std::string& word : stop_words) {
    for (Pos pos : {Pos::Noun, Pos::Verb, Pos::Adj, Pos::Adv}) {
      const auto* cands = lexicon.candidates(word, pos);
      if (!cands) continue;
      for (const SenseCandidate& c : *cands) {
        sets.stop_senses.insert(c.sense_key);
        sets.stop_synsets.insert(c.synset_id);
      }
    }
  }
  return sets;
}

std::set<std::string> read_stop_words(std::istream& in) {
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) {
      line.pop_back();
    }
    if (line.empty() || line[0] == '#') continue;
    for (char& c : line) {
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    words.insert(line);
  }
  return words;
}

std::set<std::string> read_stop_words_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open stop-word file: " + path);
  return read_stop_words(in);
}

}  // namespace synir
