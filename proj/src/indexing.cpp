#include "synir/indexing.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

#include "synir/errors.hpp"

namespace synir {

std::optional<IndexSpace> index_space_from_string(std::string_view s) {
  if (s == "word") return IndexSpace::Word;
  if (s == "sense") return IndexSpace::Sense;
  if (s == "synset") return IndexSpace::Synset;
  return std::nullopt;
}

std::string to_string(IndexSpace space) {
  switch (space) {
    case IndexSpace::Word: return "word";
    case IndexSpace::Sense: return "sense";
    case IndexSpace::Synset: return "synset";
  }
  return "word";
}

namespace {

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::optional<std::string> word_form_term(const Token& token,
                                          const StopSets& stops) {
  std::string term = ascii_lower(token.surface);
  if (stops.stop_words.count(term)) return std::nullopt;
  return term;
}

}  // namespace

std::optional<std::string> project_token(const Token& token, IndexSpace space,
                                         const StopSets& stops) {
  switch (space) {
    case IndexSpace::Word:
      return word_form_term(token, stops);
    case IndexSpace::Sense:
      if (token.sense_key) {
        if (stops.stop_senses.count(*token.sense_key)) return std::nullopt;
        return *token.sense_key;
      }
      return word_form_term(token, stops);
    case IndexSpace::Synset:
      if (token.synset_id) {
        if (stops.stop_synsets.count(*token.synset_id)) return std::nullopt;
        return *token.synset_id;
      }
      return word_form_term(token, stops);
  }
  return std::nullopt;
}

TermVector project_tokens(const std::vector<Token>& tokens, IndexSpace space,
                          const StopSets& stops) {
  TermVector vec;
  for (const Token& tok : tokens) {
    if (auto term = project_token(tok, space, stops)) {
      vec[*term] += 1;
    }
  }
  return vec;
}

TermVector expand_all_senses(const std::vector<Token>& tokens,
                             const Lexicon& lexicon, IndexSpace space,
                             const StopSets& stops) {
  if (space == IndexSpace::Word) {
    throw std::invalid_argument(
        "all-senses expansion requires the sense or synset space");
  }
  TermVector vec;
  for (const Token& tok : tokens) {
    const auto* cands = lexicon.candidates(tok.lemma, tok.pos);
    if (!cands) {
      if (auto term = word_form_term(tok, stops)) vec[*term] += 1;
      continue;
    }
    for (const SenseCandidate& c : *cands) {
      if (space == IndexSpace::Sense) {
        if (!stops.stop_senses.count(c.sense_key)) vec[c.sense_key] += 1;
      } else {
        if (!stops.stop_synsets.count(c.synset_id)) vec[c.synset_id] += 1;
      }
    }
  }
  return vec;
}

InvertedIndex::InvertedIndex(IndexSpace space,
                             std::map<std::string, TermVector> doc_vectors)
    : space_(space), doc_vectors_(std::move(doc_vectors)) {
  if (doc_vectors_.empty()) {
    throw DataError("empty collection: cannot build an index of 0 documents");
  }
  for (const auto& [doc_id, vec] : doc_vectors_) {
    doc_ids_.push_back(doc_id);
    std::int64_t mtf = 0;
    for (const auto& [term, tf] : vec) {
      if (tf <= 0) throw DataError("non-positive tf for term '" + term + "'");
      postings_[term].push_back(Posting{doc_id, tf});
      mtf = std::max(mtf, tf);
    }
    max_tf_[doc_id] = mtf;
  }
}

std::int64_t InvertedIndex::df(const std::string& term) const {
  auto it = postings_.find(term);
  return it == postings_.end() ? 0
                               : static_cast<std::int64_t>(it->second.size());
}

const std::vector<Posting>* InvertedIndex::postings(
    const std::string& term) const {
  auto it = postings_.find(term);
  return it == postings_.end() ? nullptr : &it->second;
}

const TermVector* InvertedIndex::doc_vector(const std::string& doc_id) const {
  auto it = doc_vectors_.find(doc_id);
  return it == doc_vectors_.end() ? nullptr : &it->second;
}

std::int64_t InvertedIndex::max_tf(const std::string& doc_id) const {
  auto it = max_tf_.find(doc_id);
  return it == max_tf_.end() ? 0 : it->second;
}

namespace {

std::map<std::string, TermVector> collect_vectors(
    const std::vector<Document>& docs,
    const std::function<TermVector(const Document&)>& project) {
  if (docs.empty()) {
    throw DataError("empty collection: cannot build an index of 0 documents");
  }
  std::map<std::string, TermVector> vectors;
  for (const Document& d : docs) {
    if (!vectors.emplace(d.id, project(d)).second) {
      throw DataError("duplicate document id '" + d.id + "'");
    }
  }
  return vectors;
}

}  // namespace

InvertedIndex build_index(const std::vector<Document>& docs, IndexSpace space,
                          const StopSets& stops) {
  return InvertedIndex(space, collect_vectors(docs, [&](const Document& d) {
                         return project_tokens(d.tokens, space, stops);
                       }));
}

InvertedIndex build_index_all_senses(const std::vector<Document>& docs,
                                     const Lexicon& lexicon, IndexSpace space,
                                     const StopSets& stops) {
  return InvertedIndex(space, collect_vectors(docs, [&](const Document& d) {
                         return expand_all_senses(d.tokens, lexicon, space,
                                                  stops);
                       }));
}

void write_index(const InvertedIndex& index, std::ostream& out) {
  out << "#INDEX space=" << to_string(index.space())
      << " N=" << index.doc_count() << '\n';
  out << "#DOCS ";
  bool first = true;
  for (const std::string& id : index.doc_ids()) {
    if (id.find(',') != std::string::npos ||
        id.find('\t') != std::string::npos) {
      throw DataError("document id '" + id +
                      "' cannot be serialized (contains ',' or tab)");
    }
    if (!first) out << ',';
    out << id;
    first = false;
  }
  out << '\n';
  for (const auto& [term, postings] : index.postings_map()) {
    out << term << '\t' << postings.size() << '\t';
    for (std::size_t i = 0; i < postings.size(); ++i) {
      if (i) out << ',';
      out << postings[i].doc_id << ':' << postings[i].tf;
    }
    out << '\n';
  }
}

namespace {

std::int64_t parse_count(std::string_view text, const std::string& name,
                         std::size_t lineno) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 0) {
    throw ParseError(name, lineno, 1,
                     "invalid count '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

InvertedIndex read_index(std::istream& in, const std::string& name) {
  std::string line;
  std::size_t lineno = 0;

  if (!std::getline(in, line)) {
    throw ParseError(name, 1, 1, "missing #INDEX header");
  }
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::optional<IndexSpace> space;
  std::int64_t n_docs = -1;
  {
    if (!line.starts_with("#INDEX ")) {
      throw ParseError(name, lineno, 1, "missing #INDEX header");
    }
    std::istringstream fields(line.substr(7));
    std::string part;
    while (fields >> part) {
      std::string_view view(part);
      if (view.starts_with("space=")) {
        space = index_space_from_string(view.substr(6));
      } else if (view.starts_with("N=")) {
        n_docs = parse_count(view.substr(2), name, lineno);
      }
    }
    if (!space) throw ParseError(name, lineno, 1, "bad or missing space tag");
    if (n_docs < 0) throw ParseError(name, lineno, 1, "bad or missing N");
  }

  if (!std::getline(in, line)) {
    throw ParseError(name, lineno + 1, 1, "missing #DOCS line");
  }
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (!line.starts_with("#DOCS ")) {
    throw ParseError(name, lineno, 1, "missing #DOCS line");
  }
  std::map<std::string, TermVector> vectors;
  {
    std::string_view ids(line);
    ids.remove_prefix(6);
    while (!ids.empty()) {
      std::size_t comma = ids.find(',');
      std::string_view id = ids.substr(0, comma);
      if (id.empty()) throw ParseError(name, lineno, 1, "empty document id");
      if (!vectors.emplace(std::string(id), TermVector{}).second) {
        throw ParseError(name, lineno, 1,
                         "duplicate document id '" + std::string(id) + "'");
      }
      if (comma == std::string_view::npos) break;
      ids.remove_prefix(comma + 1);
    }
  }
  if (static_cast<std::int64_t>(vectors.size()) != n_docs) {
    throw ParseError(name, lineno, 1,
                     "#DOCS lists " + std::to_string(vectors.size()) +
                         " ids but N=" + std::to_string(n_docs));
  }

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    std::size_t tab1 = line.find('\t');
    std::size_t tab2 = tab1 == std::string::npos ? std::string::npos
                                                 : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos) {
      throw ParseError(name, lineno, 1,
                       "expected term<TAB>df<TAB>postings");
    }
    std::string term = line.substr(0, tab1);
    if (term.empty()) throw ParseError(name, lineno, 1, "empty term");
    std::int64_t df =
        parse_count(std::string_view(line).substr(tab1 + 1, tab2 - tab1 - 1),
                    name, lineno);

    std::string_view rest = std::string_view(line).substr(tab2 + 1);
    std::int64_t seen = 0;
    while (!rest.empty()) {
      std::size_t comma = rest.find(',');
      std::string_view pair = rest.substr(0, comma);
      // tf follows the last ':' so doc ids may contain colons.
      std::size_t colon = pair.rfind(':');
      if (colon == std::string_view::npos || colon == 0) {
        throw ParseError(name, lineno, static_cast<std::size_t>(tab2 + 2),
                         "bad posting '" + std::string(pair) + "'");
      }
      std::string doc_id(pair.substr(0, colon));
      std::int64_t tf = parse_count(pair.substr(colon + 1), name, lineno);
      if (tf <= 0) {
        throw ParseError(name, lineno, 1, "tf must be positive");
      }
      auto it = vectors.find(doc_id);
      if (it == vectors.end()) {
        throw ParseError(name, lineno, 1,
                         "posting for unknown document '" + doc_id + "'");
      }
      if (!it->second.emplace(term, tf).second) {
        throw ParseError(name, lineno, 1,
                         "duplicate posting for document '" + doc_id + "'");
      }
      ++seen;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (seen != df) {
      throw ParseError(name, lineno, 1,
                       "df=" + std::to_string(df) + " but " +
                           std::to_string(seen) + " postings listed");
    }
  }

  return InvertedIndex(*space, std::move(vectors));
}

InvertedIndex read_index_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open index file: " + path);
  return read_index(in, path);
}

}  // namespace synir
