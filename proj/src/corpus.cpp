#include "synir/corpus.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "synir/errors.hpp"
#include "synir/lexicon.hpp"

namespace synir {

std::optional<Pos> pos_from_char(char c) {
  switch (c) {
    case 'n': return Pos::Noun;
    case 'v': return Pos::Verb;
    case 'a': return Pos::Adj;
    case 'r': return Pos::Adv;
    case 'o': return Pos::Other;
    default: return std::nullopt;
  }
}

char pos_to_char(Pos pos) {
  switch (pos) {
    case Pos::Noun: return 'n';
    case Pos::Verb: return 'v';
    case Pos::Adj: return 'a';
    case Pos::Adv: return 'r';
    case Pos::Other: return 'o';
  }
  return 'o';
}

bool valid_sense_key(std::string_view key) {
  // <lemma>%D:DD:DD:: with a non-empty lemma part. The lemma may itself
  // contain '%', so the pattern is anchored at the tail.
  if (key.size() < 11) return false;
  std::size_t p = key.size() - 10;
  auto digit = [&](std::size_t i) {
    return std::isdigit(static_cast<unsigned char>(key[i])) != 0;
  };
  return key[p] == '%' && digit(p + 1) && key[p + 2] == ':' && digit(p + 3) &&
         digit(p + 4) && key[p + 5] == ':' && digit(p + 6) && digit(p + 7) &&
         key[p + 8] == ':' && key[p + 9] == ':';
}

bool valid_synset_id(std::string_view id) {
  if (id.size() < 2) return false;
  char c = id[0];
  if (c != 'n' && c != 'v' && c != 'a' && c != 'r') return false;
  for (std::size_t i = 1; i < id.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(id[i]))) return false;
  }
  return true;
}

const Document* Collection::find_document(std::string_view id) const {
  for (const Document& d : documents) {
    if (d.id == id) return &d;
  }
  return nullptr;
}

namespace {

struct Field {
  std::string_view text;
  std::size_t column;  // 1-based character offset of the field start
};

std::vector<Field> split_tabs(std::string_view line) {
  std::vector<Field> fields;
  std::size_t start = 0;
  for (;;) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back({line.substr(start), start + 1});
      return fields;
    }
    fields.push_back({line.substr(start, tab - start), start + 1});
    start = tab + 1;
  }
}

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ') ++i;
    if (i > start) parts.push_back(line.substr(start, i - start));
  }
  return parts;
}

Token parse_token_line(const std::string& file, std::size_t lineno,
                       std::string_view line) {
  std::vector<Field> fields = split_tabs(line);
  if (fields.size() != 5) {
    throw ParseError(file, lineno, 1,
                     "expected 5 tab-separated fields, got " +
                         std::to_string(fields.size()));
  }
  Token tok;
  if (fields[0].text.empty()) {
    throw ParseError(file, lineno, fields[0].column, "empty surface field");
  }
  if (fields[1].text.empty()) {
    throw ParseError(file, lineno, fields[1].column, "empty lemma field");
  }
  tok.surface = std::string(fields[0].text);
  tok.lemma = std::string(fields[1].text);

  if (fields[2].text.size() != 1) {
    throw ParseError(file, lineno, fields[2].column,
                     "pos must be one of n,v,a,r,o");
  }
  std::optional<Pos> pos = pos_from_char(fields[2].text[0]);
  if (!pos) {
    throw ParseError(file, lineno, fields[2].column,
                     "pos must be one of n,v,a,r,o");
  }
  tok.pos = *pos;

  if (fields[3].text != "-") {
    if (!valid_sense_key(fields[3].text)) {
      throw ParseError(file, lineno, fields[3].column,
                       "invalid sense key '" + std::string(fields[3].text) +
                           "' (expected lemma%d:dd:dd::)");
    }
    tok.sense_key = std::string(fields[3].text);
  }
  if (fields[4].text != "-") {
    if (!valid_synset_id(fields[4].text)) {
      throw ParseError(file, lineno, fields[4].column,
                       "invalid synset id '" + std::string(fields[4].text) +
                           "' (expected pos letter followed by digits)");
    }
    tok.synset_id = std::string(fields[4].text);
  }

  if (tok.sense_key && !tok.synset_id) {
    throw ParseError(file, lineno, fields[4].column,
                     "sense key present without synset id");
  }
  if (tok.sense_key && tok.pos == Pos::Other) {
    throw ParseError(file, lineno, fields[2].column,
                     "sense-tagged token must have pos in n,v,a,r");
  }
  return tok;
}

}  // namespace

Collection parse_corpus(std::istream& in, const std::string& name) {
  Collection coll;
  std::unordered_set<std::string> doc_ids;
  std::unordered_set<std::string> query_ids;

  enum class Unit { None, Doc, Query };
  Unit current = Unit::None;
  std::size_t current_line = 0;

  auto close_unit = [&]() {
    if (current == Unit::Doc && coll.documents.back().tokens.empty()) {
      throw DataError(name + ":" + std::to_string(current_line) +
                      ": empty document '" + coll.documents.back().id + "'");
    }
    if (current == Unit::Query && coll.queries.back().tokens.empty()) {
      throw DataError(name + ":" + std::to_string(current_line) +
                      ": empty query '" + coll.queries.back().id + "'");
    }
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    if (line[0] == '#') {
      std::vector<std::string_view> parts = split_spaces(line);
      if (parts[0] == "#DOC") {
        if (parts.size() != 2) {
          throw ParseError(name, lineno, 1, "#DOC expects exactly one id");
        }
        close_unit();
        std::string id(parts[1]);
        if (!doc_ids.insert(id).second) {
          throw DataError(name + ":" + std::to_string(lineno) +
                          ": duplicate document id '" + id + "'");
        }
        coll.documents.push_back(Document{std::move(id), {}});
        current = Unit::Doc;
        current_line = lineno;
      } else if (parts[0] == "#QUERY") {
        if (parts.size() != 3) {
          throw ParseError(name, lineno, 1,
                           "#QUERY expects an id and a relevant document id");
        }
        close_unit();
        std::string id(parts[1]);
        if (!query_ids.insert(id).second) {
          throw DataError(name + ":" + std::to_string(lineno) +
                          ": duplicate query id '" + id + "'");
        }
        coll.queries.push_back(Query{std::move(id), {}, std::string(parts[2])});
        current = Unit::Query;
        current_line = lineno;
      }
      // Any other "#" line is a comment.
      continue;
    }

    Token tok = parse_token_line(name, lineno, line);
    switch (current) {
      case Unit::None:
        throw ParseError(name, lineno, 1,
                         "token line before any #DOC or #QUERY header");
      case Unit::Doc:
        coll.documents.back().tokens.push_back(std::move(tok));
        break;
      case Unit::Query:
        coll.queries.back().tokens.push_back(std::move(tok));
        break;
    }
  }
  close_unit();

  if (coll.documents.empty()) {
    throw DataError(name + ": empty collection (no documents)");
  }
  for (const Query& q : coll.queries) {
    if (!doc_ids.count(q.relevant_doc_id)) {
      throw DataError(name + ": query '" + q.id +
                      "' references unknown document '" + q.relevant_doc_id +
                      "'");
    }
  }
  return coll;
}

Collection parse_corpus_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus file: " + path);
  return parse_corpus(in, path);
}

namespace {

void write_tokens(const std::vector<Token>& tokens, std::ostream& out) {
  for (const Token& t : tokens) {
    out << t.surface << '\t' << t.lemma << '\t' << pos_to_char(t.pos) << '\t'
        << (t.sense_key ? *t.sense_key : "-") << '\t'
        << (t.synset_id ? *t.synset_id : "-") << '\n';
  }
}

}  // namespace

void write_corpus(const Collection& collection, std::ostream& out) {
  for (const Document& d : collection.documents) {
    out << "#DOC " << d.id << '\n';
    write_tokens(d.tokens, out);
  }
  for (const Query& q : collection.queries) {
    out << "#QUERY " << q.id << ' ' << q.relevant_doc_id << '\n';
    write_tokens(q.tokens, out);
  }
}

namespace {

void validate_tokens(const std::string& unit_id,
                     const std::vector<Token>& tokens, const Lexicon& lexicon,
                     ValidationReport& report) {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& tok = tokens[i];
    report.counts.tokens++;
    if (!tok.tagged()) continue;
    report.counts.tagged_tokens++;

    const auto* cands = lexicon.candidates(tok.lemma, tok.pos);
    if (cands && cands->size() >= 2) report.counts.ambiguous_tokens++;

    const Lexicon::SenseInfo* info = lexicon.find_sense(*tok.sense_key);
    if (!info) {
      report.issues.push_back({ValidationIssue::Kind::UnknownSenseKey, unit_id,
                               i,
                               "sense key '" + *tok.sense_key +
                                   "' not in lexicon"});
      continue;
    }
    if (info->lemma != tok.lemma || info->pos != tok.pos) {
      report.issues.push_back(
          {ValidationIssue::Kind::LexiconMismatch, unit_id, i,
           "sense key '" + *tok.sense_key + "' belongs to lexicon entry (" +
               info->lemma + "," + pos_to_char(info->pos) + "), token has (" +
               tok.lemma + "," + pos_to_char(tok.pos) + ")"});
    } else if (tok.synset_id && info->synset_id != *tok.synset_id) {
      report.issues.push_back(
          {ValidationIssue::Kind::LexiconMismatch, unit_id, i,
           "sense key '" + *tok.sense_key + "' maps to synset '" +
               info->synset_id + "' in the lexicon, token has '" +
               *tok.synset_id + "'"});
    }
  }
}

}  // namespace

ValidationReport validate_collection(const Collection& collection,
                                     const Lexicon& lexicon) {
  ValidationReport report;
  std::set<std::string> doc_ids;
  for (const Document& d : collection.documents) doc_ids.insert(d.id);

  report.counts.documents = collection.documents.size();
  report.counts.queries = collection.queries.size();

  for (const Document& d : collection.documents) {
    validate_tokens(d.id, d.tokens, lexicon, report);
  }
  for (const Query& q : collection.queries) {
    validate_tokens(q.id, q.tokens, lexicon, report);
    if (!doc_ids.count(q.relevant_doc_id)) {
      report.issues.push_back({ValidationIssue::Kind::DanglingQuery, q.id, 0,
                               "relevant document '" + q.relevant_doc_id +
                                   "' does not exist"});
    }
  }
  return report;
}

}  // namespace synir
