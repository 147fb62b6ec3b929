#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace synir {

class Lexicon;

enum class Pos { Noun, Verb, Adj, Adv, Other };

// Maps to/from the single-letter codes used in corpus and lexicon files.
std::optional<Pos> pos_from_char(char c);
char pos_to_char(Pos pos);

// One corpus token. Multiword terms are single tokens with underscores
// in surface and lemma ("Fulton_County_Grand_Jury"). Untagged tokens
// (names, out-of-vocabulary words) carry no sense_key/synset_id.
struct Token {
  std::string surface;
  std::string lemma;
  Pos pos = Pos::Other;
  std::optional<std::string> sense_key;  // e.g. "debate%1:10:01::"
  std::optional<std::string> synset_id;  // e.g. "n04616654"

  bool tagged() const { return sense_key.has_value(); }
  bool operator==(const Token&) const = default;
};

// Syntax checks for annotation identifiers.
//   sense key:  <lemma>%D:DD:DD::   (pos digit, lexicographer file, sense no.)
//   synset id:  one of n,v,a,r followed by digits
bool valid_sense_key(std::string_view key);
bool valid_synset_id(std::string_view id);

struct Document {
  std::string id;
  std::vector<Token> tokens;

  bool operator==(const Document&) const = default;
};

struct Query {
  std::string id;
  std::vector<Token> tokens;
  std::string relevant_doc_id;  // exactly one relevant document per query

  bool operator==(const Query&) const = default;
};

struct Collection {
  std::vector<Document> documents;
  std::vector<Query> queries;

  const Document* find_document(std::string_view id) const;
  bool operator==(const Collection&) const = default;
};

// Reads the vertical-token corpus format:
//   #DOC <id>                       starts a document
//   #QUERY <id> <relevant_doc_id>   starts a query
//   surface<TAB>lemma<TAB>pos<TAB>sense_key<TAB>synset_id
// with "-" for absent sense/synset fields and pos in {n,v,a,r,o}.
// Blank lines and other "#" lines are ignored. Throws ParseError with
// line/column on malformed input, DataError on structural violations
// (duplicate ids, dangling query references, empty units).
Collection parse_corpus(std::istream& in, const std::string& name);
Collection parse_corpus_file(const std::string& path);

// Canonical serialization: documents in order, then queries in order.
// parse(write(c)) == c, and write(parse(f)) is byte-stable.
void write_corpus(const Collection& collection, std::ostream& out);

struct ValidationIssue {
  enum class Kind { UnknownSenseKey, LexiconMismatch, DanglingQuery };
  Kind kind;
  std::string unit_id;        // document or query id
  std::size_t token_index;    // 0-based within the unit; unused for DanglingQuery
  std::string message;
};

struct ValidationCounts {
  std::size_t documents = 0;
  std::size_t queries = 0;
  std::size_t tokens = 0;          // across documents and queries
  std::size_t tagged_tokens = 0;   // tokens carrying a sense_key
  std::size_t ambiguous_tokens = 0;  // tagged tokens with >= 2 lexicon candidates
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  ValidationCounts counts;

  bool clean() const { return issues.empty(); }
};

// Cross-checks a collection against a lexicon. Never throws; every
// inconsistency becomes an issue in the report.
ValidationReport validate_collection(const Collection& collection,
                                     const Lexicon& lexicon);

}  // namespace synir
