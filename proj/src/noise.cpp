#include "synir/noise.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "synir/errors.hpp"
#include "synir/rng.hpp"

namespace synir {

std::optional<NoiseScope> noise_scope_from_string(std::string_view s) {
  if (s == "documents") return NoiseScope::Documents;
  if (s == "queries") return NoiseScope::Queries;
  if (s == "both") return NoiseScope::Both;
  return std::nullopt;
}

std::string to_string(NoiseScope scope) {
  switch (scope) {
    case NoiseScope::Documents: return "documents";
    case NoiseScope::Queries: return "queries";
    case NoiseScope::Both: return "both";
  }
  return "documents";
}

namespace {

// Corrupts one token run under its own substream. unit_key is "D:<id>"
// or "Q:<id>", making the result independent of unit order.
void corrupt_tokens(std::vector<Token>& tokens, const Lexicon& lexicon,
                    const NoiseSpec& spec, const std::string& unit_key,
                    InjectionStats& stats) {
  stats.tokens += static_cast<std::int64_t>(tokens.size());

  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!tokens[i].tagged()) continue;
    const auto* cands = lexicon.candidates(tokens[i].lemma, tokens[i].pos);
    if (cands && cands->size() >= 2) eligible.push_back(i);
  }
  stats.eligible += static_cast<std::int64_t>(eligible.size());

  auto n_alter = static_cast<std::size_t>(
      std::llround(spec.error_rate * static_cast<double>(eligible.size())));
  if (n_alter == 0) return;

  SplitMix64 rng = substream(spec.seed, unit_key);
  std::vector<std::size_t> picks =
      sample_indices(eligible.size(), n_alter, rng);
  // Replacement draws happen in ascending token order, decoupling the
  // outcome from the order the picks came out of the sampler.
  std::sort(picks.begin(), picks.end());

  for (std::size_t pick : picks) {
    Token& tok = tokens[eligible[pick]];
    const auto* cands = lexicon.candidates(tok.lemma, tok.pos);
    std::size_t cur = cands->size();
    for (std::size_t c = 0; c < cands->size(); ++c) {
      if ((*cands)[c].sense_key == *tok.sense_key) {
        cur = c;
        break;
      }
    }
    if (cur == cands->size() || (*cands)[cur].synset_id != *tok.synset_id) {
      throw DataError("token '" + tok.surface + "' in " + unit_key +
                      " is annotated with '" + *tok.sense_key +
                      "' which is not a lexicon candidate for its lemma");
    }
    std::uint64_t r = rng.bounded(cands->size() - 1);
    if (r >= cur) ++r;
    tok.sense_key = (*cands)[r].sense_key;
    tok.synset_id = (*cands)[r].synset_id;
    ++stats.altered;
  }
}

}  // namespace

Collection inject_errors(const Collection& collection, const Lexicon& lexicon,
                         const NoiseSpec& spec, InjectionStats* stats) {
  if (!(spec.error_rate >= 0.0 && spec.error_rate <= 1.0)) {
    throw std::invalid_argument("error rate must lie in [0,1]");
  }
  Collection out = collection;
  InjectionStats local;
  if (spec.scope != NoiseScope::Queries) {
    for (Document& doc : out.documents) {
      corrupt_tokens(doc.tokens, lexicon, spec, "D:" + doc.id, local);
    }
  }
  if (spec.scope != NoiseScope::Documents) {
    for (Query& query : out.queries) {
      corrupt_tokens(query.tokens, lexicon, spec, "Q:" + query.id, local);
    }
  }
  if (stats) *stats = local;
  return out;
}

std::string noise_metadata_line(const NoiseSpec& spec,
                                const InjectionStats& stats) {
  char rate[32];
  std::snprintf(rate, sizeof rate, "%g", spec.error_rate);
  return "#NOISE rate=" + std::string(rate) +
         " seed=" + std::to_string(spec.seed) +
         " altered=" + std::to_string(stats.altered) +
         " eligible=" + std::to_string(stats.eligible) +
         " scope=" + to_string(spec.scope) +
         " tokens=" + std::to_string(stats.tokens) + " rng=splitmix64";
}

}  // namespace synir
