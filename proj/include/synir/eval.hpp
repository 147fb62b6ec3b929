#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "synir/corpus.hpp"
#include "synir/indexing.hpp"
#include "synir/lexicon.hpp"
#include "synir/noise.hpp"
#include "synir/retrieval.hpp"

namespace synir {

// How documents enter the index: as annotated, expanded to every
// candidate sense, or with annotations corrupted at a noise rate.
enum class DocMode { Tagged, AllSenses, Noisy };
// How queries are projected: as annotated or expanded to every sense.
enum class QueryMode { Tagged, AllSenses };

std::optional<DocMode> doc_mode_from_string(std::string_view s);
std::optional<QueryMode> query_mode_from_string(std::string_view s);
std::string to_string(DocMode mode);
std::string to_string(QueryMode mode);

struct ExperimentConfig {
  std::string name;
  IndexSpace space = IndexSpace::Word;
  WeightingScheme scheme = WeightingScheme::Nnn;
  DocMode doc_mode = DocMode::Tagged;
  QueryMode query_mode = QueryMode::Tagged;
  double noise_rate = 0.0;                     // used when doc_mode = noisy
  std::vector<std::uint64_t> noise_seeds{0};   // one run per seed
  std::string corpus_path;
  std::string lexicon_path;
  std::string stop_words_path;                 // empty = no stoplist
  std::int64_t top_k = 10;
};

// Noisy or expanded doc modes only make sense in an annotation space.
// Throws std::invalid_argument otherwise.
void check_config(const ExperimentConfig& cfg);

// Outcome of one pass over all queries. A query that projects to an
// empty vector is a failure: it has no rank (treated as rank infinity
// by the metrics) and appears in `failures` instead of `ranks`.
struct EvalReport {
  std::map<std::string, std::int64_t> ranks;  // query id -> 1-based rank
  std::vector<std::string> failures;
  std::int64_t query_count = 0;

  bool operator==(const EvalReport&) const = default;
};

// 100 * |{q : rank(q) <= k}| / query_count. Failed queries never hit.
// Throws std::invalid_argument when the report has no queries or k < 1.
double success_at_k(const EvalReport& report, std::int64_t k);

// Percentages for k = 1..top_k; non-decreasing by construction.
std::vector<double> rank_success_curve(const EvalReport& report,
                                       std::int64_t top_k);

// One retrieval pass, in memory: optional document corruption, index
// build in cfg.space, query projection or expansion, exhaustive scoring.
// noise_seed matters only when cfg.doc_mode = noisy.
EvalReport run_single(const Collection& collection, const Lexicon& lexicon,
                      const StopSets& stops, const ExperimentConfig& cfg,
                      std::uint64_t noise_seed);

struct ExperimentRun {
  std::uint64_t seed = 0;
  EvalReport report;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<ExperimentRun> runs;  // one unless doc_mode = noisy
  std::vector<double> mean_curve;   // k = 1..top_k, averaged over runs
  double mean_success_at_1 = 0.0;
};

// Loads the config's files and runs it: once for tagged or all-senses
// documents, once per seed for noisy documents. Deterministic.
ExperimentResult run_experiment(const ExperimentConfig& cfg);
// Same pipeline on already-loaded data (used by tests and sweeps that
// share a parsed collection).
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const Collection& collection,
                                const Lexicon& lexicon, const StopSets& stops);

// Config file: one key=value per line, "#" comments. Keys: name, space,
// scheme, corpus, lexicon (required); doc_mode, query_mode, noise_rate,
// noise_seeds (comma separated), stop_words, top_k (optional). Relative
// paths resolve against base_dir. Missing or unknown keys raise
// std::invalid_argument naming the key.
ExperimentConfig parse_experiment_config(std::istream& in,
                                         const std::string& name,
                                         const std::string& base_dir);
ExperimentConfig parse_experiment_config_file(const std::string& path);

// Sweep file: one config path per line, "#" comments, resolved against
// the sweep file's directory. A file whose first significant line
// contains '=' is a single config, not a sweep.
std::vector<std::string> parse_sweep_file(const std::string& path);
bool is_sweep_file(const std::string& path);

// CSV emission, one decimal place: "k,percent" rows and the summary's
// "experiment,success_at_1" rows.
void write_curve_csv(const std::vector<double>& curve, std::ostream& out);
void write_seed_csv(const ExperimentResult& result, std::ostream& out);
void write_summary_csv(
    const std::vector<std::pair<std::string, double>>& rows,
    std::ostream& out);

std::string format_percent(double value);  // 62.0469 -> "62.0"

}  // namespace synir
