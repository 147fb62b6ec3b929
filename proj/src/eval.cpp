#include "synir/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "synir/errors.hpp"

namespace synir {

std::optional<DocMode> doc_mode_from_string(std::string_view s) {
  if (s == "tagged") return DocMode::Tagged;
  if (s == "all_senses" || s == "all-senses") return DocMode::AllSenses;
  if (s == "noisy") return DocMode::Noisy;
  return std::nullopt;
}

std::optional<QueryMode> query_mode_from_string(std::string_view s) {
  if (s == "tagged") return QueryMode::Tagged;
  if (s == "all_senses" || s == "all-senses") return QueryMode::AllSenses;
  return std::nullopt;
}

std::string to_string(DocMode mode) {
  switch (mode) {
    case DocMode::Tagged: return "tagged";
    case DocMode::AllSenses: return "all_senses";
    case DocMode::Noisy: return "noisy";
  }
  return "tagged";
}

std::string to_string(QueryMode mode) {
  return mode == QueryMode::Tagged ? "tagged" : "all_senses";
}

void check_config(const ExperimentConfig& cfg) {
  if (cfg.space == IndexSpace::Word) {
    if (cfg.doc_mode == DocMode::Noisy) {
      throw std::invalid_argument(
          "config '" + cfg.name + "': noisy documents need space sense or synset");
    }
    if (cfg.doc_mode == DocMode::AllSenses ||
        cfg.query_mode == QueryMode::AllSenses) {
      throw std::invalid_argument(
          "config '" + cfg.name +
          "': all-senses expansion needs space sense or synset");
    }
  }
  if (!(cfg.noise_rate >= 0.0 && cfg.noise_rate <= 1.0)) {
    throw std::invalid_argument("config '" + cfg.name +
                                "': noise_rate must lie in [0,1]");
  }
  if (cfg.top_k < 1) {
    throw std::invalid_argument("config '" + cfg.name + "': top_k must be >= 1");
  }
  if (cfg.doc_mode == DocMode::Noisy && cfg.noise_seeds.empty()) {
    throw std::invalid_argument("config '" + cfg.name +
                                "': noisy documents need at least one seed");
  }
}

double success_at_k(const EvalReport& report, std::int64_t k) {
  if (report.query_count <= 0) {
    throw std::invalid_argument("success_at_k needs at least one query");
  }
  if (k < 1) throw std::invalid_argument("success_at_k needs k >= 1");
  std::int64_t hits = 0;
  for (const auto& [query_id, rank] : report.ranks) {
    if (rank <= k) ++hits;
  }
  return 100.0 * static_cast<double>(hits) /
         static_cast<double>(report.query_count);
}

std::vector<double> rank_success_curve(const EvalReport& report,
                                       std::int64_t top_k) {
  std::vector<double> curve;
  curve.reserve(static_cast<std::size_t>(top_k));
  for (std::int64_t k = 1; k <= top_k; ++k) {
    curve.push_back(success_at_k(report, k));
  }
  return curve;
}

EvalReport run_single(const Collection& collection, const Lexicon& lexicon,
                      const StopSets& stops, const ExperimentConfig& cfg,
                      std::uint64_t noise_seed) {
  check_config(cfg);

  const Collection* active = &collection;
  Collection corrupted;
  if (cfg.doc_mode == DocMode::Noisy) {
    NoiseSpec spec;
    spec.error_rate = cfg.noise_rate;
    spec.seed = noise_seed;
    spec.scope = NoiseScope::Documents;
    corrupted = inject_errors(collection, lexicon, spec);
    active = &corrupted;
  }

  InvertedIndex index =
      cfg.doc_mode == DocMode::AllSenses
          ? build_index_all_senses(active->documents, lexicon, cfg.space, stops)
          : build_index(active->documents, cfg.space, stops);
  Scorer scorer(index, cfg.scheme);

  EvalReport report;
  report.query_count = static_cast<std::int64_t>(active->queries.size());
  for (const Query& query : active->queries) {
    TermVector vec =
        cfg.query_mode == QueryMode::AllSenses
            ? expand_all_senses(query.tokens, lexicon, cfg.space, stops)
            : project_tokens(query.tokens, cfg.space, stops);
    if (vec.empty()) {
      report.failures.push_back(query.id);
      continue;
    }
    std::vector<RankedItem> ranked = scorer.rank(vec);
    bool found = false;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      if (ranked[i].doc_id == query.relevant_doc_id) {
        report.ranks[query.id] = static_cast<std::int64_t>(i) + 1;
        found = true;
        break;
      }
    }
    if (!found) {
      throw DataError("query '" + query.id + "' names unknown document '" +
                      query.relevant_doc_id + "'");
    }
  }
  return report;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const Collection& collection,
                                const Lexicon& lexicon,
                                const StopSets& stops) {
  check_config(cfg);

  ExperimentResult result;
  result.config = cfg;

  std::vector<std::uint64_t> seeds =
      cfg.doc_mode == DocMode::Noisy ? cfg.noise_seeds
                                     : std::vector<std::uint64_t>{0};
  for (std::uint64_t seed : seeds) {
    ExperimentRun run;
    run.seed = seed;
    run.report = run_single(collection, lexicon, stops, cfg, seed);
    result.runs.push_back(std::move(run));
  }

  result.mean_curve.assign(static_cast<std::size_t>(cfg.top_k), 0.0);
  for (const ExperimentRun& run : result.runs) {
    std::vector<double> curve = rank_success_curve(run.report, cfg.top_k);
    for (std::size_t i = 0; i < curve.size(); ++i) {
      result.mean_curve[i] += curve[i];
    }
    result.mean_success_at_1 += success_at_k(run.report, 1);
  }
  auto n_runs = static_cast<double>(result.runs.size());
  for (double& v : result.mean_curve) v /= n_runs;
  result.mean_success_at_1 /= n_runs;
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  check_config(cfg);

  Collection collection = parse_corpus_file(cfg.corpus_path);
  Lexicon lexicon = parse_lexicon_file(cfg.lexicon_path);
  StopSets stops;
  if (!cfg.stop_words_path.empty()) {
    stops = translate_stoplist(read_stop_words_file(cfg.stop_words_path),
                               lexicon);
  }

  if (cfg.doc_mode == DocMode::Noisy) {
    // Corruption looks annotations up in the lexicon; fail on the whole
    // collection up front rather than on whichever token a seed picks.
    ValidationReport validation = validate_collection(collection, lexicon);
    if (!validation.issues.empty()) {
      throw DataError("config '" + cfg.name + "': corpus disagrees with lexicon (" +
                      std::to_string(validation.issues.size()) +
                      " issues; first: " + validation.issues.front().message +
                      ")");
    }
  }

  return run_experiment(cfg, collection, lexicon, stops);
}

namespace {

std::string trimmed(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::string resolve_path(const std::string& value,
                         const std::string& base_dir) {
  std::filesystem::path p(value);
  if (p.is_absolute() || base_dir.empty()) return value;
  return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

double parse_rate(const std::string& value) {
  std::size_t used = 0;
  double rate = 0.0;
  try {
    rate = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size()) {
    throw std::invalid_argument("bad noise_rate value '" + value + "'");
  }
  return rate;
}

std::int64_t parse_int(const std::string& value, const std::string& key) {
  std::size_t used = 0;
  long long parsed = 0;
  try {
    parsed = std::stoll(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size()) {
    throw std::invalid_argument("bad " + key + " value '" + value + "'");
  }
  return parsed;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& value) {
  std::vector<std::uint64_t> seeds;
  std::size_t start = 0;
  while (start <= value.size()) {
    std::size_t comma = value.find(',', start);
    std::string item = trimmed(
        value.substr(start, comma == std::string::npos ? std::string::npos
                                                       : comma - start));
    std::size_t used = 0;
    unsigned long long parsed = 0;
    try {
      parsed = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) {
      throw std::invalid_argument("bad noise_seeds entry '" + item + "'");
    }
    seeds.push_back(parsed);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return seeds;
}

}  // namespace

ExperimentConfig parse_experiment_config(std::istream& in,
                                         const std::string& name,
                                         const std::string& base_dir) {
  ExperimentConfig cfg;
  std::map<std::string, std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string body = trimmed(line);
    if (body.empty() || body[0] == '#') continue;
    std::size_t eq = body.find('=');
    if (eq == std::string::npos) {
      throw ParseError(name, lineno, 1, "expected key=value");
    }
    std::string key = trimmed(body.substr(0, eq));
    std::string value = trimmed(body.substr(eq + 1));
    if (key.empty()) throw ParseError(name, lineno, 1, "empty config key");
    if (!seen.emplace(key, value).second) {
      throw std::invalid_argument("duplicate config key '" + key + "' in " +
                                  name);
    }

    if (key == "name") {
      cfg.name = value;
    } else if (key == "space") {
      auto space = index_space_from_string(value);
      if (!space) {
        throw std::invalid_argument("bad space value '" + value + "' in " +
                                    name);
      }
      cfg.space = *space;
    } else if (key == "scheme") {
      auto scheme = weighting_scheme_from_string(value);
      if (!scheme) {
        throw std::invalid_argument("bad scheme value '" + value + "' in " +
                                    name);
      }
      cfg.scheme = *scheme;
    } else if (key == "doc_mode") {
      auto mode = doc_mode_from_string(value);
      if (!mode) {
        throw std::invalid_argument("bad doc_mode value '" + value + "' in " +
                                    name);
      }
      cfg.doc_mode = *mode;
    } else if (key == "query_mode") {
      auto mode = query_mode_from_string(value);
      if (!mode) {
        throw std::invalid_argument("bad query_mode value '" + value +
                                    "' in " + name);
      }
      cfg.query_mode = *mode;
    } else if (key == "noise_rate") {
      cfg.noise_rate = parse_rate(value);
    } else if (key == "noise_seeds") {
      cfg.noise_seeds = parse_seed_list(value);
    } else if (key == "corpus") {
      cfg.corpus_path = resolve_path(value, base_dir);
    } else if (key == "lexicon") {
      cfg.lexicon_path = resolve_path(value, base_dir);
    } else if (key == "stop_words") {
      cfg.stop_words_path = resolve_path(value, base_dir);
    } else if (key == "top_k") {
      cfg.top_k = parse_int(value, "top_k");
    } else {
      throw std::invalid_argument("unknown config key '" + key + "' in " +
                                  name);
    }
  }

  for (const char* required : {"name", "space", "scheme", "corpus", "lexicon"}) {
    if (!seen.count(required)) {
      throw std::invalid_argument("missing config key '" +
                                  std::string(required) + "' in " + name);
    }
  }
  check_config(cfg);
  return cfg;
}

ExperimentConfig parse_experiment_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open config file: " + path);
  return parse_experiment_config(
      in, path, std::filesystem::path(path).parent_path().string());
}

bool is_sweep_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open experiment file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string body = trimmed(line);
    if (body.empty() || body[0] == '#') continue;
    return body.find('=') == std::string::npos;
  }
  return true;  // nothing significant; let the sweep parser reject it
}

std::vector<std::string> parse_sweep_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open sweep file: " + path);
  std::string base_dir = std::filesystem::path(path).parent_path().string();
  std::vector<std::string> configs;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string body = trimmed(line);
    if (body.empty() || body[0] == '#') continue;
    configs.push_back(resolve_path(body, base_dir));
  }
  if (configs.empty()) {
    throw DataError("sweep file lists no configs: " + path);
  }
  return configs;
}

std::string format_percent(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", value);
  return buf;
}

void write_curve_csv(const std::vector<double>& curve, std::ostream& out) {
  out << "k,percent\n";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    out << (i + 1) << ',' << format_percent(curve[i]) << '\n';
  }
}

void write_seed_csv(const ExperimentResult& result, std::ostream& out) {
  out << "seed,success_at_1\n";
  for (const ExperimentRun& run : result.runs) {
    out << run.seed << ',' << format_percent(success_at_k(run.report, 1))
        << '\n';
  }
}

void write_summary_csv(
    const std::vector<std::pair<std::string, double>>& rows,
    std::ostream& out) {
  out << "experiment,success_at_1\n";
  for (const auto& [name, value] : rows) {
    out << name << ',' << format_percent(value) << '\n';
  }
}

}  // namespace synir
