// synir: build, corrupt, and search sense-annotated corpora from the
// command line. Exit codes: 0 success, 1 usage error, 2 data error.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "synir/corpus.hpp"
#include "synir/errors.hpp"
#include "synir/eval.hpp"
#include "synir/indexing.hpp"
#include "synir/lexicon.hpp"
#include "synir/noise.hpp"
#include "synir/retrieval.hpp"
#include "synir/synthetic.hpp"

namespace fs = std::filesystem;
using namespace synir;

namespace {

bool g_quiet = false;

void warn(const std::string& message) {
  if (!g_quiet) std::cerr << "warning: " << message << '\n';
}

// Missing inputs are usage errors (exit 1); malformed content is a
// data error (exit 2). The existence check up front keeps the split.
void require_file(const std::string& path) {
  if (!fs::exists(path)) {
    throw std::invalid_argument("cannot open: " + path);
  }
}

// Write-then-rename so readers never observe a half-written file.
void atomic_write(const std::string& path,
                  const std::function<void(std::ostream&)>& emit) {
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::invalid_argument("cannot write: " + tmp.string());
    }
    emit(out);
    out.flush();
    if (!out) {
      throw std::invalid_argument("write failed: " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

StopSets load_stops(const std::string& stop_path, const Lexicon& lexicon) {
  if (stop_path.empty()) return {};
  require_file(stop_path);
  return translate_stoplist(read_stop_words_file(stop_path), lexicon);
}

std::int64_t tagged_token_count(const Collection& collection) {
  std::int64_t tagged = 0;
  for (const Document& doc : collection.documents) {
    for (const Token& tok : doc.tokens) {
      if (tok.tagged()) ++tagged;
    }
  }
  return tagged;
}

int cmd_validate(const std::string& corpus_path,
                 const std::string& lexicon_path, bool strict) {
  require_file(corpus_path);
  require_file(lexicon_path);
  Collection collection = parse_corpus_file(corpus_path);
  Lexicon lexicon = parse_lexicon_file(lexicon_path);
  ValidationReport report = validate_collection(collection, lexicon);

  std::cout << "documents: " << report.counts.documents << '\n'
            << "queries: " << report.counts.queries << '\n'
            << "tokens: " << report.counts.tokens << '\n'
            << "tagged_tokens: " << report.counts.tagged_tokens << '\n'
            << "ambiguous_tokens: " << report.counts.ambiguous_tokens << '\n'
            << "issues: " << report.issues.size() << '\n';
  for (const ValidationIssue& issue : report.issues) {
    std::cout << "issue: " << issue.message << '\n';
  }
  if (strict && !report.clean()) return 2;
  return 0;
}

int cmd_index(const std::string& corpus_path, const std::string& lexicon_path,
              const std::string& stop_path, const std::string& space_name,
              const std::string& mode_name, const std::string& out_path) {
  auto space = index_space_from_string(space_name);
  if (!space) {
    throw std::invalid_argument("bad --space value '" + space_name + "'");
  }
  auto mode = doc_mode_from_string(mode_name);
  if (!mode || *mode == DocMode::Noisy) {
    throw std::invalid_argument("bad --mode value '" + mode_name + "'");
  }
  if (*mode == DocMode::AllSenses && *space == IndexSpace::Word) {
    throw std::invalid_argument("--mode all-senses needs --space sense|synset");
  }
  require_file(corpus_path);
  Collection collection = parse_corpus_file(corpus_path);

  Lexicon lexicon;
  if (!lexicon_path.empty()) {
    require_file(lexicon_path);
    lexicon = parse_lexicon_file(lexicon_path);
  } else if (*mode == DocMode::AllSenses) {
    throw std::invalid_argument("--mode all-senses needs --lexicon");
  }
  StopSets stops = load_stops(stop_path, lexicon);

  if (*space != IndexSpace::Word && tagged_token_count(collection) == 0) {
    warn("corpus has no sense annotations; every token falls back to its "
         "word form");
  }

  InvertedIndex index =
      *mode == DocMode::AllSenses
          ? build_index_all_senses(collection.documents, lexicon, *space, stops)
          : build_index(collection.documents, *space, stops);
  atomic_write(out_path, [&](std::ostream& out) { write_index(index, out); });
  return 0;
}

int cmd_search(const std::string& index_path, const std::string& corpus_path,
               const std::string& lexicon_path, const std::string& stop_path,
               const std::string& scheme_name, const std::string& mode_name,
               std::int64_t top_k, const std::string& out_path) {
  auto scheme = weighting_scheme_from_string(scheme_name);
  if (!scheme) {
    throw std::invalid_argument("bad --scheme value '" + scheme_name + "'");
  }
  auto mode = query_mode_from_string(mode_name);
  if (!mode) {
    throw std::invalid_argument("bad --query-mode value '" + mode_name + "'");
  }
  if (top_k < 1) throw std::invalid_argument("--top-k must be >= 1");
  require_file(index_path);
  require_file(corpus_path);

  InvertedIndex index = read_index_file(index_path);
  Collection collection = parse_corpus_file(corpus_path);
  if (collection.queries.empty()) {
    throw DataError("no queries in corpus file: " + corpus_path);
  }
  if (*mode == QueryMode::AllSenses && lexicon_path.empty()) {
    throw std::invalid_argument("--query-mode all-senses needs --lexicon");
  }
  Lexicon lexicon;
  if (!lexicon_path.empty()) {
    require_file(lexicon_path);
    lexicon = parse_lexicon_file(lexicon_path);
  }
  StopSets stops = load_stops(stop_path, lexicon);

  Scorer scorer(index, *scheme);
  std::ostringstream run;
  char score_buf[64];
  for (const Query& query : collection.queries) {
    TermVector vec =
        *mode == QueryMode::AllSenses
            ? expand_all_senses(query.tokens, lexicon, index.space(), stops)
            : project_tokens(query.tokens, index.space(), stops);
    if (vec.empty()) {
      warn("query '" + query.id + "' projects to no terms; skipped");
      continue;
    }
    std::vector<RankedItem> ranked = scorer.rank(vec);
    std::size_t limit =
        std::min(ranked.size(), static_cast<std::size_t>(top_k));
    for (std::size_t i = 0; i < limit; ++i) {
      std::snprintf(score_buf, sizeof score_buf, "%.6f", ranked[i].score);
      run << query.id << '\t' << (i + 1) << '\t' << ranked[i].doc_id << '\t'
          << score_buf << '\n';
    }
  }

  if (out_path.empty()) {
    std::cout << run.str();
  } else {
    atomic_write(out_path, [&](std::ostream& out) { out << run.str(); });
  }
  return 0;
}

int cmd_inject(const std::string& corpus_path, const std::string& lexicon_path,
               double rate, std::uint64_t seed, const std::string& scope_name,
               const std::string& out_path) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw std::invalid_argument("--rate must lie in [0,1]");
  }
  auto scope = noise_scope_from_string(scope_name);
  if (!scope) {
    throw std::invalid_argument("bad --scope value '" + scope_name + "'");
  }
  require_file(corpus_path);
  require_file(lexicon_path);
  Collection collection = parse_corpus_file(corpus_path);
  Lexicon lexicon = parse_lexicon_file(lexicon_path);

  ValidationReport validation = validate_collection(collection, lexicon);
  if (!validation.clean()) {
    throw DataError("corpus disagrees with lexicon (" +
                    std::to_string(validation.issues.size()) +
                    " issues; first: " + validation.issues.front().message +
                    "); run validate");
  }

  NoiseSpec spec{rate, seed, *scope};
  InjectionStats stats;
  Collection corrupted = inject_errors(collection, lexicon, spec, &stats);

  atomic_write(out_path,
               [&](std::ostream& out) { write_corpus(corrupted, out); });
  atomic_write(out_path + ".noise", [&](std::ostream& out) {
    out << noise_metadata_line(spec, stats) << '\n';
  });
  return 0;
}

int cmd_experiment(const std::string& input_path, const std::string& out_dir) {
  require_file(input_path);
  std::vector<std::string> config_paths;
  if (is_sweep_file(input_path)) {
    config_paths = parse_sweep_file(input_path);
  } else {
    config_paths.push_back(input_path);
  }

  fs::create_directories(out_dir);
  std::vector<std::pair<std::string, double>> summary;
  for (const std::string& config_path : config_paths) {
    require_file(config_path);
    ExperimentConfig cfg = parse_experiment_config_file(config_path);
    require_file(cfg.corpus_path);
    require_file(cfg.lexicon_path);
    if (!cfg.stop_words_path.empty()) require_file(cfg.stop_words_path);

    ExperimentResult result = run_experiment(cfg);
    for (const ExperimentRun& run : result.runs) {
      for (const std::string& id : run.report.failures) {
        warn("experiment '" + cfg.name + "': query '" + id +
             "' projects to no terms");
      }
    }

    fs::path base = fs::path(out_dir) / cfg.name;
    atomic_write(base.string() + ".curve.csv", [&](std::ostream& out) {
      write_curve_csv(result.mean_curve, out);
    });
    if (cfg.doc_mode == DocMode::Noisy) {
      atomic_write(base.string() + ".seeds.csv", [&](std::ostream& out) {
        write_seed_csv(result, out);
      });
    }
    summary.emplace_back(cfg.name, result.mean_success_at_1);
  }

  atomic_write((fs::path(out_dir) / "summary.csv").string(),
               [&](std::ostream& out) { write_summary_csv(summary, out); });
  return 0;
}

int cmd_generate(std::int64_t n_docs, std::int64_t doc_len,
                 const SynonymyParams& params, std::uint64_t seed,
                 const std::string& out_prefix) {
  SyntheticData data =
      generate_synthetic_collection(n_docs, doc_len, params, seed);
  atomic_write(out_prefix + ".corpus", [&](std::ostream& out) {
    write_corpus(data.collection, out);
  });
  atomic_write(out_prefix + ".lexicon", [&](std::ostream& out) {
    write_lexicon(data.lexicon, out);
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"index, search, and corrupt sense-annotated corpora"};
  app.require_subcommand(1);
  app.add_flag("--quiet", g_quiet, "suppress warnings");

  int rc = 0;

  // validate
  std::string v_corpus, v_lexicon;
  bool v_strict = false;
  auto* validate = app.add_subcommand(
      "validate", "check a corpus against a lexicon and report counts");
  validate->add_option("--corpus", v_corpus, "corpus file")->required();
  validate->add_option("--lexicon", v_lexicon, "lexicon file")->required();
  validate->add_flag("--strict", v_strict, "exit nonzero on any issue");
  validate->callback([&] { rc = cmd_validate(v_corpus, v_lexicon, v_strict); });

  // index
  std::string i_corpus, i_lexicon, i_stops, i_space = "word",
                                            i_mode = "tagged", i_out;
  auto* index = app.add_subcommand("index", "build an inverted index file");
  index->add_option("--corpus", i_corpus, "corpus file")->required();
  index->add_option("--lexicon", i_lexicon,
                    "lexicon file (needed for --mode all-senses and "
                    "stop-word translation)");
  index->add_option("--stop-words", i_stops, "stop-word list");
  index->add_option("--space", i_space, "term space: word|sense|synset");
  index->add_option("--mode", i_mode, "document mode: tagged|all-senses");
  index->add_option("--out", i_out, "output index file")->required();
  index->callback(
      [&] { rc = cmd_index(i_corpus, i_lexicon, i_stops, i_space, i_mode, i_out); });

  // search
  std::string s_index, s_corpus, s_lexicon, s_stops, s_scheme = "nnn",
                                                     s_mode = "tagged", s_out;
  std::int64_t s_top_k = 10;
  auto* search = app.add_subcommand(
      "search", "rank documents for each query in a corpus file");
  search->add_option("--index", s_index, "index file")->required();
  search->add_option("--corpus", s_corpus, "corpus file with queries")
      ->required();
  search->add_option("--lexicon", s_lexicon,
                     "lexicon file (needed for --query-mode all-senses)");
  search->add_option("--stop-words", s_stops, "stop-word list");
  search->add_option("--scheme", s_scheme, "weighting: nnn|atc");
  search->add_option("--query-mode", s_mode, "query mode: tagged|all-senses");
  search->add_option("--top-k", s_top_k, "ranks per query in the run file");
  search->add_option("--out", s_out, "run file (default: stdout)");
  search->callback([&] {
    rc = cmd_search(s_index, s_corpus, s_lexicon, s_stops, s_scheme, s_mode,
                    s_top_k, s_out);
  });

  // inject
  std::string n_corpus, n_lexicon, n_scope = "documents", n_out;
  double n_rate = 0.0;
  std::uint64_t n_seed = 0;
  auto* inject = app.add_subcommand(
      "inject", "corrupt sense annotations at a fixed rate");
  inject->add_option("--corpus", n_corpus, "corpus file")->required();
  inject->add_option("--lexicon", n_lexicon, "lexicon file")->required();
  inject->add_option("--rate", n_rate, "fraction of ambiguous tokens in [0,1]")
      ->required();
  inject->add_option("--seed", n_seed, "random seed");
  inject->add_option("--scope", n_scope, "documents|queries|both");
  inject->add_option("--out", n_out, "output corpus file")->required();
  inject->callback([&] {
    rc = cmd_inject(n_corpus, n_lexicon, n_rate, n_seed, n_scope, n_out);
  });

  // experiment
  std::string e_input, e_out_dir = ".";
  auto* experiment = app.add_subcommand(
      "experiment", "run a config or sweep file and write CSV reports");
  experiment->add_option("--config", e_input, "config or sweep file")
      ->required();
  experiment->add_option("--out-dir", e_out_dir, "output directory");
  experiment->callback([&] { rc = cmd_experiment(e_input, e_out_dir); });

  // generate
  std::int64_t g_docs = 100, g_len = 40;
  SynonymyParams g_params;
  std::uint64_t g_seed = 1;
  std::string g_out;
  auto* generate = app.add_subcommand(
      "generate", "emit a synthetic corpus and lexicon with known synonymy");
  generate->add_option("--n-docs", g_docs, "documents (one query each)");
  generate->add_option("--doc-len", g_len, "tokens per document");
  generate->add_option("--synsets", g_params.synset_count, "synset count");
  generate->add_option("--senses-per-synset", g_params.senses_per_synset,
                       "lemmas per synset");
  generate->add_option("--polysemy", g_params.polysemy,
                       "synsets per common lemma");
  generate->add_option("--swap-polysemy", g_params.swap_polysemy,
                       "synsets per query-only lemma");
  generate->add_option("--synsets-per-doc", g_params.synsets_per_doc,
                       "topic pool size per document");
  generate->add_option("--pool-stride", g_params.pool_stride,
                       "pool offset between documents");
  generate->add_option("--swap-rate", g_params.query_synonym_swap_rate,
                       "fraction of query tokens swapped to a synonym");
  generate->add_option("--seed", g_seed, "random seed");
  generate
      ->add_option("--out", g_out, "output prefix (.corpus and .lexicon)")
      ->required();
  generate->callback(
      [&] { rc = cmd_generate(g_docs, g_len, g_params, g_seed, g_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const synir::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return rc;
}
