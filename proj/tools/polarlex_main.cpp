#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "polarlex/pipeline.hpp"
#include "polarlex/synthgen.hpp"
#include "polarlex/types.hpp"

using namespace polarlex;

namespace {

void add_corpus_options(CLI::App* cmd, PipelineConfig& cfg) {
  cmd->add_option("--tweets", cfg.tweets_path, "tweets.jsonl path")->required();
  cmd->add_option("--users", cfg.users_path, "users.jsonl path")->required();
  cmd->add_option("--follows", cfg.follows_path, "follows.jsonl path")
      ->required();
  cmd->add_option("--roster", cfg.roster_path, "roster.csv path")->required();
  cmd->add_option("--out-dir", cfg.out_dir, "artifact directory")
      ->capture_default_str();
  cmd->add_flag("--force", cfg.force,
                "use stale upstream artifacts without complaint");
  cmd->add_option("--workers", cfg.workers, "worker threads")
      ->capture_default_str();
  cmd->add_option("--rng-seed", cfg.rng_seed, "global random seed")
      ->capture_default_str();
}

void add_scoring_options(CLI::App* cmd, PipelineConfig& cfg) {
  cmd->add_option("--scorer", cfg.scorer, "lexicon|remote")
      ->check(CLI::IsMember({"lexicon", "remote"}))
      ->capture_default_str();
  cmd->add_option("--threshold", cfg.threshold, "adversarial score threshold")
      ->capture_default_str();
  cmd->add_option("--toxicity-lexicon", cfg.toxicity_lexicon_path,
                  "JSON term->weight map (default: built-in)");
  cmd->add_option("--cache-path", cfg.cache_path,
                  "remote scorer response cache (JSONL)");
  cmd->add_option("--remote-host", cfg.remote_host, "scoring service host")
      ->capture_default_str();
  cmd->add_option("--remote-port", cfg.remote_port, "scoring service port");
  cmd->add_option("--remote-endpoint", cfg.remote_endpoint,
                  "scoring service path")
      ->capture_default_str();
  cmd->add_option("--remote-timeout-ms", cfg.remote_timeout_ms,
                  "per-request timeout")
      ->capture_default_str();
  cmd->add_option("--max-in-flight", cfg.max_in_flight,
                  "concurrent requests to the scoring service")
      ->capture_default_str();
}

void add_party_options(CLI::App* cmd, PipelineConfig& cfg) {
  cmd->add_option("--hashtag-lexicon", cfg.hashtag_lexicon_path,
                  "seed hashtag lexicon JSON (default: built-in)");
  cmd->add_option("--relatedness-threshold", cfg.relatedness_threshold,
                  "Jaccard threshold for hashtag bootstrap")
      ->capture_default_str();
  cmd->add_option("--max-rounds", cfg.max_rounds,
                  "label propagation round limit")
      ->capture_default_str();
}

void add_lexicon_options(CLI::App* cmd, PipelineConfig& cfg) {
  cmd->add_option("--min-interactions", cfg.min_interactions,
                  "replies+mentions required per candidate")
      ->capture_default_str();
  cmd->add_option("--runs", cfg.runs, "bootstrap propagation runs")
      ->capture_default_str();
  cmd->add_option("--seed-fraction", cfg.seed_fraction,
                  "seed subsample fraction per run")
      ->capture_default_str();
  cmd->add_option("--beta", cfg.beta, "walk continuation probability")
      ->capture_default_str();
  cmd->add_option("--walk-tol", cfg.walk_tol, "walk L1 convergence tolerance")
      ->capture_default_str();
  cmd->add_option("--knn-k", cfg.knn_k, "term graph kNN degree")
      ->capture_default_str();
  cmd->add_option("--embed-dim", cfg.embed_dim, "embedding dimension")
      ->capture_default_str();
  cmd->add_option("--embed-alpha", cfg.embed_alpha,
                  "context smoothing exponent")
      ->capture_default_str();
  cmd->add_option("--cooc-window", cfg.cooc_window, "co-occurrence window")
      ->capture_default_str();
  cmd->add_option("--vocab-min-users", cfg.vocab_min_users,
                  "distinct users per vocabulary term")
      ->capture_default_str();
  cmd->add_option("--top-n", cfg.top_n, "term-candidate pairs to report")
      ->capture_default_str();
}

int dispatch(const std::string& name, const PipelineConfig& cfg) {
  auto report = [](const StageResult& r) {
    if (r.skipped)
      std::printf("[%s] up to date, skipped\n", stage_name(r.stage).c_str());
    else
      std::printf("[%s] done\n", stage_name(r.stage).c_str());
    for (const auto& note : r.notes)
      std::printf("  %s\n", note.c_str());
  };
  if (name == "all") {
    for (const auto& r : run_all(cfg)) report(r);
    return 0;
  }
  Stage stage;
  if (name == "ingest") stage = Stage::Ingest;
  else if (name == "infer-party") stage = Stage::InferParty;
  else if (name == "score") stage = Stage::Score;
  else if (name == "dpp") stage = Stage::Dpp;
  else if (name == "lexicon") stage = Stage::Lexicon;
  else if (name == "regress") stage = Stage::Regress;
  else throw UsageError("unknown subcommand: " + name);
  report(run_stage(stage, cfg));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "polarlex: directed toxicity attribution and candidate-specific "
      "adversarial lexicon induction for political interaction corpora"};
  app.require_subcommand(1);

  PipelineConfig cfg;
  std::string scenario_path;
  std::string synth_out = "synth";
  std::uint64_t synth_seed = 0;
  bool synth_seed_set = false;

  for (const char* name :
       {"ingest", "infer-party", "score", "dpp", "lexicon", "regress", "all"}) {
    auto* cmd = app.add_subcommand(name, std::string("run the ") + name +
                                             (std::string(name) == "all"
                                                  ? " stages in order"
                                                  : " stage"));
    add_corpus_options(cmd, cfg);
    add_scoring_options(cmd, cfg);
    add_party_options(cmd, cfg);
    add_lexicon_options(cmd, cfg);
    cmd->add_option("--trim-fraction", cfg.trim_fraction,
                    "attention trim per end before regression")
        ->capture_default_str();
    cmd->add_option("--tier-count", cfg.tier_count, "attention tiers")
        ->capture_default_str();
  }

  auto* synth = app.add_subcommand(
      "synth", "generate a synthetic polarized corpus with ground truth");
  synth->add_option("--scenario", scenario_path,
                    "scenario config file (key = value)");
  synth->add_option("--out-dir", synth_out, "output directory")
      ->capture_default_str();
  auto* seed_opt = synth->add_option("--rng-seed", synth_seed,
                                     "scenario seed (overrides config file)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage problems exit 1, --help exits 0
  }
  synth_seed_set = seed_opt->count() > 0;

  try {
    if (synth->parsed()) {
      ScenarioConfig scenario = scenario_path.empty()
                                    ? ScenarioConfig{}
                                    : ScenarioConfig::from_file(scenario_path);
      if (synth_seed_set) scenario.rng_seed = synth_seed;
      auto out = generate_scenario(scenario, synth_out);
      std::printf("[synth] %llu tweets -> %s\n",
                  static_cast<unsigned long long>(out.n_tweets),
                  synth_out.c_str());
      return 0;
    }
    for (const auto* sub : app.get_subcommands())
      return dispatch(sub->get_name(), cfg);
    return 1;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 1;
  } catch (const DependencyError& e) {
    std::fprintf(stderr, "dependency error: %s\n", e.what());
    return 3;
  } catch (const DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
