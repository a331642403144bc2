#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polarlex/corpus.hpp"
#include "polarlex/dpp.hpp"
#include "polarlex/party.hpp"

namespace polarlex {

struct PipelineConfig {
  // Input corpus files.
  std::string tweets_path, users_path, follows_path, roster_path;
  std::string out_dir = "out";

  // Toxicity scoring.
  std::string scorer = "lexicon";  // lexicon | remote
  std::string toxicity_lexicon_path;  // empty -> built-in list
  double threshold = 0.7;
  std::string cache_path;  // empty -> <out_dir>/scorer_cache.jsonl
  std::string remote_host = "127.0.0.1";
  int remote_port = 0;
  std::string remote_endpoint = "/score";
  int remote_timeout_ms = 5000;
  int max_in_flight = 4;

  // Party inference.
  std::string hashtag_lexicon_path;  // empty -> bundled defaults
  double relatedness_threshold = 0.005;
  int max_rounds = 100;

  // Embeddings and lexicon induction.
  std::uint32_t vocab_min_users = 10;
  int cooc_window = 4;
  std::uint32_t embed_dim = 100;
  double embed_alpha = 0.75;
  int knn_k = 10;
  std::uint64_t min_interactions = 800;
  int runs = 50;
  double seed_fraction = 0.7;
  double beta = 0.9;
  double walk_tol = 1e-6;
  int walk_max_iters = 500;
  std::uint32_t top_n = 50;

  // Regression.
  double trim_fraction = 0.05;

  // Global.
  std::uint64_t rng_seed = 0;
  int tier_count = 5;
  int workers = 2;
  bool force = false;
};

enum class Stage { Ingest, InferParty, Score, Dpp, Lexicon, Regress };

std::string stage_name(Stage s);
std::vector<std::string> stage_outputs(Stage s);  // file names under out_dir

struct StageResult {
  Stage stage;
  bool skipped = false;  // manifest said everything is up to date
  std::vector<std::string> notes;
};

// Runs one stage: verifies upstream artifacts are present and fresh (unless
// force), skips when its own manifest entry matches, writes outputs
// atomically and records input/config hashes in <out_dir>/manifest.json.
StageResult run_stage(Stage s, const PipelineConfig& config);

// ingest -> infer-party -> score -> dpp -> lexicon -> regress.
std::vector<StageResult> run_all(const PipelineConfig& config);

// Artifact loaders (used by downstream stages and tests).
std::vector<PartyLabel> load_party_labels(const std::string& path,
                                          const Corpus& corpus);
ScoreIndex load_toxicity_scores(const std::string& path);
std::vector<CandidateAdversarySummary> load_dpp_summaries(
    const std::string& path, const Corpus& corpus);

}  // namespace polarlex
