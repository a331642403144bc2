#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polarlex/types.hpp"

namespace polarlex {

// Two polarized communities, planted follow partition, scripted toxic and
// candidate-specific attack tweets. Everything derives from rng_seed.
struct ScenarioConfig {
  std::uint32_t n_users = 500;
  std::uint32_t n_candidates = 10;
  double p_in = 0.1;    // intra-community follow probability
  double p_out = 0.005; // inter-community follow probability
  double seed_bio_fraction = 0.2;  // users with their side's seed hashtag
  double toxic_rate = 0.1;         // of base replies/mentions
  std::uint32_t attack_terms_per_candidate = 3;
  std::uint32_t distractor_terms = 60;
  std::uint32_t plant_users_per_term = 15;
  double mean_tweets_per_user = 12.0;
  std::optional<std::uint64_t> rng_seed;  // mandatory

  static ScenarioConfig from_file(const std::string& path);
  void validate() const;  // throws UsageError
};

struct SynthOutputs {
  std::string tweets_path, users_path, follows_path, roster_path;
  std::string ground_truth_path, toxic_lexicon_path;
  std::uint64_t n_tweets = 0;
};

SynthOutputs generate_scenario(const ScenarioConfig& config,
                               const std::string& out_dir);

// Parsed ground_truth.jsonl.
struct GroundTruth {
  std::map<std::string, Leaning> user_party;
  // (tweet_id, candidate_id) -> truly directed-adversarial
  std::map<std::pair<std::string, std::string>, bool> adversarial;
  std::map<std::string, std::vector<std::string>> planted_terms;
  std::uint64_t n_pro_dem = 0, n_pro_rep = 0;

  static GroundTruth from_file(const std::string& path);
};

}  // namespace polarlex
