#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "polarlex/corpus.hpp"
#include "polarlex/types.hpp"

namespace polarlex {

struct HashtagLexicon {
  std::string seed_dem = "#bluewave";
  std::string seed_rep = "#maga";
  std::set<std::string> dem_tags;  // includes seed_dem
  std::set<std::string> rep_tags;  // includes seed_rep
  std::set<std::string> blocklist;

  // Bundled defaults: the politically related hashtag lists with the
  // ambiguous ones on the blocklist.
  static HashtagLexicon defaults();
  static HashtagLexicon seeds_only();
  static HashtagLexicon from_json(const std::string& json_text);
  std::string to_json() const;
};

struct BootstrapOutcome {
  HashtagLexicon lexicon;
  std::vector<std::string> warnings;
};

// Single-round seed expansion: a hashtag joins a seed's set when the Jaccard
// coefficient of the profile sets containing it and the seed exceeds the
// threshold. Tags qualifying for both seeds, and blocklisted tags, are
// removed from both sides; seeds always stay in their own sets.
BootstrapOutcome bootstrap_hashtags(std::span<const UserProfile> profiles,
                                    const HashtagLexicon& seeds,
                                    double relatedness_threshold = 0.005);

Leaning label_by_profile(const UserProfile& user, const HashtagLexicon& lexicon);

Leaning label_by_retweets(std::uint32_t user, const Corpus& corpus);
std::vector<Leaning> label_all_by_retweets(const Corpus& corpus);

struct PropagationOutcome {
  std::vector<Leaning> labels;
  int rounds = 0;
  std::vector<std::string> warnings;
};

// Asynchronous majority-of-neighbors label propagation over the
// bidirectionalized follow graph. Node order is reshuffled every round from
// rng_seed; seed labels are clamped; Unknown neighbors are ignored in the
// majority; ties keep the current label when it is among the tied ones and
// are otherwise broken randomly. Stops after a full round without changes.
PropagationOutcome propagate_friendship_labels(
    const Corpus& corpus, const std::vector<Leaning>& seed_labels,
    int max_rounds = 100, std::uint64_t rng_seed = 0);

// Majority among the non-Unknown sub-labels; ties and the empty case give
// Unknown. Permutation-invariant.
Leaning majority_vote(Leaning profile, Leaning retweet, Leaning friendship);

struct PartyLabel {
  std::string user_id;
  Leaning label = Leaning::Unknown;
  Leaning profile = Leaning::Unknown;
  Leaning retweet = Leaning::Unknown;
  Leaning friendship = Leaning::Unknown;
};

struct PartyInferenceParams {
  double relatedness_threshold = 0.005;
  int max_rounds = 100;
  std::uint64_t rng_seed = 0;
  bool bootstrap = true;  // expand the lexicon from this corpus's profiles
};

struct PartyInferenceOutcome {
  std::vector<PartyLabel> labels;  // by user index
  HashtagLexicon lexicon;          // as used for the profile signal
  std::vector<std::string> warnings;
};

// Full three-signal pipeline. Propagation seeds are the users whose profile
// and retweet signals are non-conflicting with at least one of them known.
PartyInferenceOutcome infer_party(const Corpus& corpus,
                                  const HashtagLexicon& lexicon,
                                  const PartyInferenceParams& params);

}  // namespace polarlex
