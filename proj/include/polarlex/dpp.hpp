#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "polarlex/corpus.hpp"
#include "polarlex/party.hpp"
#include "polarlex/toxicity.hpp"

namespace polarlex {

enum class Verdict { AdversarialDirected, NotDirected, Unlabelable };
enum class VerdictReason { BelowThreshold, AuthorSameParty, AuthorUnknown,
                           Unscorable };

struct DirectedLabel {
  std::string tweet_id;
  std::string candidate_id;
  Verdict verdict = Verdict::Unlabelable;
  std::optional<VerdictReason> reason;  // absent for AdversarialDirected
};

std::string to_string(Verdict v);
std::string to_string(VerdictReason r);

using ScoreIndex = std::unordered_map<std::string, ToxicityScore>;

// One verdict per (tweet, targeted candidate) pair: adversarial-directed
// exactly when the toxicity exceeds the threshold and the author leans to
// the party opposing the candidate's. Unscorable text takes precedence over
// an unknown author for the Unlabelable reason.
DirectedLabel label_directed(const InteractionRecord& tweet,
                             std::uint32_t candidate, const Corpus& corpus,
                             const std::vector<PartyLabel>& labels,
                             const ScoreIndex& scores, double threshold);

// Every reply/mention (record, target) pair in input order.
std::vector<DirectedLabel> label_all(const Corpus& corpus,
                                     const std::vector<PartyLabel>& labels,
                                     const ScoreIndex& scores,
                                     double threshold);

struct CandidateAdversarySummary {
  std::string candidate_id;
  std::uint64_t interactions_total = 0;
  std::uint64_t labelable_count = 0;
  std::uint64_t adversarial_directed_count = 0;
  std::uint64_t naive_count = 0;  // score > threshold regardless of leaning
  double reduction_fraction = 0.0;  // 1 - directed/naive, 0 when naive = 0
};

CandidateAdversarySummary summarize(std::uint32_t candidate,
                                    const Corpus& corpus,
                                    const std::vector<PartyLabel>& labels,
                                    const ScoreIndex& scores,
                                    double threshold);

std::vector<CandidateAdversarySummary> summarize_all(
    const Corpus& corpus, const std::vector<PartyLabel>& labels,
    const ScoreIndex& scores, double threshold);

}  // namespace polarlex
