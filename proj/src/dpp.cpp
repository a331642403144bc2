#include "polarlex/dpp.hpp"

#include <algorithm>

namespace polarlex {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::AdversarialDirected: return "adversarial_directed";
    case Verdict::NotDirected: return "not_directed";
    default: return "unlabelable";
  }
}

std::string to_string(VerdictReason r) {
  switch (r) {
    case VerdictReason::BelowThreshold: return "below_threshold";
    case VerdictReason::AuthorSameParty: return "author_same_party";
    case VerdictReason::AuthorUnknown: return "author_unknown";
    default: return "unscorable";
  }
}

DirectedLabel label_directed(const InteractionRecord& tweet,
                             std::uint32_t candidate, const Corpus& corpus,
                             const std::vector<PartyLabel>& labels,
                             const ScoreIndex& scores, double threshold) {
  if (std::find(tweet.target_candidates.begin(), tweet.target_candidates.end(),
                candidate) == tweet.target_candidates.end())
    throw UsageError("tweet " + tweet.tweet_id + " does not target candidate " +
                     corpus.roster()[candidate].candidate_id);

  DirectedLabel out;
  out.tweet_id = tweet.tweet_id;
  out.candidate_id = corpus.roster()[candidate].candidate_id;

  auto sit = scores.find(tweet.tweet_id);
  const bool scorable = sit != scores.end() && sit->second.scorable &&
                        sit->second.score.has_value();
  if (!scorable) {
    out.verdict = Verdict::Unlabelable;
    out.reason = VerdictReason::Unscorable;
    return out;
  }
  const Leaning author = labels[tweet.author].label;
  if (author == Leaning::Unknown) {
    out.verdict = Verdict::Unlabelable;
    out.reason = VerdictReason::AuthorUnknown;
    return out;
  }
  if (*sit->second.score <= threshold) {
    out.verdict = Verdict::NotDirected;
    out.reason = VerdictReason::BelowThreshold;
    return out;
  }
  if (opposes(author, corpus.roster()[candidate].party)) {
    out.verdict = Verdict::AdversarialDirected;
    return out;
  }
  out.verdict = Verdict::NotDirected;
  out.reason = VerdictReason::AuthorSameParty;
  return out;
}

std::vector<DirectedLabel> label_all(const Corpus& corpus,
                                     const std::vector<PartyLabel>& labels,
                                     const ScoreIndex& scores,
                                     double threshold) {
  std::vector<DirectedLabel> out;
  for (const auto& rec : corpus.interactions()) {
    if (rec.kind != InteractionKind::Reply &&
        rec.kind != InteractionKind::Mention)
      continue;
    for (std::uint32_t cand : rec.target_candidates)
      out.push_back(
          label_directed(rec, cand, corpus, labels, scores, threshold));
  }
  return out;
}

CandidateAdversarySummary summarize(std::uint32_t candidate,
                                    const Corpus& corpus,
                                    const std::vector<PartyLabel>& labels,
                                    const ScoreIndex& scores,
                                    double threshold) {
  CandidateAdversarySummary s;
  s.candidate_id = corpus.roster()[candidate].candidate_id;
  for (std::uint32_t rec_idx : corpus.candidate_interactions(candidate)) {
    const auto& rec = corpus.interactions()[rec_idx];
    ++s.interactions_total;
    auto sit = scores.find(rec.tweet_id);
    const bool scorable = sit != scores.end() && sit->second.scorable &&
                          sit->second.score.has_value();
    if (scorable && *sit->second.score > threshold) ++s.naive_count;
    auto lab = label_directed(rec, candidate, corpus, labels, scores, threshold);
    if (lab.verdict != Verdict::Unlabelable) ++s.labelable_count;
    if (lab.verdict == Verdict::AdversarialDirected)
      ++s.adversarial_directed_count;
  }
  s.reduction_fraction =
      s.naive_count == 0
          ? 0.0
          : 1.0 - static_cast<double>(s.adversarial_directed_count) /
                      static_cast<double>(s.naive_count);
  return s;
}

std::vector<CandidateAdversarySummary> summarize_all(
    const Corpus& corpus, const std::vector<PartyLabel>& labels,
    const ScoreIndex& scores, double threshold) {
  std::vector<CandidateAdversarySummary> out;
  out.reserve(corpus.roster().size());
  for (std::uint32_t c = 0; c < corpus.roster().size(); ++c)
    out.push_back(summarize(c, corpus, labels, scores, threshold));
  return out;
}

}  // namespace polarlex
