#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "polarlex/types.hpp"

namespace polarlex {

struct Candidate {
  std::string candidate_id;
  Party party = Party::Democrat;
  Gender gender = Gender::Female;
  std::vector<std::string> account_ids;  // non-empty
  std::int64_t follower_count = 0;
};

struct UserProfile {
  std::string user_id;
  std::string bio_text;
  std::vector<std::string> hashtags;   // lowercased, '#'-prefixed, sorted
  std::vector<std::uint32_t> friends;  // user indices this user follows; sorted
  bool friends_complete = false;
};

struct InteractionRecord {
  std::string tweet_id;
  std::uint32_t author = 0;  // user index
  InteractionKind kind = InteractionKind::Original;
  std::vector<std::uint32_t> target_candidates;  // candidate indices, record order
  std::optional<std::uint32_t> retweeted_candidate;
  std::string text;
  std::int64_t timestamp = 0;
};

struct IngestStats {
  std::uint64_t tweet_lines = 0, tweet_malformed = 0;
  std::uint64_t user_lines = 0, user_malformed = 0;
  std::uint64_t follow_lines = 0, follow_malformed = 0;
  std::uint64_t unknown_target_refs = 0;  // targets not resolvable via roster
  std::uint64_t self_follow_dropped = 0;
};

// Immutable after ingestion; safe to share across threads for reads.
class Corpus {
 public:
  const std::vector<Candidate>& roster() const { return roster_; }
  const std::vector<UserProfile>& users() const { return users_; }
  const std::vector<InteractionRecord>& interactions() const {
    return interactions_;
  }

  std::optional<std::uint32_t> candidate_index(const std::string& id) const;
  std::optional<std::uint32_t> user_index(const std::string& id) const;

  // Replies + mentions targeting the candidate.
  std::uint64_t attention(std::uint32_t candidate) const;
  std::uint64_t attention(const std::string& candidate_id) const;  // throws

  // Candidate-specific corpus: indices of reply/mention records targeting
  // the candidate, in input order.
  const std::vector<std::uint32_t>& candidate_interactions(
      std::uint32_t candidate) const;

  // Candidates ranked by attention (desc, candidate_id asc on ties) and cut
  // into tier_count equal-count groups; tier 1 holds the highest attention.
  // Group sizes differ by at most one; earlier tiers take the remainder.
  std::map<std::string, int> assign_tiers(int tier_count = 5) const;

  const IngestStats& stats() const { return stats_; }

 private:
  friend Corpus ingest_corpus(const std::string&, const std::string&,
                              const std::string&, const std::string&);
  std::vector<Candidate> roster_;
  std::vector<UserProfile> users_;
  std::vector<InteractionRecord> interactions_;
  std::unordered_map<std::string, std::uint32_t> candidate_by_id_;
  std::unordered_map<std::string, std::uint32_t> account_to_candidate_;
  std::unordered_map<std::string, std::uint32_t> user_by_id_;
  std::vector<std::uint64_t> attention_;
  std::vector<std::vector<std::uint32_t>> by_candidate_;
  IngestStats stats_;
};

// Streams the three .jsonl files and the roster CSV into an indexed corpus.
// Malformed lines are counted and skipped; more than 10% malformed in any
// file is fatal. Missing files and duplicate roster candidate_ids are fatal.
Corpus ingest_corpus(const std::string& tweets_path,
                     const std::string& users_path,
                     const std::string& follows_path,
                     const std::string& roster_path);

}  // namespace polarlex
