#include "polarlex/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "polarlex/io.hpp"
#include "polarlex/tokenize.hpp"

namespace polarlex {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

void check_malformed_budget(const char* what, std::uint64_t lines,
                            std::uint64_t malformed) {
  // Ratio rule kicks in past an absolute floor so a handful of bad lines in
  // a tiny file stays a skip-and-count, not a failure.
  if (malformed > 10 && malformed * 10 > lines)
    throw DataError(std::string(what) + ": " + std::to_string(malformed) +
                    " of " + std::to_string(lines) +
                    " lines malformed (>10%), refusing to continue");
}

}  // namespace

std::optional<std::uint32_t> Corpus::candidate_index(
    const std::string& id) const {
  auto it = candidate_by_id_.find(id);
  if (it != candidate_by_id_.end()) return it->second;
  return std::nullopt;
}

std::optional<std::uint32_t> Corpus::user_index(const std::string& id) const {
  auto it = user_by_id_.find(id);
  if (it != user_by_id_.end()) return it->second;
  return std::nullopt;
}

std::uint64_t Corpus::attention(std::uint32_t candidate) const {
  return attention_.at(candidate);
}

std::uint64_t Corpus::attention(const std::string& candidate_id) const {
  auto idx = candidate_index(candidate_id);
  if (!idx) throw UsageError("unknown candidate: " + candidate_id);
  return attention_[*idx];
}

const std::vector<std::uint32_t>& Corpus::candidate_interactions(
    std::uint32_t candidate) const {
  return by_candidate_.at(candidate);
}

std::map<std::string, int> Corpus::assign_tiers(int tier_count) const {
  const std::size_t n = roster_.size();
  if (tier_count < 1) throw UsageError("tier_count must be positive");
  if (static_cast<std::size_t>(tier_count) > n)
    throw UsageError("tier_count " + std::to_string(tier_count) +
                     " exceeds roster size " + std::to_string(n));
  std::vector<std::uint32_t> order(n);
  for (std::uint32_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (attention_[a] != attention_[b]) return attention_[a] > attention_[b];
    return roster_[a].candidate_id < roster_[b].candidate_id;
  });
  std::map<std::string, int> tiers;
  const std::size_t base = n / tier_count;
  const std::size_t rem = n % tier_count;
  std::size_t pos = 0;
  for (int t = 0; t < tier_count; ++t) {
    std::size_t size = base + (static_cast<std::size_t>(t) < rem ? 1 : 0);
    for (std::size_t i = 0; i < size; ++i, ++pos)
      tiers[roster_[order[pos]].candidate_id] = t + 1;
  }
  return tiers;
}

Corpus ingest_corpus(const std::string& tweets_path,
                     const std::string& users_path,
                     const std::string& follows_path,
                     const std::string& roster_path) {
  Corpus c;

  // Roster first: small, authoritative, strict.
  {
    std::ifstream in(roster_path);
    if (!in) throw DataError("cannot open roster: " + roster_path);
    std::string line;
    if (!std::getline(in, line))
      throw DataError("roster is empty: " + roster_path);
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      auto fields = split(line, ',');
      if (fields.size() != 5)
        throw DataError("roster row needs 5 fields: " + line);
      Candidate cand;
      cand.candidate_id = fields[0];
      cand.party = parse_party(fields[1]);
      cand.gender = parse_gender(fields[2]);
      for (auto& acc : split(fields[3], ';'))
        if (!acc.empty()) cand.account_ids.push_back(acc);
      if (cand.account_ids.empty())
        throw DataError("candidate without account_ids: " + cand.candidate_id);
      try {
        cand.follower_count = std::stoll(fields[4]);
      } catch (const std::exception&) {
        throw DataError("bad follower_count in roster row: " + line);
      }
      if (cand.follower_count < 0)
        throw DataError("negative follower_count: " + cand.candidate_id);
      if (c.candidate_by_id_.count(cand.candidate_id))
        throw DataError("duplicate candidate_id in roster: " +
                        cand.candidate_id);
      std::uint32_t idx = static_cast<std::uint32_t>(c.roster_.size());
      c.candidate_by_id_[cand.candidate_id] = idx;
      for (auto& acc : cand.account_ids) c.account_to_candidate_[acc] = idx;
      c.roster_.push_back(std::move(cand));
    }
  }

  auto intern_user = [&c](const std::string& id) -> std::uint32_t {
    auto it = c.user_by_id_.find(id);
    if (it != c.user_by_id_.end()) return it->second;
    std::uint32_t idx = static_cast<std::uint32_t>(c.users_.size());
    c.user_by_id_.emplace(id, idx);
    UserProfile p;
    p.user_id = id;
    c.users_.push_back(std::move(p));
    return idx;
  };

  // Resolve a target reference to a roster entry, by candidate_id first and
  // account_id second.
  auto resolve_candidate =
      [&c](const std::string& ref) -> std::optional<std::uint32_t> {
    auto it = c.candidate_by_id_.find(ref);
    if (it != c.candidate_by_id_.end()) return it->second;
    auto it2 = c.account_to_candidate_.find(ref);
    if (it2 != c.account_to_candidate_.end()) return it2->second;
    return std::nullopt;
  };

  // users.jsonl
  {
    auto st = io::for_each_jsonl(users_path, [&](const nlohmann::json& j) {
      if (!j.is_object() || !j.contains("user_id") || !j["user_id"].is_string())
        return false;
      std::string bio = j.value("bio_text", std::string());
      bool complete = j.value("friends_complete", false);
      if (j.contains("friends_complete") && !j["friends_complete"].is_boolean())
        return false;
      std::uint32_t idx = intern_user(j["user_id"].get<std::string>());
      c.users_[idx].bio_text = bio;
      c.users_[idx].hashtags = extract_hashtags(bio);
      std::sort(c.users_[idx].hashtags.begin(), c.users_[idx].hashtags.end());
      c.users_[idx].hashtags.erase(
          std::unique(c.users_[idx].hashtags.begin(),
                      c.users_[idx].hashtags.end()),
          c.users_[idx].hashtags.end());
      c.users_[idx].friends_complete = complete;
      return true;
    });
    c.stats_.user_lines = st.lines;
    c.stats_.user_malformed = st.malformed;
    check_malformed_budget("users", st.lines, st.malformed);
  }

  // follows.jsonl: follower -> followee edges onto the follower's friends set.
  {
    std::vector<std::set<std::uint32_t>> friend_sets;
    auto st = io::for_each_jsonl(follows_path, [&](const nlohmann::json& j) {
      if (!j.is_object() || !j.contains("follower") || !j.contains("followee") ||
          !j["follower"].is_string() || !j["followee"].is_string())
        return false;
      std::string follower = j["follower"].get<std::string>();
      std::string followee = j["followee"].get<std::string>();
      if (follower == followee) {
        ++c.stats_.self_follow_dropped;
        return true;
      }
      std::uint32_t fu = intern_user(follower);
      std::uint32_t fe = intern_user(followee);
      if (friend_sets.size() < c.users_.size())
        friend_sets.resize(c.users_.size());
      friend_sets[fu].insert(fe);
      return true;
    });
    friend_sets.resize(c.users_.size());
    for (std::size_t i = 0; i < friend_sets.size(); ++i)
      c.users_[i].friends.assign(friend_sets[i].begin(), friend_sets[i].end());
    c.stats_.follow_lines = st.lines;
    c.stats_.follow_malformed = st.malformed;
    check_malformed_budget("follows", st.lines, st.malformed);
  }

  // tweets.jsonl
  {
    auto st = io::for_each_jsonl(tweets_path, [&](const nlohmann::json& j) {
      if (!j.is_object()) return false;
      for (const char* key : {"tweet_id", "author_id", "kind"})
        if (!j.contains(key) || !j[key].is_string()) return false;
      InteractionRecord rec;
      rec.tweet_id = j["tweet_id"].get<std::string>();
      std::string kind_str = j["kind"].get<std::string>();
      try {
        rec.kind = parse_kind(kind_str);
      } catch (const DataError&) {
        return false;
      }
      std::vector<std::string> raw_targets;
      if (j.contains("target_candidates")) {
        if (!j["target_candidates"].is_array()) return false;
        for (auto& t : j["target_candidates"]) {
          if (!t.is_string()) return false;
          raw_targets.push_back(t.get<std::string>());
        }
      }
      bool needs_target = rec.kind == InteractionKind::Reply ||
                          rec.kind == InteractionKind::Mention;
      if (needs_target && raw_targets.empty()) return false;
      std::optional<std::string> raw_retweeted;
      if (j.contains("retweeted_candidate") && !j["retweeted_candidate"].is_null()) {
        if (!j["retweeted_candidate"].is_string()) return false;
        raw_retweeted = j["retweeted_candidate"].get<std::string>();
      }
      if (rec.kind == InteractionKind::Retweet && !raw_retweeted) return false;
      rec.text = j.value("text", std::string());
      if (rec.text.empty() && rec.kind != InteractionKind::Retweet)
        return false;
      if (j.contains("timestamp")) {
        if (!j["timestamp"].is_number()) return false;
        rec.timestamp = j["timestamp"].get<std::int64_t>();
      }
      rec.author = intern_user(j["author_id"].get<std::string>());
      for (auto& ref : raw_targets) {
        auto idx = resolve_candidate(ref);
        if (!idx) {
          ++c.stats_.unknown_target_refs;
          continue;
        }
        if (std::find(rec.target_candidates.begin(),
                      rec.target_candidates.end(),
                      *idx) == rec.target_candidates.end())
          rec.target_candidates.push_back(*idx);
      }
      if (raw_retweeted) {
        auto idx = resolve_candidate(*raw_retweeted);
        if (idx)
          rec.retweeted_candidate = idx;
        else
          ++c.stats_.unknown_target_refs;
      }
      c.interactions_.push_back(std::move(rec));
      return true;
    });
    c.stats_.tweet_lines = st.lines;
    c.stats_.tweet_malformed = st.malformed;
    check_malformed_budget("tweets", st.lines, st.malformed);
  }

  // Attention and per-candidate corpora.
  c.attention_.assign(c.roster_.size(), 0);
  c.by_candidate_.assign(c.roster_.size(), {});
  for (std::uint32_t i = 0; i < c.interactions_.size(); ++i) {
    const auto& rec = c.interactions_[i];
    if (rec.kind != InteractionKind::Reply &&
        rec.kind != InteractionKind::Mention)
      continue;
    for (std::uint32_t cand : rec.target_candidates) {
      ++c.attention_[cand];
      c.by_candidate_[cand].push_back(i);
    }
  }
  return c;
}

}  // namespace polarlex
