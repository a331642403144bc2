#include "polarlex/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "json.hpp"
#include "polarlex/io.hpp"
#include "polarlex/rng.hpp"

namespace polarlex {

namespace {

const std::vector<std::pair<std::string, double>>& toxic_pool() {
  static const std::vector<std::pair<std::string, double>> pool = {
      {"vile", 0.93},    {"disgrace", 0.88}, {"crooked", 0.86},
      {"pathetic", 0.9}, {"traitor", 0.92},  {"corrupt", 0.85},
      {"fraud", 0.89},   {"spineless", 0.87}};
  return pool;
}

const std::vector<std::string>& dem_secondary_tags() {
  static const std::vector<std::string> tags = {"#voteblue", "#resist",
                                                "#bluetsunami", "#uniteblue"};
  return tags;
}

const std::vector<std::string>& rep_secondary_tags() {
  static const std::vector<std::string> tags = {"#redwave", "#kag",
                                                "#trumptrain", "#americafirst"};
  return tags;
}

std::string candidate_id_for(std::uint32_t i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "c%02u", i);
  return buf;
}

std::string user_id_for(std::uint32_t i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "u%06u", i);
  return buf;
}

}  // namespace

ScenarioConfig ScenarioConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open scenario config: " + path);
  ScenarioConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw UsageError("scenario config line " + std::to_string(lineno) +
                         " is not key = value");
      continue;
    }
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "n_users") cfg.n_users = std::stoul(value);
      else if (key == "n_candidates") cfg.n_candidates = std::stoul(value);
      else if (key == "p_in") cfg.p_in = std::stod(value);
      else if (key == "p_out") cfg.p_out = std::stod(value);
      else if (key == "seed_bio_fraction") cfg.seed_bio_fraction = std::stod(value);
      else if (key == "toxic_rate") cfg.toxic_rate = std::stod(value);
      else if (key == "attack_terms_per_candidate")
        cfg.attack_terms_per_candidate = std::stoul(value);
      else if (key == "distractor_terms") cfg.distractor_terms = std::stoul(value);
      else if (key == "plant_users_per_term")
        cfg.plant_users_per_term = std::stoul(value);
      else if (key == "mean_tweets_per_user")
        cfg.mean_tweets_per_user = std::stod(value);
      else if (key == "rng_seed") cfg.rng_seed = std::stoull(value);
      else throw UsageError("unknown scenario config key: " + key);
    } catch (const std::invalid_argument&) {
      throw UsageError("bad value for scenario key " + key + ": " + value);
    }
  }
  return cfg;
}

void ScenarioConfig::validate() const {
  if (!rng_seed)
    throw UsageError("scenario rng_seed is mandatory (full determinism)");
  for (double p : {p_in, p_out, seed_bio_fraction, toxic_rate})
    if (p < 0.0 || p > 1.0)
      throw UsageError("scenario probabilities must lie in [0,1]");
  if (n_candidates < 2)
    throw UsageError("need at least one candidate per party");
  if (n_users < 4) throw UsageError("need at least 4 users");
  if (mean_tweets_per_user <= 0.0)
    throw UsageError("mean_tweets_per_user must be positive");
  if (distractor_terms < 1) throw UsageError("need at least one distractor term");
  if (attack_terms_per_candidate > distractor_terms)
    throw UsageError("planted terms exceed the vocabulary budget (" +
                     std::to_string(attack_terms_per_candidate) + " > " +
                     std::to_string(distractor_terms) + " distractors)");
  if (plant_users_per_term < 1)
    throw UsageError("plant_users_per_term must be positive");
  if (plant_users_per_term > n_users / 2)
    throw UsageError("plant_users_per_term exceeds a community's size");
}

SynthOutputs generate_scenario(const ScenarioConfig& config,
                               const std::string& out_dir) {
  config.validate();
  Rng root(*config.rng_seed);

  const std::uint32_t n_users = config.n_users;
  const std::uint32_t n_cands = config.n_candidates;

  // Roster: alternating parties and genders.
  std::string roster = "candidate_id,party,gender,account_ids,follower_count\n";
  std::vector<Party> cand_party(n_cands);
  std::vector<std::uint32_t> dem_cands, rep_cands;
  {
    Rng rng = root.derive(1);
    for (std::uint32_t i = 0; i < n_cands; ++i) {
      cand_party[i] = i % 2 == 0 ? Party::Democrat : Party::Republican;
      (cand_party[i] == Party::Democrat ? dem_cands : rep_cands).push_back(i);
      std::int64_t followers =
          static_cast<std::int64_t>(std::pow(10.0, 2.0 + 3.0 * rng.unit()));
      roster += candidate_id_for(i) + "," + to_string(cand_party[i]) + "," +
                (i % 4 < 2 ? "Female" : "Male") + ",acct_" +
                candidate_id_for(i) + "," + std::to_string(followers) + "\n";
    }
  }

  // Users: shuffled halves give the party assignment.
  std::vector<Leaning> user_party(n_users);
  {
    Rng rng = root.derive(2);
    std::vector<std::uint32_t> order(n_users);
    for (std::uint32_t i = 0; i < n_users; ++i) order[i] = i;
    rng.shuffle(order);
    for (std::uint32_t pos = 0; pos < n_users; ++pos)
      user_party[order[pos]] =
          pos < (n_users + 1) / 2 ? Leaning::ProDem : Leaning::ProRep;
  }
  std::vector<std::uint32_t> dem_users, rep_users;
  for (std::uint32_t u = 0; u < n_users; ++u)
    (user_party[u] == Leaning::ProDem ? dem_users : rep_users).push_back(u);

  // Follow edges: a connectivity cycle inside each community plus geometric
  // skip-sampled extras at p_in, and cross edges at p_out.
  std::string follows;
  {
    Rng rng = root.derive(3);
    auto emit = [&](std::uint32_t follower, std::uint32_t followee) {
      follows += "{\"follower\":\"" + user_id_for(follower) +
                 "\",\"followee\":\"" + user_id_for(followee) + "\"}\n";
    };
    auto sample_pairs = [&](const std::vector<std::uint32_t>& a,
                            const std::vector<std::uint32_t>& b, bool same,
                            double p) {
      if (p <= 0.0) return;
      // Skip-sample over the (upper-triangular when same) pair grid.
      const std::uint64_t rows = a.size();
      const std::uint64_t cols = b.size();
      const std::uint64_t total = same ? rows * (rows - 1) / 2 : rows * cols;
      const double log1mp = std::log1p(-p);
      std::uint64_t idx = 0;
      while (true) {
        double u = rng.unit();
        std::uint64_t skip =
            p >= 1.0 ? 0
                     : static_cast<std::uint64_t>(
                           std::floor(std::log1p(-u) / log1mp));
        idx += skip;
        if (idx >= total) break;
        std::uint64_t i, j;
        if (same) {
          // Unrank the strictly-upper-triangular index.
          std::uint64_t row = 0;
          std::uint64_t rem = idx;
          std::uint64_t avail = rows - 1;
          while (rem >= avail) {
            rem -= avail;
            ++row;
            --avail;
          }
          i = row;
          j = row + 1 + rem;
        } else {
          i = idx / cols;
          j = idx % cols;
        }
        std::uint32_t x = a[i], y = same ? a[j] : b[j];
        if (rng.bernoulli(0.5)) std::swap(x, y);
        emit(x, y);
        ++idx;
      }
    };
    for (const auto* community : {&dem_users, &rep_users}) {
      const auto& c = *community;
      for (std::size_t i = 0; i + 1 < c.size(); ++i) emit(c[i], c[i + 1]);
      if (c.size() > 2) emit(c.back(), c.front());
      sample_pairs(c, c, true, config.p_in);
    }
    sample_pairs(dem_users, rep_users, false, config.p_out);
  }

  // Bios.
  std::string users_jsonl;
  {
    Rng rng = root.derive(4);
    for (std::uint32_t u = 0; u < n_users; ++u) {
      bool is_dem = user_party[u] == Leaning::ProDem;
      const auto& secondary =
          is_dem ? dem_secondary_tags() : rep_secondary_tags();
      std::string bio;
      double roll = rng.unit();
      if (roll < config.seed_bio_fraction) {
        bio = is_dem ? "#bluewave" : "#maga";
        if (rng.bernoulli(0.5))
          bio += " " + secondary[rng.below(secondary.size())];
        if (rng.bernoulli(0.1)) bio += " #vote";
      } else if (roll < config.seed_bio_fraction * 1.3) {
        bio = secondary[rng.below(secondary.size())];
      }
      nlohmann::json j;
      j["user_id"] = user_id_for(u);
      j["bio_text"] = bio;
      j["friends_complete"] = true;
      users_jsonl += j.dump() + "\n";
    }
  }

  // Distractor vocabulary.
  std::vector<std::string> distractors;
  for (std::uint32_t t = 0; t < config.distractor_terms; ++t) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "topic%03u", t);
    distractors.push_back(buf);
  }

  std::string tweets;
  std::string ground_truth;
  std::uint64_t tweet_counter = 0;
  std::uint64_t timestamp = 1000000;

  auto tweet_id_for = [&]() {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "t%08llu",
                  static_cast<unsigned long long>(tweet_counter++));
    return std::string(buf);
  };

  auto emit_tweet = [&](const std::string& author, const std::string& kind,
                        const std::vector<std::uint32_t>& targets,
                        std::optional<std::uint32_t> retweeted,
                        const std::string& text,
                        const std::vector<bool>& adversarial) {
    nlohmann::json j;
    std::string id = tweet_id_for();
    j["tweet_id"] = id;
    j["author_id"] = author;
    j["kind"] = kind;
    auto targets_json = nlohmann::json::array();
    for (auto c : targets) targets_json.push_back(candidate_id_for(c));
    j["target_candidates"] = targets_json;
    if (retweeted)
      j["retweeted_candidate"] = candidate_id_for(*retweeted);
    else
      j["retweeted_candidate"] = nullptr;
    j["text"] = text;
    j["timestamp"] = timestamp++;
    tweets += j.dump() + "\n";
    for (std::size_t i = 0; i < targets.size(); ++i) {
      nlohmann::json g;
      g["kind"] = "tweet_target";
      g["tweet_id"] = id;
      g["candidate_id"] = candidate_id_for(targets[i]);
      g["adversarial"] = adversarial[i];
      ground_truth += g.dump() + "\n";
    }
    return id;
  };

  // Base traffic.
  {
    Rng rng = root.derive(5);
    auto distractor_text = [&](int lo, int hi) {
      int count = lo + int(rng.below(std::uint64_t(hi - lo + 1)));
      std::string text;
      for (int w = 0; w < count; ++w) {
        if (!text.empty()) text += ' ';
        text += distractors[rng.below(distractors.size())];
      }
      return text;
    };
    for (std::uint32_t u = 0; u < n_users; ++u) {
      const bool is_dem = user_party[u] == Leaning::ProDem;
      const auto& own = is_dem ? dem_cands : rep_cands;
      const auto& opp = is_dem ? rep_cands : dem_cands;
      int count = std::max(
          1, int(std::llround(config.mean_tweets_per_user * (0.5 + rng.unit()))));
      for (int k = 0; k < count; ++k) {
        double kind_roll = rng.unit();
        if (kind_roll < 0.20) {
          // Retweet, strongly own-party.
          const auto& side = rng.bernoulli(0.92) ? own : opp;
          emit_tweet(user_id_for(u), "retweet", {},
                     side[rng.below(side.size())], "", {});
          continue;
        }
        if (kind_roll < 0.25) {
          emit_tweet(user_id_for(u), "original", {}, std::nullopt,
                     distractor_text(3, 7), {});
          continue;
        }
        std::string kind = kind_roll < 0.65 ? "reply" : "mention";
        const auto& side = rng.bernoulli(0.5) ? opp : own;
        std::vector<std::uint32_t> targets = {side[rng.below(side.size())]};
        if (kind == "mention" && rng.bernoulli(0.05)) {
          std::uint32_t extra = std::uint32_t(rng.below(n_cands));
          if (extra != targets[0]) targets.push_back(extra);
        }
        std::string text = distractor_text(2, 5);
        bool toxic = rng.bernoulli(config.toxic_rate);
        if (toxic) {
          const auto& tox = toxic_pool();
          text += " " + tox[rng.below(tox.size())].first;
          if (rng.bernoulli(0.3)) text += " " + tox[rng.below(tox.size())].first;
        }
        std::vector<bool> adversarial;
        for (auto target : targets)
          adversarial.push_back(toxic &&
                                user_party[u] ==
                                    opposing_leaning(cand_party[target]));
        emit_tweet(user_id_for(u), kind, targets, std::nullopt, text,
                   adversarial);
      }
    }
  }

  // Planted candidate-specific attack terms.
  std::vector<std::pair<std::uint32_t, std::string>> planted;  // (cand, term)
  {
    Rng rng = root.derive(6);
    for (std::uint32_t c = 0; c < n_cands; ++c) {
      const auto& attackers =
          cand_party[c] == Party::Democrat ? rep_users : dem_users;
      for (std::uint32_t j = 0; j < config.attack_terms_per_candidate; ++j) {
        std::string term = "smear" + candidate_id_for(c) + "x" +
                           std::to_string(j);
        planted.push_back({c, term});
        auto pick = rng.sample_indices(
            std::uint32_t(attackers.size()),
            std::min<std::uint32_t>(config.plant_users_per_term,
                                    std::uint32_t(attackers.size())));
        std::sort(pick.begin(), pick.end());
        for (auto pi : pick) {
          std::uint32_t attacker = attackers[pi];
          // Attack campaigns repeat: 2-3 tweets per user, term-heavy text.
          int reps = 2 + (rng.bernoulli(0.5) ? 1 : 0);
          for (int rcount = 0; rcount < reps; ++rcount) {
            // Subtle attack: no toxic token, so the adversarial flag (which
            // records toxic-and-opposing) stays false.
            std::string text = term;
            int extra = 1 + int(rng.below(2));
            for (int w = 0; w < extra; ++w)
              text += " " + distractors[rng.below(distractors.size())];
            emit_tweet(user_id_for(attacker), "reply", {c}, std::nullopt, text,
                       {false});
          }
          if (config.toxic_rate > 0.0 && rng.bernoulli(0.9)) {
            // Explicit toxic interaction, qualifying the user as a seed.
            const auto& tox = toxic_pool();
            std::string text = distractors[rng.below(distractors.size())] +
                               " " + tox[rng.below(tox.size())].first;
            emit_tweet(user_id_for(attacker), "reply", {c}, std::nullopt, text,
                       {true});
          }
        }
      }
    }
  }

  // Ground truth header rows.
  std::string gt_prefix;
  {
    nlohmann::json meta;
    meta["kind"] = "meta";
    meta["n_users"] = n_users;
    meta["n_pro_dem"] = dem_users.size();
    meta["n_pro_rep"] = rep_users.size();
    meta["rng_seed"] = *config.rng_seed;
    gt_prefix += meta.dump() + "\n";
    for (std::uint32_t u = 0; u < n_users; ++u) {
      nlohmann::json j;
      j["kind"] = "user_party";
      j["user_id"] = user_id_for(u);
      j["party"] = to_string(user_party[u]);
      gt_prefix += j.dump() + "\n";
    }
    for (const auto& [c, term] : planted) {
      nlohmann::json j;
      j["kind"] = "planted_term";
      j["candidate_id"] = candidate_id_for(c);
      j["term"] = term;
      gt_prefix += j.dump() + "\n";
    }
  }

  nlohmann::json lexicon;
  for (const auto& [term, weight] : toxic_pool()) lexicon[term] = weight;

  SynthOutputs out;
  out.tweets_path = out_dir + "/tweets.jsonl";
  out.users_path = out_dir + "/users.jsonl";
  out.follows_path = out_dir + "/follows.jsonl";
  out.roster_path = out_dir + "/roster.csv";
  out.ground_truth_path = out_dir + "/ground_truth.jsonl";
  out.toxic_lexicon_path = out_dir + "/toxic_lexicon.json";
  out.n_tweets = tweet_counter;
  io::atomic_write_file(out.tweets_path, tweets);
  io::atomic_write_file(out.users_path, users_jsonl);
  io::atomic_write_file(out.follows_path, follows);
  io::atomic_write_file(out.roster_path, roster);
  io::atomic_write_file(out.ground_truth_path, gt_prefix + ground_truth);
  io::atomic_write_file(out.toxic_lexicon_path, lexicon.dump(2) + "\n");
  return out;
}

GroundTruth GroundTruth::from_file(const std::string& path) {
  GroundTruth gt;
  io::for_each_jsonl(path, [&](const nlohmann::json& j) {
    std::string kind = j.value("kind", "");
    if (kind == "meta") {
      gt.n_pro_dem = j.value("n_pro_dem", 0u);
      gt.n_pro_rep = j.value("n_pro_rep", 0u);
    } else if (kind == "user_party") {
      gt.user_party[j.at("user_id").get<std::string>()] =
          parse_leaning(j.at("party").get<std::string>());
    } else if (kind == "tweet_target") {
      gt.adversarial[{j.at("tweet_id").get<std::string>(),
                      j.at("candidate_id").get<std::string>()}] =
          j.at("adversarial").get<bool>();
    } else if (kind == "planted_term") {
      gt.planted_terms[j.at("candidate_id").get<std::string>()].push_back(
          j.at("term").get<std::string>());
    } else {
      return false;
    }
    return true;
  });
  return gt;
}

}  // namespace polarlex
