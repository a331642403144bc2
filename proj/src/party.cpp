#include "polarlex/party.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "json.hpp"
#include "polarlex/rng.hpp"

namespace polarlex {

namespace {

std::set<std::string> json_tag_set(const nlohmann::json& j, const char* key) {
  std::set<std::string> out;
  if (j.contains(key))
    for (auto& t : j.at(key)) out.insert(t.get<std::string>());
  return out;
}

}  // namespace

HashtagLexicon HashtagLexicon::seeds_only() {
  HashtagLexicon lex;
  lex.dem_tags = {lex.seed_dem};
  lex.rep_tags = {lex.seed_rep};
  return lex;
}

HashtagLexicon HashtagLexicon::from_json(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  HashtagLexicon lex;
  lex.seed_dem = j.value("seed_dem", lex.seed_dem);
  lex.seed_rep = j.value("seed_rep", lex.seed_rep);
  lex.dem_tags = json_tag_set(j, "dem_tags");
  lex.rep_tags = json_tag_set(j, "rep_tags");
  lex.blocklist = json_tag_set(j, "blocklist");
  lex.dem_tags.insert(lex.seed_dem);
  lex.rep_tags.insert(lex.seed_rep);
  return lex;
}

std::string HashtagLexicon::to_json() const {
  nlohmann::json j;
  j["seed_dem"] = seed_dem;
  j["seed_rep"] = seed_rep;
  j["dem_tags"] = dem_tags;
  j["rep_tags"] = rep_tags;
  j["blocklist"] = blocklist;
  return j.dump(2);
}

BootstrapOutcome bootstrap_hashtags(std::span<const UserProfile> profiles,
                                    const HashtagLexicon& seeds,
                                    double relatedness_threshold) {
  if (profiles.empty()) throw UsageError("bootstrap requires user profiles");
  if (!(relatedness_threshold > 0.0 && relatedness_threshold <= 1.0))
    throw UsageError("relatedness threshold must be in (0,1]");

  BootstrapOutcome out;
  HashtagLexicon& lex = out.lexicon;
  lex.seed_dem = seeds.seed_dem;
  lex.seed_rep = seeds.seed_rep;
  lex.blocklist = seeds.blocklist;

  // Profile sets per hashtag. Profiles are deduplicated per tag already
  // (UserProfile.hashtags is a set).
  std::map<std::string, std::vector<std::uint32_t>> tag_profiles;
  for (std::uint32_t i = 0; i < profiles.size(); ++i)
    for (const auto& tag : profiles[i].hashtags) {
      auto& list = tag_profiles[tag];
      if (list.empty() || list.back() != i) list.push_back(i);
    }

  auto expand = [&](const std::string& seed,
                    std::set<std::string>& side) -> void {
    side.insert(seed);
    auto it = tag_profiles.find(seed);
    if (it == tag_profiles.end()) {
      out.warnings.push_back("seed hashtag " + seed +
                             " absent from all profiles; using seed-only set");
      return;
    }
    const auto& seed_set = it->second;
    for (const auto& [tag, with_tag] : tag_profiles) {
      if (tag == lex.seed_dem || tag == lex.seed_rep) continue;
      // |S∩T| via merge over sorted index lists.
      std::size_t inter = 0;
      auto a = seed_set.begin();
      auto b = with_tag.begin();
      while (a != seed_set.end() && b != with_tag.end()) {
        if (*a < *b) ++a;
        else if (*b < *a) ++b;
        else { ++inter; ++a; ++b; }
      }
      std::size_t uni = seed_set.size() + with_tag.size() - inter;
      double jaccard = uni == 0 ? 0.0
                                : static_cast<double>(inter) /
                                      static_cast<double>(uni);
      if (jaccard > relatedness_threshold) side.insert(tag);
    }
  };

  expand(lex.seed_dem, lex.dem_tags);
  expand(lex.seed_rep, lex.rep_tags);

  // Tags qualifying for both sides carry no signal; drop from both.
  std::vector<std::string> both;
  for (const auto& t : lex.dem_tags)
    if (lex.rep_tags.count(t)) both.push_back(t);
  for (const auto& t : both) {
    if (t != lex.seed_dem) lex.dem_tags.erase(t);
    if (t != lex.seed_rep) lex.rep_tags.erase(t);
  }
  for (const auto& t : lex.blocklist) {
    if (t != lex.seed_dem) lex.dem_tags.erase(t);
    if (t != lex.seed_rep) lex.rep_tags.erase(t);
  }
  return out;
}

Leaning label_by_profile(const UserProfile& user,
                         const HashtagLexicon& lexicon) {
  bool dem = false, rep = false;
  for (const auto& tag : user.hashtags) {
    if (lexicon.dem_tags.count(tag)) dem = true;
    if (lexicon.rep_tags.count(tag)) rep = true;
  }
  if (dem && !rep) return Leaning::ProDem;
  if (rep && !dem) return Leaning::ProRep;
  return Leaning::Unknown;
}

Leaning label_by_retweets(std::uint32_t user, const Corpus& corpus) {
  std::uint64_t dem = 0, rep = 0;
  for (const auto& rec : corpus.interactions()) {
    if (rec.author != user || rec.kind != InteractionKind::Retweet ||
        !rec.retweeted_candidate)
      continue;
    Party p = corpus.roster()[*rec.retweeted_candidate].party;
    (p == Party::Democrat ? dem : rep) += 1;
  }
  if (dem > rep) return Leaning::ProDem;
  if (rep > dem) return Leaning::ProRep;
  return Leaning::Unknown;
}

std::vector<Leaning> label_all_by_retweets(const Corpus& corpus) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> counts(
      corpus.users().size(), {0, 0});
  for (const auto& rec : corpus.interactions()) {
    if (rec.kind != InteractionKind::Retweet || !rec.retweeted_candidate)
      continue;
    Party p = corpus.roster()[*rec.retweeted_candidate].party;
    auto& [dem, rep] = counts[rec.author];
    (p == Party::Democrat ? dem : rep) += 1;
  }
  std::vector<Leaning> out(corpus.users().size(), Leaning::Unknown);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i].first > counts[i].second) out[i] = Leaning::ProDem;
    else if (counts[i].second > counts[i].first) out[i] = Leaning::ProRep;
  }
  return out;
}

PropagationOutcome propagate_friendship_labels(
    const Corpus& corpus, const std::vector<Leaning>& seed_labels,
    int max_rounds, std::uint64_t rng_seed) {
  const std::size_t n = corpus.users().size();
  if (seed_labels.size() != n)
    throw UsageError("seed label vector size mismatch");

  PropagationOutcome out;
  out.labels = seed_labels;
  bool any_seed = false;
  for (auto l : seed_labels)
    if (l != Leaning::Unknown) { any_seed = true; break; }
  if (!any_seed) {
    out.warnings.push_back(
        "friendship propagation: empty seed set, all users stay Unknown");
    return out;
  }

  // Bidirectional simple graph from the follow lists.
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v : corpus.users()[u].friends) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
  for (auto& nb : adj) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }

  Rng rng(rng_seed);
  std::vector<std::uint32_t> order(n);
  for (std::uint32_t i = 0; i < n; ++i) order[i] = i;

  for (int round = 0; round < max_rounds; ++round) {
    rng.shuffle(order);
    bool changed = false;
    for (std::uint32_t u : order) {
      if (seed_labels[u] != Leaning::Unknown) continue;  // clamped
      std::uint32_t dem = 0, rep = 0;
      for (std::uint32_t v : adj[u]) {
        if (out.labels[v] == Leaning::ProDem) ++dem;
        else if (out.labels[v] == Leaning::ProRep) ++rep;
      }
      Leaning next = out.labels[u];
      if (dem > rep) next = Leaning::ProDem;
      else if (rep > dem) next = Leaning::ProRep;
      else if (dem > 0) {
        // Tie: keep the current label when it is one of the tied options,
        // otherwise pick uniformly. Re-rolling held labels on every tie
        // would keep the sweep oscillating forever.
        if (out.labels[u] == Leaning::Unknown)
          next = rng.bernoulli(0.5) ? Leaning::ProDem : Leaning::ProRep;
      }
      if (next != out.labels[u]) {
        out.labels[u] = next;
        changed = true;
      }
    }
    ++out.rounds;
    if (!changed) break;
  }
  return out;
}

Leaning majority_vote(Leaning profile, Leaning retweet, Leaning friendship) {
  int dem = 0, rep = 0;
  for (Leaning l : {profile, retweet, friendship}) {
    if (l == Leaning::ProDem) ++dem;
    else if (l == Leaning::ProRep) ++rep;
  }
  if (dem > rep) return Leaning::ProDem;
  if (rep > dem) return Leaning::ProRep;
  return Leaning::Unknown;
}

PartyInferenceOutcome infer_party(const Corpus& corpus,
                                  const HashtagLexicon& lexicon,
                                  const PartyInferenceParams& params) {
  PartyInferenceOutcome out;
  if (params.bootstrap) {
    auto boot = bootstrap_hashtags(corpus.users(), lexicon,
                                   params.relatedness_threshold);
    out.lexicon = std::move(boot.lexicon);
    out.warnings = std::move(boot.warnings);
  } else {
    out.lexicon = lexicon;
  }

  const std::size_t n = corpus.users().size();
  std::vector<Leaning> profile(n), seeds(n, Leaning::Unknown);
  std::vector<Leaning> retweet = label_all_by_retweets(corpus);
  for (std::uint32_t u = 0; u < n; ++u)
    profile[u] = label_by_profile(corpus.users()[u], out.lexicon);

  // Seeds: profile/retweet evidence that does not conflict, with at least
  // one signal known.
  for (std::uint32_t u = 0; u < n; ++u) {
    Leaning p = profile[u], r = retweet[u];
    if (p == Leaning::Unknown) seeds[u] = r;
    else if (r == Leaning::Unknown || r == p) seeds[u] = p;
  }

  auto prop = propagate_friendship_labels(corpus, seeds, params.max_rounds,
                                          params.rng_seed);
  for (auto& w : prop.warnings) out.warnings.push_back(w);

  out.labels.resize(n);
  for (std::uint32_t u = 0; u < n; ++u) {
    PartyLabel& pl = out.labels[u];
    pl.user_id = corpus.users()[u].user_id;
    pl.profile = profile[u];
    pl.retweet = retweet[u];
    pl.friendship = prop.labels[u];
    pl.label = majority_vote(pl.profile, pl.retweet, pl.friendship);
  }
  return out;
}

}  // namespace polarlex
