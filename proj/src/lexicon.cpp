#include "polarlex/lexicon.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <thread>

#include "polarlex/io.hpp"
#include "polarlex/kernels.hpp"
#include "polarlex/rng.hpp"
#include "polarlex/tokenize.hpp"

namespace polarlex {

std::optional<UserTermGraph> build_graph(const Corpus& corpus,
                                         std::uint32_t candidate,
                                         const Vocabulary& vocab,
                                         const EmbeddingTable& embeddings,
                                         const GraphParams& params,
                                         std::vector<std::string>* notices) {
  const auto& cand = corpus.roster()[candidate];
  if (corpus.attention(candidate) < params.min_interactions) {
    if (notices)
      notices->push_back("candidate " + cand.candidate_id + " skipped: " +
                         std::to_string(corpus.attention(candidate)) +
                         " interactions < " +
                         std::to_string(params.min_interactions));
    return std::nullopt;
  }
  if (vocab.terms.size() != embeddings.terms.size())
    throw UsageError("vocabulary and embedding table disagree");

  UserTermGraph g;
  g.candidate_id = cand.candidate_id;
  g.n_terms = static_cast<std::uint32_t>(vocab.terms.size());
  g.term_names = vocab.terms;

  // Usage stats: per user, tweets at the candidate and tweets per term.
  struct Usage {
    std::uint32_t tweets = 0;
    std::unordered_map<std::uint32_t, std::uint32_t> term_tweets;
  };
  std::unordered_map<std::uint32_t, Usage> usage;  // corpus user -> usage
  std::vector<std::uint32_t> term_scratch;
  for (std::uint32_t rec_idx : corpus.candidate_interactions(candidate)) {
    const auto& rec = corpus.interactions()[rec_idx];
    auto& u = usage[rec.author];
    ++u.tweets;
    term_scratch.clear();
    for (const auto& tok : tokenize(rec.text)) {
      auto it = vocab.index.find(tok);
      if (it != vocab.index.end()) term_scratch.push_back(it->second);
    }
    std::sort(term_scratch.begin(), term_scratch.end());
    term_scratch.erase(std::unique(term_scratch.begin(), term_scratch.end()),
                       term_scratch.end());
    for (std::uint32_t t : term_scratch) ++u.term_tweets[t];
  }

  // Graph users: those who used at least one vocabulary term, in corpus order.
  std::vector<std::uint32_t> users;
  for (const auto& [user, u] : usage)
    if (!u.term_tweets.empty()) users.push_back(user);
  std::sort(users.begin(), users.end());
  for (std::uint32_t cu : users) {
    std::uint32_t node = g.n_terms + static_cast<std::uint32_t>(g.user_ids.size());
    g.user_node[cu] = node;
    g.user_ids.push_back(corpus.users()[cu].user_id);
    g.user_corpus_index.push_back(cu);
  }

  const std::size_t n_nodes = g.n_terms + g.user_ids.size();
  g.out.assign(n_nodes, {});

  // Term-term edges from the kNN lists, clipped and max-normalized.
  auto nn = knn(embeddings, params.k);
  if (notices)
    for (auto& w : nn.warnings) notices->push_back(w);
  double max_cos = 0.0;
  for (std::uint32_t t = 0; t < g.n_terms; ++t)
    for (double cos : nn.similarities[t]) max_cos = std::max(max_cos, cos);
  if (max_cos > 0.0) {
    for (std::uint32_t t = 0; t < g.n_terms; ++t)
      for (std::size_t j = 0; j < nn.neighbors[t].size(); ++j) {
        double w = std::max(nn.similarities[t][j], 0.0) / max_cos;
        if (w <= 0.0) continue;
        g.out[t].push_back({nn.neighbors[t][j], w});
        ++g.term_edges;
      }
  }

  // Usage edges, both directions.
  for (std::uint32_t gi = 0; gi < g.user_corpus_index.size(); ++gi) {
    std::uint32_t cu = g.user_corpus_index[gi];
    std::uint32_t unode = g.n_terms + gi;
    const auto& u = usage[cu];
    std::vector<std::pair<std::uint32_t, double>> weights;
    weights.reserve(u.term_tweets.size());
    for (const auto& [t, cnt] : u.term_tweets)
      weights.push_back(
          {t, static_cast<double>(cnt) / static_cast<double>(u.tweets)});
    std::sort(weights.begin(), weights.end());
    for (const auto& [t, w] : weights) {
      g.out[unode].push_back({t, w});
      g.out[t].push_back({unode, w});
      g.usage_edges += 2;
    }
  }

  // Follow edges between graph users: followee -> follower.
  for (std::uint32_t gi = 0; gi < g.user_corpus_index.size(); ++gi) {
    std::uint32_t follower = g.user_corpus_index[gi];
    for (std::uint32_t followee : corpus.users()[follower].friends) {
      auto it = g.user_node.find(followee);
      if (it == g.user_node.end()) continue;
      g.out[it->second].push_back({g.n_terms + gi, 1.0});
      ++g.follow_edges;
    }
  }

  for (auto& edges : g.out)
    std::sort(edges.begin(), edges.end(),
              [](const UserTermGraph::Edge& a, const UserTermGraph::Edge& b) {
                return a.dst < b.dst;
              });
  return g;
}

SeedPools build_seed_pools(const Corpus& corpus,
                           const std::vector<PartyLabel>& labels,
                           const ScoreIndex& scores, double threshold) {
  std::set<std::uint32_t> dem, rep;
  for (const auto& rec : corpus.interactions()) {
    if (rec.kind != InteractionKind::Reply &&
        rec.kind != InteractionKind::Mention)
      continue;
    Leaning author = labels[rec.author].label;
    if (author == Leaning::Unknown) continue;
    auto sit = scores.find(rec.tweet_id);
    if (sit == scores.end() || !sit->second.scorable ||
        *sit->second.score <= threshold)
      continue;
    for (std::uint32_t cand : rec.target_candidates) {
      Party p = corpus.roster()[cand].party;
      if (author == Leaning::ProDem && p == Party::Republican)
        dem.insert(rec.author);
      else if (author == Leaning::ProRep && p == Party::Democrat)
        rep.insert(rec.author);
    }
  }
  SeedPools pools;
  pools.pro_dem_toxic.assign(dem.begin(), dem.end());
  pools.pro_rep_toxic.assign(rep.begin(), rep.end());
  return pools;
}

std::vector<std::uint32_t> candidate_seed_nodes(const UserTermGraph& graph,
                                                const SeedPools& pools,
                                                Party candidate_party) {
  const auto& pool = candidate_party == Party::Republican
                         ? pools.pro_dem_toxic
                         : pools.pro_rep_toxic;
  std::vector<std::uint32_t> seeds;
  for (std::uint32_t cu : pool) {
    auto it = graph.user_node.find(cu);
    if (it != graph.user_node.end()) seeds.push_back(it->second);
  }
  std::sort(seeds.begin(), seeds.end());
  return seeds;
}

std::vector<double> propagate(const UserTermGraph& graph,
                              const std::vector<std::uint32_t>& seeds,
                              const WalkParams& params) {
  const std::size_t n = graph.size();
  if (seeds.empty()) throw UsageError("propagation needs a non-empty seed set");
  if (!(params.beta > 0.0 && params.beta < 1.0))
    throw UsageError("restart beta must lie in (0,1)");

  // Out-weight-normalized transition probabilities, grouped by source.
  std::vector<double> out_sum(n, 0.0);
  for (std::size_t v = 0; v < n; ++v)
    for (const auto& e : graph.out[v]) out_sum[v] += e.weight;

  std::vector<double> restart(n, 0.0);
  for (auto s : seeds) restart[s] = 1.0 / static_cast<double>(seeds.size());

  std::vector<double> p = restart, next(n, 0.0);
  const auto& ops = kernels::ops();
  double residual = 0.0;
  for (int iter = 0; iter < params.max_iters; ++iter) {
    std::fill(next.begin(), next.end(), 0.0);
    double dangling = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      const double pv = p[v];
      if (pv == 0.0) continue;
      if (graph.out[v].empty()) {
        dangling += pv;
        continue;
      }
      const double f = pv / out_sum[v];
      for (const auto& e : graph.out[v]) next[e.dst] += f * e.weight;
    }
    // p <- beta (Pᵀp + dangling·r) + (1-beta) r
    const double restart_mass = (1.0 - params.beta) + params.beta * dangling;
    ops.axpby(params.beta, next.data(), restart_mass, restart.data(),
              next.data(), n);
    residual = ops.l1_distance(next.data(), p.data(), n);
    p.swap(next);
    if (residual < params.tol) return p;
  }
  throw DataError("restart walk did not converge in " +
                  std::to_string(params.max_iters) +
                  " iterations (L1 residual " + io::format_double(residual) +
                  ", tol " + io::format_double(params.tol) + ")");
}

void max_normalize(std::vector<double>& values, std::size_t prefix) {
  if (prefix == 0) return;
  double mx = kernels::ops().max_value(values.data(), prefix);
  if (mx <= 0.0) return;
  // True division: the maximum lands on exactly 1.0.
  for (std::size_t i = 0; i < prefix; ++i) values[i] /= mx;
}

BootstrapScores bootstrap_scores(const UserTermGraph& graph,
                                 const std::vector<std::uint32_t>& seeds,
                                 const BootstrapParams& params) {
  if (seeds.empty()) throw UsageError("bootstrap needs a non-empty seed set");
  if (params.runs < 1) throw UsageError("bootstrap needs at least one run");
  if (!(params.fraction > 0.0 && params.fraction <= 1.0))
    throw UsageError("seed fraction must lie in (0,1]");

  BootstrapScores out;
  if (seeds.size() < 2)
    out.warnings.push_back(
        "candidate " + graph.candidate_id +
        ": single seed user, bootstrap runs are identical (confidence 0)");

  const std::size_t n_terms = graph.n_terms;
  const std::size_t take = std::max<std::size_t>(
      1, static_cast<std::size_t>(
             std::ceil(params.fraction * static_cast<double>(seeds.size()))));

  std::vector<std::vector<double>> runs(params.runs);
  Rng base(params.rng_seed);
  auto run_one = [&](int r) {
    Rng rng = base.derive(static_cast<std::uint64_t>(r));
    auto pick = rng.sample_indices(static_cast<std::uint32_t>(seeds.size()),
                                   static_cast<std::uint32_t>(take));
    std::vector<std::uint32_t> subset;
    subset.reserve(pick.size());
    for (auto i : pick) subset.push_back(seeds[i]);
    std::sort(subset.begin(), subset.end());
    auto p = propagate(graph, subset, params.walk);
    p.resize(n_terms);  // term nodes only
    max_normalize(p, n_terms);
    runs[r] = std::move(p);
  };

  const int workers = std::max(1, params.workers);
  if (workers == 1) {
    for (int r = 0; r < params.runs; ++r) run_one(r);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (;;) {
          int r = next.fetch_add(1);
          if (r >= params.runs) return;
          run_one(r);
        }
      });
    for (auto& t : pool) t.join();
  }

  out.table.resize(n_terms);
  const double nr = static_cast<double>(params.runs);
  for (std::size_t t = 0; t < n_terms; ++t) {
    double mean = 0.0;
    for (const auto& run : runs) mean += run[t];
    mean /= nr;
    double var = 0.0;
    for (const auto& run : runs) {
      double d = run[t] - mean;
      var += d * d;
    }
    out.table[t].term = graph.term_names[t];
    out.table[t].score = mean;
    out.table[t].confidence = std::sqrt(var / nr);
  }
  if (params.keep_per_run) out.per_run = std::move(runs);
  return out;
}

std::vector<TermReportRow> candidate_term_report(
    const Corpus& corpus, std::uint32_t candidate, const UserTermGraph& graph,
    const BootstrapScores& scores, const std::vector<PartyLabel>& labels,
    const ScoreIndex& toxicity, double threshold) {
  const Party party = corpus.roster()[candidate].party;
  const Leaning hostile = opposing_leaning(party);

  std::vector<std::uint64_t> matching(graph.n_terms, 0), toxic(graph.n_terms, 0);
  std::vector<std::uint32_t> scratch;
  for (std::uint32_t rec_idx : corpus.candidate_interactions(candidate)) {
    const auto& rec = corpus.interactions()[rec_idx];
    if (labels[rec.author].label != hostile) continue;
    scratch.clear();
    for (const auto& tok : tokenize(rec.text)) {
      auto it = std::lower_bound(graph.term_names.begin(),
                                 graph.term_names.end(), tok);
      if (it != graph.term_names.end() && *it == tok)
        scratch.push_back(
            static_cast<std::uint32_t>(it - graph.term_names.begin()));
    }
    std::sort(scratch.begin(), scratch.end());
    scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    if (scratch.empty()) continue;
    auto sit = toxicity.find(rec.tweet_id);
    bool hot = sit != toxicity.end() && sit->second.scorable &&
               *sit->second.score > threshold;
    for (std::uint32_t t : scratch) {
      ++matching[t];
      if (hot) ++toxic[t];
    }
  }

  std::vector<TermReportRow> rows(graph.n_terms);
  for (std::uint32_t t = 0; t < graph.n_terms; ++t) {
    rows[t].candidate_id = graph.candidate_id;
    rows[t].term = graph.term_names[t];
    rows[t].score = scores.table[t].score;
    rows[t].confidence = scores.table[t].confidence;
    rows[t].n_matching_tweets = matching[t];
    rows[t].pct_toxic = matching[t] == 0
                            ? 0.0
                            : 100.0 * static_cast<double>(toxic[t]) /
                                  static_cast<double>(matching[t]);
  }
  return rows;
}

std::vector<TermReportRow> top_terms(std::vector<TermReportRow> rows,
                                     std::size_t n) {
  std::sort(rows.begin(), rows.end(),
            [](const TermReportRow& a, const TermReportRow& b) {
              if (a.score != b.score) return a.score > b.score;
              if (a.confidence != b.confidence)
                return a.confidence < b.confidence;
              if (a.term != b.term) return a.term < b.term;
              return a.candidate_id < b.candidate_id;
            });
  if (rows.size() > n) rows.resize(n);
  return rows;
}

}  // namespace polarlex
