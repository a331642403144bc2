#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "polarlex/corpus.hpp"
#include "polarlex/dpp.hpp"
#include "polarlex/embeddings.hpp"
#include "polarlex/party.hpp"

namespace polarlex {

// Heterogeneous weighted directed graph for one candidate. Nodes [0, n_terms)
// are the vocabulary terms, [n_terms, n_terms + n_users) the users who used
// at least one vocabulary term toward the candidate.
//
// Edge classes:
//   follow edges  followee -> follower, weight 1
//   term edges    t1 -> t2 for t2 in kNN(t1); cosine clipped at 0 and
//                 divided by the largest retained cosine (max weight 1)
//   usage edges   user <-> term, weight = tweets at the candidate containing
//                 the term / user's tweets at the candidate
struct UserTermGraph {
  std::string candidate_id;
  std::uint32_t n_terms = 0;
  std::vector<std::string> term_names;
  std::vector<std::string> user_ids;                 // graph-local users
  std::vector<std::uint32_t> user_corpus_index;      // graph user -> corpus user
  std::unordered_map<std::uint32_t, std::uint32_t> user_node;  // corpus -> node

  struct Edge {
    std::uint32_t dst;
    double weight;
  };
  std::vector<std::vector<Edge>> out;  // per node, dst ascending

  std::uint64_t follow_edges = 0, term_edges = 0, usage_edges = 0;
  std::size_t size() const { return out.size(); }
};

struct GraphParams {
  int k = 10;                          // term kNN degree
  std::uint64_t min_interactions = 800;
};

// Returns nothing (with a notice) when the candidate has fewer than
// min_interactions replies+mentions.
std::optional<UserTermGraph> build_graph(const Corpus& corpus,
                                         std::uint32_t candidate,
                                         const Vocabulary& vocab,
                                         const EmbeddingTable& embeddings,
                                         const GraphParams& params,
                                         std::vector<std::string>* notices);

// Dataset-wide pools: pro-Democrat users with at least one above-threshold
// toxic interaction targeting a Republican candidate, and vice versa.
struct SeedPools {
  std::vector<std::uint32_t> pro_dem_toxic;  // corpus user indices, sorted
  std::vector<std::uint32_t> pro_rep_toxic;
};

SeedPools build_seed_pools(const Corpus& corpus,
                           const std::vector<PartyLabel>& labels,
                           const ScoreIndex& scores, double threshold = 0.7);

// Graph-node indices of the candidate's seed users: the pool leaning against
// the candidate's party, intersected with the graph's users.
std::vector<std::uint32_t> candidate_seed_nodes(const UserTermGraph& graph,
                                                const SeedPools& pools,
                                                Party candidate_party);

struct WalkParams {
  double beta = 0.9;    // continuation probability
  double tol = 1e-6;    // L1 fixed-point tolerance
  int max_iters = 500;
};

// Random walk with restart: p <- (1-beta) r + beta Pᵀ p with P the out-weight
// normalized transition matrix, r uniform over the seeds, dangling mass
// teleported to r. Returns the raw stationary probabilities.
std::vector<double> propagate(const UserTermGraph& graph,
                              const std::vector<std::uint32_t>& seeds,
                              const WalkParams& params = {});

// In-place x / max(x) over the given prefix length; no-op when the max is 0.
void max_normalize(std::vector<double>& values, std::size_t prefix);

struct AdversaryScore {
  std::string term;
  double score = 0.0;       // mean max-normalized walk probability
  double confidence = 0.0;  // std-dev across runs (lower = more confident)
};

struct BootstrapParams {
  int runs = 50;
  double fraction = 0.7;   // of seeds used per run, sampled without replacement
  std::uint64_t rng_seed = 0;
  WalkParams walk;
  int workers = 1;
  bool keep_per_run = false;
};

struct BootstrapScores {
  std::vector<AdversaryScore> table;            // by term index
  std::vector<std::vector<double>> per_run;     // runs x terms, optional
  std::vector<std::string> warnings;
};

BootstrapScores bootstrap_scores(const UserTermGraph& graph,
                                 const std::vector<std::uint32_t>& seeds,
                                 const BootstrapParams& params);

struct TermReportRow {
  std::string candidate_id;
  std::string term;
  double score = 0.0;
  double confidence = 0.0;
  double pct_toxic = 0.0;  // percent of matching opposing-party tweets > threshold
  std::uint64_t n_matching_tweets = 0;
};

// Rows for every term of one candidate. Matching tweets are the candidate's
// interactions containing the term whose author leans to the opposing party;
// pct_toxic is the share of those scored above the threshold.
std::vector<TermReportRow> candidate_term_report(
    const Corpus& corpus, std::uint32_t candidate, const UserTermGraph& graph,
    const BootstrapScores& scores, const std::vector<PartyLabel>& labels,
    const ScoreIndex& toxicity, double threshold);

// Global ranking across candidates: score desc, confidence asc, term asc,
// candidate asc; first n rows.
std::vector<TermReportRow> top_terms(std::vector<TermReportRow> rows,
                                     std::size_t n = 50);

}  // namespace polarlex
