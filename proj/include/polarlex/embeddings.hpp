#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "polarlex/corpus.hpp"

namespace polarlex {

struct VocabularyParams {
  std::uint32_t min_users = 10;
  const std::set<std::string>* stopwords = nullptr;  // null -> built-in list
  std::set<std::string> extra_exclusions;
};

struct Vocabulary {
  std::string candidate_id;
  std::vector<std::string> terms;  // sorted
  std::vector<std::uint32_t> user_counts;
  std::unordered_map<std::string, std::uint32_t> index;
};

// Lowercased name tokens of a candidate (id and account handles, split on
// non-alphanumerics), excluded from vocabularies.
std::set<std::string> candidate_name_tokens(const Candidate& candidate);

// Unigrams used by at least min_users distinct users in the candidate's
// reply/mention corpus, minus stopwords and candidate name tokens.
Vocabulary build_vocabulary(const Corpus& corpus, std::uint32_t candidate,
                            const VocabularyParams& params = {});

// Sparse symmetric pair counts, upper triangle keyed (i << 32) | j, i <= j.
struct CoocCounts {
  std::uint32_t n_terms = 0;
  std::unordered_map<std::uint64_t, double> counts;

  static std::uint64_t key(std::uint32_t i, std::uint32_t j) {
    if (i > j) std::swap(i, j);
    return (static_cast<std::uint64_t>(i) << 32) | j;
  }
  void add(std::uint32_t i, std::uint32_t j, double v) { counts[key(i, j)] += v; }
  double at(std::uint32_t i, std::uint32_t j) const {
    auto it = counts.find(key(i, j));
    return it == counts.end() ? 0.0 : it->second;
  }
};

// Pair counts within a symmetric token window per tweet; tweets never cross
// boundaries. Non-vocabulary tokens occupy positions but produce no counts.
CoocCounts cooccurrence(const Corpus& corpus, std::uint32_t candidate,
                        const Vocabulary& vocab, int window = 4);

// Row-major CSR, n x n.
struct SparseMatrix {
  std::uint32_t n = 0;
  std::vector<std::uint32_t> row_ptr;  // n+1
  std::vector<std::uint32_t> col;
  std::vector<double> val;
};

// PPMI(i,j) = max(0, log p(i,j) - log p(i) - log p_alpha(j)) with
// context-distribution smoothing exponent alpha.
SparseMatrix ppmi_matrix(const CoocCounts& counts, double alpha = 0.75);

struct EmbeddingTable {
  std::vector<std::string> terms;
  std::size_t dim = 0;
  std::vector<double> data;  // terms x dim, row-major
  std::vector<char> is_zero;  // all-zero PPMI row, flagged degenerate

  std::span<const double> row(std::size_t i) const {
    return {data.data() + i * dim, dim};
  }
};

struct EmbedParams {
  std::size_t dim = 100;
  double alpha = 0.75;
  std::uint64_t rng_seed = 42;  // start vectors of the iterative solver
};

// Truncated SVD of the PPMI matrix; embeddings are U_d * sqrt(S_d). Requested
// dimensions beyond the numerical rank are dropped with a warning.
EmbeddingTable ppmi_svd_embed(const CoocCounts& counts,
                              const std::vector<std::string>& terms,
                              const EmbedParams& params = {},
                              std::vector<std::string>* warnings = nullptr);

struct KnnResult {
  // neighbors[i]: indices of the k most cosine-similar terms, best first,
  // ties by term string; empty for zero vectors.
  std::vector<std::vector<std::uint32_t>> neighbors;
  std::vector<std::vector<double>> similarities;
  std::vector<std::string> warnings;
};

KnnResult knn(const EmbeddingTable& table, int k = 10);

// TSV persistence (term + dim doubles); round-trips exactly.
void write_embeddings_tsv(const EmbeddingTable& table, const std::string& path);
EmbeddingTable read_embeddings_tsv(const std::string& path);

}  // namespace polarlex
