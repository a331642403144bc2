#include "polarlex/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "polarlex/default_config.hpp"
#include "polarlex/io.hpp"
#include "polarlex/kernels.hpp"
#include "polarlex/linalg.hpp"
#include "polarlex/rng.hpp"
#include "polarlex/tokenize.hpp"

namespace polarlex {

namespace {

void split_name_into(const std::string& name, std::set<std::string>& out) {
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.insert(cur);
    cur.clear();
  };
  for (unsigned char c : name) {
    if (std::isalnum(c))
      cur += static_cast<char>(std::tolower(c));
    else
      flush();
  }
  flush();
  std::string whole;
  for (unsigned char c : name)
    whole += static_cast<char>(std::tolower(c));
  if (!whole.empty()) out.insert(whole);
}

}  // namespace

std::set<std::string> candidate_name_tokens(const Candidate& candidate) {
  std::set<std::string> out;
  split_name_into(candidate.candidate_id, out);
  for (const auto& acc : candidate.account_ids) split_name_into(acc, out);
  return out;
}

Vocabulary build_vocabulary(const Corpus& corpus, std::uint32_t candidate,
                            const VocabularyParams& params) {
  const auto& stop =
      params.stopwords ? *params.stopwords : default_stopwords();
  auto name_tokens = candidate_name_tokens(corpus.roster()[candidate]);

  std::map<std::string, std::set<std::uint32_t>> term_users;
  for (std::uint32_t rec_idx : corpus.candidate_interactions(candidate)) {
    const auto& rec = corpus.interactions()[rec_idx];
    for (const auto& tok : tokenize(rec.text)) {
      if (stop.count(tok) || name_tokens.count(tok) ||
          params.extra_exclusions.count(tok))
        continue;
      term_users[tok].insert(rec.author);
    }
  }

  Vocabulary vocab;
  vocab.candidate_id = corpus.roster()[candidate].candidate_id;
  for (const auto& [term, users] : term_users) {
    if (users.size() < params.min_users) continue;
    vocab.index[term] = static_cast<std::uint32_t>(vocab.terms.size());
    vocab.terms.push_back(term);
    vocab.user_counts.push_back(static_cast<std::uint32_t>(users.size()));
  }
  if (vocab.terms.empty())
    throw DataError("empty vocabulary for candidate " + vocab.candidate_id +
                    " (below viability)");
  return vocab;
}

CoocCounts cooccurrence(const Corpus& corpus, std::uint32_t candidate,
                        const Vocabulary& vocab, int window) {
  if (window < 1) throw UsageError("cooccurrence window must be positive");
  CoocCounts cc;
  cc.n_terms = static_cast<std::uint32_t>(vocab.terms.size());
  std::vector<std::int64_t> ids;
  for (std::uint32_t rec_idx : corpus.candidate_interactions(candidate)) {
    const auto& rec = corpus.interactions()[rec_idx];
    auto tokens = tokenize(rec.text);
    ids.clear();
    ids.reserve(tokens.size());
    for (const auto& tok : tokens) {
      auto it = vocab.index.find(tok);
      ids.push_back(it == vocab.index.end() ? -1 : std::int64_t(it->second));
    }
    const std::size_t n = ids.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (ids[i] < 0) continue;
      const std::size_t hi = std::min(n, i + 1 + static_cast<std::size_t>(window));
      for (std::size_t j = i + 1; j < hi; ++j) {
        if (ids[j] < 0) continue;
        cc.add(static_cast<std::uint32_t>(ids[i]),
               static_cast<std::uint32_t>(ids[j]), 1.0);
      }
    }
  }
  return cc;
}

SparseMatrix ppmi_matrix(const CoocCounts& counts, double alpha) {
  const std::uint32_t n = counts.n_terms;
  if (n == 0 || counts.counts.empty())
    throw DataError("co-occurrence matrix is empty");

  // Mirror the upper triangle; marginals over the full symmetric matrix.
  std::vector<double> marginal(n, 0.0);
  double total = 0.0;
  for (const auto& [key, c] : counts.counts) {
    std::uint32_t i = static_cast<std::uint32_t>(key >> 32);
    std::uint32_t j = static_cast<std::uint32_t>(key & 0xffffffffu);
    if (i == j) {
      marginal[i] += c;
      total += c;
    } else {
      marginal[i] += c;
      marginal[j] += c;
      total += 2.0 * c;
    }
  }
  double alpha_norm = 0.0;
  std::vector<double> ctx_alpha(n, 0.0);
  for (std::uint32_t i = 0; i < n; ++i) {
    ctx_alpha[i] = marginal[i] > 0 ? std::pow(marginal[i], alpha) : 0.0;
    alpha_norm += ctx_alpha[i];
  }

  std::vector<std::map<std::uint32_t, double>> rows(n);
  auto emit = [&](std::uint32_t i, std::uint32_t j, double c) {
    double pij = c / total;
    double pi = marginal[i] / total;
    double pj_alpha = ctx_alpha[j] / alpha_norm;
    double v = std::log(pij / (pi * pj_alpha));
    if (v > 0.0) rows[i][j] = v;
  };
  for (const auto& [key, c] : counts.counts) {
    std::uint32_t i = static_cast<std::uint32_t>(key >> 32);
    std::uint32_t j = static_cast<std::uint32_t>(key & 0xffffffffu);
    emit(i, j, c);
    if (i != j) emit(j, i, c);
  }

  SparseMatrix m;
  m.n = n;
  m.row_ptr.assign(n + 1, 0);
  for (std::uint32_t i = 0; i < n; ++i)
    m.row_ptr[i + 1] = m.row_ptr[i] + static_cast<std::uint32_t>(rows[i].size());
  m.col.reserve(m.row_ptr[n]);
  m.val.reserve(m.row_ptr[n]);
  for (std::uint32_t i = 0; i < n; ++i)
    for (const auto& [j, v] : rows[i]) {
      m.col.push_back(j);
      m.val.push_back(v);
    }
  return m;
}

namespace {

// y = M x
void sparse_apply(const SparseMatrix& m, const double* x, double* y) {
  for (std::uint32_t i = 0; i < m.n; ++i) {
    double acc = 0.0;
    for (std::uint32_t k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k)
      acc += m.val[k] * x[m.col[k]];
    y[i] = acc;
  }
}

// y = Mᵀ x
void sparse_apply_t(const SparseMatrix& m, const double* x, double* y) {
  std::fill(y, y + m.n, 0.0);
  for (std::uint32_t i = 0; i < m.n; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    for (std::uint32_t k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k)
      y[m.col[k]] += m.val[k] * xi;
  }
}

// Dense MᵀM for the direct eigensolver path.
linalg::Matrix gram_dense(const SparseMatrix& m) {
  linalg::Matrix g(m.n, m.n);
  for (std::uint32_t i = 0; i < m.n; ++i)
    for (std::uint32_t a = m.row_ptr[i]; a < m.row_ptr[i + 1]; ++a)
      for (std::uint32_t b = m.row_ptr[i]; b < m.row_ptr[i + 1]; ++b)
        g.at(m.col[a], m.col[b]) += m.val[a] * m.val[b];
  return g;
}

// Modified Gram-Schmidt on the columns of x (n x b, row-major).
void orthonormalize(std::vector<double>& x, std::size_t n, std::size_t b) {
  for (std::size_t c = 0; c < b; ++c) {
    for (std::size_t prev = 0; prev < c; ++prev) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        dot += x[i * b + c] * x[i * b + prev];
      for (std::size_t i = 0; i < n; ++i)
        x[i * b + c] -= dot * x[i * b + prev];
    }
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm2 += x[i * b + c] * x[i * b + c];
    double norm = std::sqrt(norm2);
    if (norm < 1e-200) continue;  // column collapsed; left as-is
    for (std::size_t i = 0; i < n; ++i) x[i * b + c] /= norm;
  }
}

struct TopEigen {
  std::vector<double> values;          // descending
  std::vector<double> vectors;         // n x k, column-major by k
};

// Top-k eigenpairs of MᵀM. Jacobi on the dense Gram matrix for small n,
// seeded block subspace iteration with Rayleigh-Ritz above that.
TopEigen top_eigen_gram(const SparseMatrix& m, std::size_t k,
                        std::uint64_t rng_seed) {
  const std::size_t n = m.n;
  TopEigen out;
  if (n <= 256) {
    auto eig = linalg::jacobi_eigen(gram_dense(m));
    std::size_t take = std::min(k, n);
    out.values.assign(eig.values.begin(), eig.values.begin() + take);
    out.vectors.resize(n * take);
    for (std::size_t c = 0; c < take; ++c)
      for (std::size_t i = 0; i < n; ++i)
        out.vectors[i * take + c] = eig.vectors.at(i, c);
    return out;
  }

  const std::size_t b = std::min(n, k + 8);
  Rng rng(rng_seed);
  std::vector<double> x(n * b), mx(n), mtx(n);
  for (auto& v : x) v = rng.unit() - 0.5;
  orthonormalize(x, n, b);

  std::vector<double> y(n * b), colin(n), colout(n);
  double prev_trace = 0.0;
  for (int iter = 0; iter < 500; ++iter) {
    // y = (MᵀM) x, column by column.
    for (std::size_t c = 0; c < b; ++c) {
      for (std::size_t i = 0; i < n; ++i) colin[i] = x[i * b + c];
      sparse_apply(m, colin.data(), mx.data());
      sparse_apply_t(m, mx.data(), colout.data());
      for (std::size_t i = 0; i < n; ++i) y[i * b + c] = colout[i];
    }
    // Rayleigh-Ritz in the current block.
    linalg::Matrix t(b, b);
    for (std::size_t c1 = 0; c1 < b; ++c1)
      for (std::size_t c2 = 0; c2 < b; ++c2) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          dot += x[i * b + c1] * y[i * b + c2];
        t.at(c1, c2) = dot;
      }
    for (std::size_t c1 = 0; c1 < b; ++c1)
      for (std::size_t c2 = c1 + 1; c2 < b; ++c2) {
        double s = 0.5 * (t.at(c1, c2) + t.at(c2, c1));
        t.at(c1, c2) = t.at(c2, c1) = s;
      }
    auto ritz = linalg::jacobi_eigen(t);
    double trace = 0.0;
    for (std::size_t c = 0; c < std::min(k, b); ++c) trace += ritz.values[c];

    // Rotate the block onto the Ritz vectors, then advance: x <- orth(y W).
    std::vector<double> next(n * b, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < b; ++c) {
        double acc = 0.0;
        for (std::size_t mcol = 0; mcol < b; ++mcol)
          acc += y[i * b + mcol] * ritz.vectors.at(mcol, c);
        next[i * b + c] = acc;
      }
    x.swap(next);
    orthonormalize(x, n, b);

    double denom = std::max(1.0, std::fabs(trace));
    if (iter > 4 && std::fabs(trace - prev_trace) < 1e-12 * denom) break;
    prev_trace = trace;
  }

  // Final Ritz values/vectors from the converged block.
  for (std::size_t c = 0; c < b; ++c) {
    for (std::size_t i = 0; i < n; ++i) colin[i] = x[i * b + c];
    sparse_apply(m, colin.data(), mx.data());
    sparse_apply_t(m, mx.data(), colout.data());
    for (std::size_t i = 0; i < n; ++i) y[i * b + c] = colout[i];
  }
  linalg::Matrix t(b, b);
  for (std::size_t c1 = 0; c1 < b; ++c1)
    for (std::size_t c2 = 0; c2 < b; ++c2) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += x[i * b + c1] * y[i * b + c2];
      t.at(c1, c2) = dot;
    }
  for (std::size_t c1 = 0; c1 < b; ++c1)
    for (std::size_t c2 = c1 + 1; c2 < b; ++c2) {
      double s = 0.5 * (t.at(c1, c2) + t.at(c2, c1));
      t.at(c1, c2) = t.at(c2, c1) = s;
    }
  auto ritz = linalg::jacobi_eigen(t);
  std::size_t take = std::min(k, b);
  out.values.assign(ritz.values.begin(), ritz.values.begin() + take);
  out.vectors.assign(n * take, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < take; ++c) {
      double acc = 0.0;
      for (std::size_t mcol = 0; mcol < b; ++mcol)
        acc += x[i * b + mcol] * ritz.vectors.at(mcol, c);
      out.vectors[i * take + c] = acc;
    }
  return out;
}

}  // namespace

EmbeddingTable ppmi_svd_embed(const CoocCounts& counts,
                              const std::vector<std::string>& terms,
                              const EmbedParams& params,
                              std::vector<std::string>* warnings) {
  if (terms.size() != counts.n_terms)
    throw UsageError("term list does not match count matrix size");
  SparseMatrix m = ppmi_matrix(counts, params.alpha);
  const std::size_t n = m.n;

  auto eig = top_eigen_gram(m, std::min(params.dim, n), params.rng_seed);

  // Numerical rank cut: eigenvalues of MᵀM are squared singular values.
  double lambda_max = eig.values.empty() ? 0.0 : std::max(eig.values[0], 0.0);
  std::size_t rank = 0;
  for (double v : eig.values)
    if (v > 1e-12 * std::max(lambda_max, 1e-300)) ++rank;

  std::size_t d = std::min(params.dim, rank);
  if (d < params.dim && warnings)
    warnings->push_back("embedding dimension reduced to rank " +
                        std::to_string(d) + " (requested " +
                        std::to_string(params.dim) + ") for " +
                        std::to_string(n) + " terms");
  EmbeddingTable table;
  table.terms = terms;
  table.is_zero.assign(n, 0);
  for (std::uint32_t i = 0; i < n; ++i)
    if (m.row_ptr[i] == m.row_ptr[i + 1]) table.is_zero[i] = 1;

  if (d == 0) {
    table.dim = 1;
    table.data.assign(n, 0.0);
    for (std::uint32_t i = 0; i < n; ++i) table.is_zero[i] = 1;
    if (warnings)
      warnings->push_back("PPMI matrix has rank 0; all embeddings are zero");
    return table;
  }

  // E = M V diag(lambda^{-1/4}) = U_d sqrt(S_d).
  const std::size_t kcols = eig.values.size();
  table.dim = d;
  table.data.assign(n * d, 0.0);
  std::vector<double> scale(d);
  for (std::size_t c = 0; c < d; ++c)
    scale[c] = std::pow(eig.values[c], -0.25);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t kk = m.row_ptr[i]; kk < m.row_ptr[i + 1]; ++kk) {
      const double v = m.val[kk];
      const double* vrow = &eig.vectors[m.col[kk] * kcols];
      double* out = &table.data[i * d];
      for (std::size_t c = 0; c < d; ++c) out[c] += v * vrow[c];
    }
    double* out = &table.data[i * d];
    for (std::size_t c = 0; c < d; ++c) out[c] *= scale[c];
  }
  return table;
}

KnnResult knn(const EmbeddingTable& table, int k) {
  const std::size_t n = table.terms.size();
  KnnResult result;
  if (k < 1) throw UsageError("k must be positive");
  if (n >= 1 && static_cast<std::size_t>(k) > n - 1) {
    k = static_cast<int>(n - 1);
    result.warnings.push_back("k reduced to " + std::to_string(k) +
                              " for a vocabulary of " + std::to_string(n));
  }

  // Normalized copies; zero vectors excluded from queries and neighbors.
  std::vector<double> unit(n * table.dim, 0.0);
  std::vector<char> usable(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (table.is_zero[i]) continue;
    auto row = table.row(i);
    double norm = std::sqrt(kernels::ops().dot(row.data(), row.data(),
                                               table.dim));
    if (norm == 0.0) continue;
    usable[i] = 1;
    for (std::size_t c = 0; c < table.dim; ++c)
      unit[i * table.dim + c] = row[c] / norm;
  }

  result.neighbors.resize(n);
  result.similarities.resize(n);
  std::vector<std::pair<double, std::uint32_t>> scored;
  for (std::size_t i = 0; i < n; ++i) {
    if (!usable[i]) continue;
    scored.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !usable[j]) continue;
      double cos = kernels::ops().dot(&unit[i * table.dim],
                                      &unit[j * table.dim], table.dim);
      scored.push_back({cos, static_cast<std::uint32_t>(j)});
    }
    auto cmp = [&](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return table.terms[a.second] < table.terms[b.second];
    };
    std::size_t take = std::min<std::size_t>(k, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + take, scored.end(), cmp);
    for (std::size_t t = 0; t < take; ++t) {
      result.neighbors[i].push_back(scored[t].second);
      result.similarities[i].push_back(scored[t].first);
    }
  }
  return result;
}

void write_embeddings_tsv(const EmbeddingTable& table,
                          const std::string& path) {
  std::string out;
  out += "#dim\t" + std::to_string(table.dim) + "\n";
  for (std::size_t i = 0; i < table.terms.size(); ++i) {
    out += table.terms[i];
    auto row = table.row(i);
    for (double v : row) {
      out += '\t';
      out += io::format_double(v);
    }
    out += '\n';
  }
  io::atomic_write_file(path, out);
}

EmbeddingTable read_embeddings_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open embeddings file: " + path);
  std::string header;
  if (!std::getline(in, header) || header.rfind("#dim\t", 0) != 0)
    throw DataError("bad embeddings header in " + path);
  EmbeddingTable table;
  table.dim = std::stoul(header.substr(5));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string term;
    std::getline(ss, term, '\t');
    table.terms.push_back(term);
    std::string field;
    std::size_t got = 0;
    while (std::getline(ss, field, '\t')) {
      table.data.push_back(std::strtod(field.c_str(), nullptr));
      ++got;
    }
    if (got != table.dim)
      throw DataError("embedding row arity mismatch in " + path);
  }
  table.is_zero.assign(table.terms.size(), 0);
  for (std::size_t i = 0; i < table.terms.size(); ++i) {
    bool zero = true;
    for (auto v : table.row(i))
      if (v != 0.0) zero = false;
    table.is_zero[i] = zero ? 1 : 0;
  }
  return table;
}

}  // namespace polarlex
