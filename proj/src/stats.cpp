#include "polarlex/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "polarlex/linalg.hpp"

namespace polarlex {

namespace {

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
}

double sample_sd(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / double(v.size() - 1));
}

}  // namespace

std::vector<double> standardize_continuous(const std::vector<double>& v) {
  double m = mean_of(v);
  double sd = sample_sd(v, m);
  std::vector<double> out(v.size());
  if (sd == 0.0) {
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = 0.0;
    return out;
  }
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - m) / (2.0 * sd);
  return out;
}

RegressionDesign build_design(
    const Corpus& corpus,
    const std::vector<CandidateAdversarySummary>& summaries,
    const std::vector<PartyLabel>& labels, const DesignParams& params) {
  const auto& roster = corpus.roster();
  if (summaries.size() != roster.size())
    throw UsageError("need one summary per roster candidate");
  if (params.trim_fraction < 0.0 || params.trim_fraction >= 0.5)
    throw UsageError("trim fraction must lie in [0, 0.5)");

  // Trim by total attention rank before any transform.
  std::vector<std::uint32_t> order(roster.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (corpus.attention(a) != corpus.attention(b))
      return corpus.attention(a) < corpus.attention(b);
    return roster[a].candidate_id < roster[b].candidate_id;
  });
  const std::size_t cut =
      static_cast<std::size_t>(params.trim_fraction * double(order.size()));
  std::vector<std::uint32_t> kept(order.begin() + cut, order.end() - cut);
  // Design rows in roster order for reproducibility.
  std::sort(kept.begin(), kept.end());
  if (kept.size() < params.min_rows)
    throw DataError("only " + std::to_string(kept.size()) +
                    " candidates remain after trimming; need at least " +
                    std::to_string(params.min_rows));

  // Attention from opposing-leaning authors, counted per (record, target).
  std::vector<std::uint64_t> opposing(roster.size(), 0);
  for (const auto& rec : corpus.interactions()) {
    if (rec.kind != InteractionKind::Reply &&
        rec.kind != InteractionKind::Mention)
      continue;
    Leaning author = labels[rec.author].label;
    if (author == Leaning::Unknown) continue;
    for (std::uint32_t cand : rec.target_candidates)
      if (opposes(author, roster[cand].party)) ++opposing[cand];
  }

  const std::size_t n = kept.size();
  std::vector<double> x_opp(n), x_fol(n), x_gen(n), x_par(n), x_int(n), y(n);
  RegressionDesign d;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t c = kept[i];
    d.row_ids.push_back(roster[c].candidate_id);
    x_opp[i] = std::log10(1.0 + double(opposing[c]));
    x_fol[i] = std::log10(1.0 + double(roster[c].follower_count));
    x_gen[i] = roster[c].gender == Gender::Male ? 1.0 : 0.0;
    x_par[i] = roster[c].party == Party::Republican ? 1.0 : 0.0;
    x_int[i] = x_gen[i] * x_par[i];
    y[i] = double(summaries[c].adversarial_directed_count);
  }
  x_opp = standardize_continuous(x_opp);
  x_fol = standardize_continuous(x_fol);
  for (auto* col : {&x_gen, &x_par, &x_int}) {
    double m = mean_of(*col);
    for (double& v : *col) v -= m;
  }

  d.col_names = {"intercept", "opp_attention", "followers",
                 "gender",    "party",         "gender_x_party"};
  d.n_rows = n;
  d.n_cols = d.col_names.size();
  d.x.resize(n * d.n_cols);
  d.y = y;
  for (std::size_t i = 0; i < n; ++i) {
    double* row = &d.x[i * d.n_cols];
    row[0] = 1.0;
    row[1] = x_opp[i];
    row[2] = x_fol[i];
    row[3] = x_gen[i];
    row[4] = x_par[i];
    row[5] = x_int[i];
  }
  return d;
}

namespace {

// R² of column target regressed on the remaining columns (used for VIF).
double auxiliary_r2(const RegressionDesign& d, std::size_t target) {
  const std::size_t n = d.n_rows, p = d.n_cols - 1;
  linalg::Matrix x(n, p);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t out_col = 0;
    for (std::size_t j = 0; j < d.n_cols; ++j) {
      if (j == target) continue;
      x.at(i, out_col++) = d.at(i, j);
    }
    y[i] = d.at(i, target);
  }
  auto qr = linalg::householder_qr(x, y);
  if (!qr.full_rank) return 1.0;  // perfectly explained by the others
  auto beta = linalg::back_substitute(qr.r, qr.qty);
  double ybar = mean_of(y);
  double ssr = 0.0, sst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double fit = 0.0;
    std::size_t out_col = 0;
    for (std::size_t j = 0; j < d.n_cols; ++j) {
      if (j == target) continue;
      fit += x.at(i, out_col) * beta[out_col];
      ++out_col;
    }
    ssr += (y[i] - fit) * (y[i] - fit);
    sst += (y[i] - ybar) * (y[i] - ybar);
  }
  if (sst == 0.0) return 1.0;
  return 1.0 - ssr / sst;
}

}  // namespace

RegressionReport ols_fit(const RegressionDesign& d) {
  const std::size_t n = d.n_rows, p = d.n_cols;
  if (n <= p) throw DataError("not enough rows for the regression");

  linalg::Matrix x(n, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) x.at(i, j) = d.at(i, j);
  auto qr = linalg::householder_qr(x, d.y);
  if (!qr.full_rank) {
    std::string names;
    for (auto j : qr.deficient_cols) {
      if (!names.empty()) names += ", ";
      names += d.col_names[j];
    }
    throw DataError("design matrix is rank deficient; collinear columns: " +
                    names);
  }
  auto beta = linalg::back_substitute(qr.r, qr.qty);

  double ssr = 0.0, sst = 0.0;
  const double ybar = mean_of(d.y);
  for (std::size_t i = 0; i < n; ++i) {
    double fit = 0.0;
    for (std::size_t j = 0; j < p; ++j) fit += d.at(i, j) * beta[j];
    ssr += (d.y[i] - fit) * (d.y[i] - fit);
    sst += (d.y[i] - ybar) * (d.y[i] - ybar);
  }
  const double dof = double(n - p);
  const double sigma2 = ssr / dof;

  // (XᵀX)⁻¹ = R⁻¹ R⁻ᵀ.
  auto rinv = linalg::invert_upper(qr.r);
  RegressionReport report;
  report.n = n;
  report.sigma2 = sigma2;
  report.r2 = sst == 0.0 ? 0.0 : 1.0 - ssr / sst;
  for (std::size_t j = 0; j < p; ++j) {
    PredictorStats ps;
    ps.name = d.col_names[j];
    ps.b = beta[j];
    double xtx_inv_jj = 0.0;
    for (std::size_t k = j; k < p; ++k)
      xtx_inv_jj += rinv.at(j, k) * rinv.at(j, k);
    ps.se = std::sqrt(sigma2 * xtx_inv_jj);
    ps.t = ps.se == 0.0 ? 0.0 : ps.b / ps.se;
    ps.p = linalg::student_t_two_tailed_p(ps.t, dof);
    if (d.col_names[j] != "intercept") {
      double r2j = auxiliary_r2(d, j);
      ps.vif = r2j >= 1.0 ? std::numeric_limits<double>::infinity()
                          : 1.0 / (1.0 - r2j);
    }
    report.predictors.push_back(ps);
  }
  return report;
}

}  // namespace polarlex
