#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "polarlex/linalg.hpp"
#include "polarlex/rng.hpp"
#include "polarlex/stats.hpp"
#include "test_support.hpp"

using namespace polarlex;
using testsup::TempDir;
using testsup::write_file;

namespace {

RegressionDesign design_from(const std::vector<std::vector<double>>& x,
                             const std::vector<double>& y,
                             std::vector<std::string> names) {
  RegressionDesign d;
  d.n_rows = x.size();
  d.n_cols = x[0].size();
  d.col_names = std::move(names);
  d.y = y;
  for (const auto& row : x)
    for (double v : row) d.x.push_back(v);
  for (std::size_t i = 0; i < d.n_rows; ++i)
    d.row_ids.push_back("row" + std::to_string(i));
  return d;
}

// Normal-equations oracle: explicit XᵀX inverse via Gauss-Jordan.
struct OracleFit {
  std::vector<double> beta, se, vif;
  double r2 = 0.0;
};

std::vector<std::vector<double>> invert(std::vector<std::vector<double>> a) {
  const std::size_t p = a.size();
  std::vector<std::vector<double>> inv(p, std::vector<double>(p, 0.0));
  for (std::size_t i = 0; i < p; ++i) inv[i][i] = 1.0;
  for (std::size_t col = 0; col < p; ++col) {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < p; ++i)
      if (std::fabs(a[i][col]) > std::fabs(a[piv][col])) piv = i;
    std::swap(a[col], a[piv]);
    std::swap(inv[col], inv[piv]);
    double f = a[col][col];
    for (std::size_t j = 0; j < p; ++j) {
      a[col][j] /= f;
      inv[col][j] /= f;
    }
    for (std::size_t i = 0; i < p; ++i) {
      if (i == col) continue;
      double g = a[i][col];
      if (g == 0.0) continue;
      for (std::size_t j = 0; j < p; ++j) {
        a[i][j] -= g * a[col][j];
        inv[i][j] -= g * inv[col][j];
      }
    }
  }
  return inv;
}

OracleFit normal_equations_fit(const RegressionDesign& d) {
  const std::size_t n = d.n_rows, p = d.n_cols;
  std::vector<std::vector<double>> xtx(p, std::vector<double>(p, 0.0));
  std::vector<double> xty(p, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      for (std::size_t k = 0; k < p; ++k) xtx[j][k] += d.at(i, j) * d.at(i, k);
      xty[j] += d.at(i, j) * d.y[i];
    }
  auto inv = invert(xtx);
  OracleFit fit;
  fit.beta.assign(p, 0.0);
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t k = 0; k < p; ++k) fit.beta[j] += inv[j][k] * xty[k];

  double ssr = 0.0, sst = 0.0, ybar = 0.0;
  for (double v : d.y) ybar += v;
  ybar /= double(n);
  for (std::size_t i = 0; i < n; ++i) {
    double pred = 0.0;
    for (std::size_t j = 0; j < p; ++j) pred += d.at(i, j) * fit.beta[j];
    ssr += (d.y[i] - pred) * (d.y[i] - pred);
    sst += (d.y[i] - ybar) * (d.y[i] - ybar);
  }
  double sigma2 = ssr / double(n - p);
  fit.r2 = 1.0 - ssr / sst;
  for (std::size_t j = 0; j < p; ++j)
    fit.se.push_back(std::sqrt(sigma2 * inv[j][j]));

  // VIF via auxiliary normal-equations regressions.
  fit.vif.assign(p, 0.0);
  for (std::size_t target = 1; target < p; ++target) {
    std::size_t q = p - 1;
    std::vector<std::vector<double>> ztz(q, std::vector<double>(q, 0.0));
    std::vector<double> zty(q, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> z;
      for (std::size_t j = 0; j < p; ++j)
        if (j != target) z.push_back(d.at(i, j));
      for (std::size_t a = 0; a < q; ++a) {
        for (std::size_t b = 0; b < q; ++b) ztz[a][b] += z[a] * z[b];
        zty[a] += z[a] * d.at(i, target);
      }
    }
    auto zinv = invert(ztz);
    std::vector<double> gamma(q, 0.0);
    for (std::size_t a = 0; a < q; ++a)
      for (std::size_t b = 0; b < q; ++b) gamma[a] += zinv[a][b] * zty[b];
    double ssr_t = 0.0, sst_t = 0.0, tbar = 0.0;
    for (std::size_t i = 0; i < n; ++i) tbar += d.at(i, target);
    tbar /= double(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> z;
      for (std::size_t j = 0; j < p; ++j)
        if (j != target) z.push_back(d.at(i, j));
      double pred = 0.0;
      for (std::size_t a = 0; a < q; ++a) pred += z[a] * gamma[a];
      ssr_t += (d.at(i, target) - pred) * (d.at(i, target) - pred);
      sst_t += (d.at(i, target) - tbar) * (d.at(i, target) - tbar);
    }
    double r2_t = 1.0 - ssr_t / sst_t;
    fit.vif[target] = 1.0 / (1.0 - r2_t);
  }
  return fit;
}

}  // namespace

TEST_CASE("two-point standardization lands on ±0.3536") {
  auto out = standardize_continuous({1.0, 3.0});
  CHECK(out[0] == doctest::Approx(-0.353553390593).epsilon(1e-9));
  CHECK(out[1] == doctest::Approx(0.353553390593).epsilon(1e-9));
}

TEST_CASE("exact linear fit recovers slope 2, intercept 0, R2 = 1") {
  auto d = design_from({{1, 0}, {1, 1}, {1, 2}}, {0, 2, 4},
                       {"intercept", "x"});
  auto rep = ols_fit(d);
  CHECK(rep.predictors[0].b == doctest::Approx(0.0).scale(1).epsilon(1e-12));
  CHECK(rep.predictors[1].b == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rep.r2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("orthogonal standardized predictors all have VIF 1") {
  // Columns: intercept, and two zero-mean orthogonal vectors.
  auto d = design_from({{1, 1, 1}, {1, 1, -1}, {1, -1, 1}, {1, -1, -1}},
                       {3, 1, 2, 0}, {"intercept", "a", "b"});
  auto rep = ols_fit(d);
  CHECK(rep.predictors[1].vif == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.predictors[2].vif == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("random designs match the normal-equations oracle to 1e-8") {
  Rng rng(83);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 50, p = 6;
    std::vector<std::vector<double>> x(n, std::vector<double>(p));
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i][0] = 1.0;
      for (std::size_t j = 1; j < p; ++j) x[i][j] = rng.unit() * 4.0 - 2.0;
      y[i] = 1.5 + 2.0 * x[i][1] - x[i][3] + (rng.unit() - 0.5);
    }
    auto d = design_from(x, y, {"intercept", "v1", "v2", "v3", "v4", "v5"});
    auto rep = ols_fit(d);
    auto oracle = normal_equations_fit(d);
    for (std::size_t j = 0; j < p; ++j) {
      CHECK(rep.predictors[j].b == doctest::Approx(oracle.beta[j]).epsilon(1e-8));
      CHECK(rep.predictors[j].se == doctest::Approx(oracle.se[j]).epsilon(1e-8));
      if (j > 0)
        CHECK(rep.predictors[j].vif ==
              doctest::Approx(oracle.vif[j]).epsilon(1e-8));
    }
    CHECK(rep.r2 == doctest::Approx(oracle.r2).epsilon(1e-10));
  }
}

TEST_CASE("predictions are invariant under affine reparameterization") {
  Rng rng(17);
  const std::size_t n = 40;
  std::vector<std::vector<double>> raw(n, std::vector<double>(3));
  std::vector<double> y(n);
  std::vector<double> c1(n), c2(n);
  for (std::size_t i = 0; i < n; ++i) {
    c1[i] = rng.unit() * 10.0 + 3.0;
    c2[i] = rng.unit() * 0.2 - 7.0;
    y[i] = 2.0 * c1[i] - 3.0 * c2[i] + (rng.unit() - 0.5);
    raw[i] = {1.0, c1[i], c2[i]};
  }
  auto d_raw = design_from(raw, y, {"intercept", "a", "b"});
  auto s1 = standardize_continuous(c1);
  auto s2 = standardize_continuous(c2);
  std::vector<std::vector<double>> std_x(n, std::vector<double>(3));
  for (std::size_t i = 0; i < n; ++i) std_x[i] = {1.0, s1[i], s2[i]};
  auto d_std = design_from(std_x, y, {"intercept", "a", "b"});

  auto fit_raw = ols_fit(d_raw);
  auto fit_std = ols_fit(d_std);
  for (std::size_t i = 0; i < n; ++i) {
    double pr = 0.0, ps = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
      pr += d_raw.at(i, j) * fit_raw.predictors[j].b;
      ps += d_std.at(i, j) * fit_std.predictors[j].b;
    }
    CHECK(pr == doctest::Approx(ps).epsilon(1e-8));
  }
  CHECK(fit_raw.r2 == doctest::Approx(fit_std.r2).epsilon(1e-10));
}

TEST_CASE("R2 equals the squared Pearson correlation of fit and response") {
  Rng rng(21);
  const std::size_t n = 60;
  std::vector<std::vector<double>> x(n, std::vector<double>(4));
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i][0] = 1.0;
    for (std::size_t j = 1; j < 4; ++j) x[i][j] = rng.unit() * 2.0 - 1.0;
    y[i] = x[i][1] + 0.5 * x[i][2] - 0.2 * x[i][3] + (rng.unit() - 0.5) * 0.7;
  }
  auto d = design_from(x, y, {"intercept", "a", "b", "c"});
  auto rep = ols_fit(d);
  std::vector<double> pred(n);
  for (std::size_t i = 0; i < n; ++i) {
    pred[i] = 0.0;
    for (std::size_t j = 0; j < 4; ++j)
      pred[i] += d.at(i, j) * rep.predictors[j].b;
  }
  double my = 0, mp = 0;
  for (std::size_t i = 0; i < n; ++i) {
    my += y[i];
    mp += pred[i];
  }
  my /= double(n);
  mp /= double(n);
  double num = 0, dy = 0, dp = 0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (y[i] - my) * (pred[i] - mp);
    dy += (y[i] - my) * (y[i] - my);
    dp += (pred[i] - mp) * (pred[i] - mp);
  }
  double pearson = num / std::sqrt(dy * dp);
  CHECK(rep.r2 == doctest::Approx(pearson * pearson).epsilon(1e-10));
}

TEST_CASE("two fits of the same design are bit-identical") {
  Rng rng(33);
  const std::size_t n = 30;
  std::vector<std::vector<double>> x(n, std::vector<double>(3));
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = {1.0, rng.unit(), rng.unit()};
    y[i] = rng.unit() * 5.0;
  }
  auto d = design_from(x, y, {"intercept", "a", "b"});
  auto r1 = ols_fit(d);
  auto r2 = ols_fit(d);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(r1.predictors[j].b == r2.predictors[j].b);
    CHECK(r1.predictors[j].se == r2.predictors[j].se);
    CHECK(r1.predictors[j].p == r2.predictors[j].p);
  }
}

TEST_CASE("rank deficiency names the collinear columns") {
  // Third column is twice the second.
  auto d = design_from(
      {{1, 1, 2}, {1, 2, 4}, {1, 3, 6}, {1, 4, 8}, {1, 0, 0}}, {1, 2, 3, 4, 5},
      {"intercept", "base", "doubled"});
  CHECK_THROWS_WITH_AS(ols_fit(d), doctest::Contains("doubled"), DataError);
}

TEST_CASE("incomplete beta against quadrature of the t density") {
  // Adaptive Simpson over the finite interval [0, t].
  auto t_pdf = [](double x, double nu) {
    double c = std::exp(std::lgamma((nu + 1.0) / 2.0) - std::lgamma(nu / 2.0)) /
               std::sqrt(nu * M_PI);
    return c * std::pow(1.0 + x * x / nu, -(nu + 1.0) / 2.0);
  };
  std::function<double(double, double, double, double, double, int)> simpson =
      [&](double a, double b, double fa, double fb, double nu,
          int depth) -> double {
    double m = 0.5 * (a + b);
    double fm = t_pdf(m, nu);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = t_pdf(lm, nu), frm = t_pdf(rm, nu);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth > 40 || std::fabs(left + right - whole) < 1e-14)
      return left + right;
    return simpson(a, m, fa, fm, nu, depth + 1) +
           simpson(m, b, fm, fb, nu, depth + 1);
  };
  for (double nu : {1.0, 3.0, 10.0, 44.0, 200.0}) {
    for (double t : {0.0, 0.5, 1.0, 1.96, 2.5, 4.0}) {
      double inner = simpson(0.0, t, t_pdf(0.0, nu), t_pdf(t, nu), nu, 0);
      double expected = 1.0 - 2.0 * inner;  // two-tailed
      CHECK(linalg::student_t_two_tailed_p(t, nu) ==
            doctest::Approx(expected).epsilon(1e-8));
    }
  }
}

namespace {

// 12 scripted candidates with known opposing-attention counts.
struct DesignFixture {
  TempDir dir{"design"};
  std::vector<std::uint64_t> opp_counts;  // written by build()
  Corpus corpus;
  std::vector<PartyLabel> labels;

  DesignFixture() : corpus(build()) {
    labels.resize(corpus.users().size());
    labels[*corpus.user_index("dem_fan")].label = Leaning::ProDem;
    labels[*corpus.user_index("rep_fan")].label = Leaning::ProRep;
  }

  Corpus build() {
    std::string roster = "candidate_id,party,gender,account_ids,follower_count\n";
    for (int i = 0; i < 12; ++i) {
      char id[16];
      std::snprintf(id, sizeof(id), "c%02d", i);
      roster += std::string(id) + (i % 2 ? ",Republican," : ",Democrat,") +
                (i % 3 ? "Male," : "Female,") + "a" + std::to_string(i) + "," +
                std::to_string(50 * (i + 1)) + "\n";
    }
    std::string tweets;
    int t = 0;
    opp_counts.assign(12, 0);
    for (int i = 0; i < 12; ++i) {
      char id[16];
      std::snprintf(id, sizeof(id), "c%02d", i);
      // i+1 interactions from the opposing fan, 2 from the same-party fan.
      std::string opp = i % 2 ? "dem_fan" : "rep_fan";
      std::string same = i % 2 ? "rep_fan" : "dem_fan";
      for (int k = 0; k <= i; ++k) {
        tweets += "{\"tweet_id\":\"t" + std::to_string(t++) +
                  "\",\"author_id\":\"" + opp +
                  "\",\"kind\":\"mention\",\"target_candidates\":[\"" + id +
                  "\"],\"retweeted_candidate\":null,\"text\":\"words here\","
                  "\"timestamp\":1}\n";
        ++opp_counts[i];
      }
      for (int k = 0; k < 2; ++k)
        tweets += "{\"tweet_id\":\"t" + std::to_string(t++) +
                  "\",\"author_id\":\"" + same +
                  "\",\"kind\":\"mention\",\"target_candidates\":[\"" + id +
                  "\"],\"retweeted_candidate\":null,\"text\":\"words here\","
                  "\"timestamp\":1}\n";
    }
    write_file(dir.path("tw.jsonl"), tweets);
    write_file(dir.path("us.jsonl"), "");
    write_file(dir.path("fo.jsonl"), "");
    write_file(dir.path("ro.csv"), roster);
    return ingest_corpus(dir.path("tw.jsonl"), dir.path("us.jsonl"),
                         dir.path("fo.jsonl"), dir.path("ro.csv"));
  }

  std::vector<CandidateAdversarySummary> summaries() {
    std::vector<CandidateAdversarySummary> out(12);
    for (int i = 0; i < 12; ++i) {
      out[i].candidate_id = corpus.roster()[i].candidate_id;
      out[i].adversarial_directed_count = std::uint64_t(i);
    }
    return out;
  }
};

}  // namespace

TEST_CASE("build_design applies log10(x+1) and 2-SD standardization") {
  DesignFixture f;
  DesignParams params;
  params.trim_fraction = 0.0;
  auto d = build_design(f.corpus, f.summaries(), f.labels, params);
  REQUIRE(d.n_rows == 12);

  // Independent route: raw logs, mean/SD by hand.
  std::vector<double> raw;
  for (int i = 0; i < 12; ++i)
    raw.push_back(std::log10(1.0 + double(f.opp_counts[i])));
  double mean = 0;
  for (double v : raw) mean += v;
  mean /= 12.0;
  double ss = 0;
  for (double v : raw) ss += (v - mean) * (v - mean);
  double sd = std::sqrt(ss / 11.0);
  for (int i = 0; i < 12; ++i)
    CHECK(d.at(i, 1) ==
          doctest::Approx((raw[i] - mean) / (2.0 * sd)).epsilon(1e-12));

  // Binary columns are centered.
  double sum_gender = 0, sum_party = 0;
  for (std::size_t i = 0; i < d.n_rows; ++i) {
    sum_gender += d.at(i, 3);
    sum_party += d.at(i, 4);
  }
  CHECK(sum_gender == doctest::Approx(0.0).scale(1).epsilon(1e-12));
  CHECK(sum_party == doctest::Approx(0.0).scale(1).epsilon(1e-12));
}

TEST_CASE("trim_fraction=0 keeps every candidate, trimming drops both ends") {
  DesignFixture f;
  DesignParams keep;
  keep.trim_fraction = 0.0;
  CHECK(build_design(f.corpus, f.summaries(), f.labels, keep).n_rows == 12);

  DesignParams trim;
  trim.trim_fraction = 0.1;  // floor(1.2) = 1 from each end
  trim.min_rows = 5;
  auto d = build_design(f.corpus, f.summaries(), f.labels, trim);
  CHECK(d.n_rows == 10);
  // c00 has the least attention (1+2), c11 the most (12+2); both are gone.
  for (const auto& id : d.row_ids) {
    CHECK(id != "c00");
    CHECK(id != "c11");
  }
}

TEST_CASE("too few rows after trimming is an error") {
  DesignFixture f;
  DesignParams params;
  params.trim_fraction = 0.45;
  CHECK_THROWS_AS(build_design(f.corpus, f.summaries(), f.labels, params),
                  DataError);
}
