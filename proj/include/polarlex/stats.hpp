#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polarlex/corpus.hpp"
#include "polarlex/dpp.hpp"
#include "polarlex/party.hpp"

namespace polarlex {

// Per-candidate regression rows. Predictor columns, after the intercept:
//   opp_attention  log10(1 + interactions from opposing-leaning users)
//   followers      log10(1 + follower count)
//   gender         male = 1 (female is the base level)
//   party          Republican = 1 (Democrat is the base level)
//   gender_x_party raw product of the two binaries
// Continuous columns are centered and divided by two sample standard
// deviations; binary columns (the interaction included) are centered.
struct RegressionDesign {
  std::vector<std::string> row_ids;    // candidate ids, design order
  std::vector<std::string> col_names;  // including "intercept" first
  std::vector<double> x;               // row-major n x p
  std::vector<double> y;               // directed adversarial counts
  std::size_t n_rows = 0, n_cols = 0;

  double at(std::size_t r, std::size_t c) const { return x[r * n_cols + c]; }
};

struct DesignParams {
  double trim_fraction = 0.05;  // dropped from each end by total attention
  std::size_t min_rows = 10;
};

RegressionDesign build_design(
    const Corpus& corpus, const std::vector<CandidateAdversarySummary>& summaries,
    const std::vector<PartyLabel>& labels, const DesignParams& params = {});

struct PredictorStats {
  std::string name;
  double b = 0.0;    // coefficient
  double se = 0.0;
  double t = 0.0;
  double p = 0.0;    // two-tailed
  double vif = 0.0;  // 0 for the intercept
};

struct RegressionReport {
  std::vector<PredictorStats> predictors;
  double r2 = 0.0;
  double sigma2 = 0.0;  // residual variance
  std::size_t n = 0;
};

// OLS through Householder QR; rank deficiency is an error naming the
// collinear columns. VIFs come from auxiliary regressions of each predictor
// on the remaining ones.
RegressionReport ols_fit(const RegressionDesign& design);

// Centering/scaling helper exposed for tests: (v - mean) / (2 * sd(n-1)).
std::vector<double> standardize_continuous(const std::vector<double>& v);

}  // namespace polarlex
