#include "polarlex/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "polarlex/types.hpp"

namespace polarlex::linalg {

QrDecomposition householder_qr(const Matrix& x, const std::vector<double>& y) {
  const std::size_t n = x.rows, p = x.cols;
  if (n < p) throw UsageError("QR needs at least as many rows as columns");
  if (y.size() != n) throw UsageError("QR response length mismatch");

  Matrix a = x;
  std::vector<double> qy = y;

  double max_diag = 0.0;
  for (std::size_t j = 0; j < p; ++j) {
    // Householder vector for column j below the diagonal.
    double norm2 = 0.0;
    for (std::size_t i = j; i < n; ++i) norm2 += a.at(i, j) * a.at(i, j);
    double norm = std::sqrt(norm2);
    if (a.at(j, j) > 0) norm = -norm;
    if (norm != 0.0) {
      std::vector<double> v(n - j);
      v[0] = a.at(j, j) - norm;
      for (std::size_t i = j + 1; i < n; ++i) v[i - j] = a.at(i, j);
      double vtv = 0.0;
      for (double vi : v) vtv += vi * vi;
      if (vtv > 0.0) {
        for (std::size_t c = j; c < p; ++c) {
          double dot = 0.0;
          for (std::size_t i = j; i < n; ++i) dot += v[i - j] * a.at(i, c);
          double f = 2.0 * dot / vtv;
          for (std::size_t i = j; i < n; ++i) a.at(i, c) -= f * v[i - j];
        }
        double dot = 0.0;
        for (std::size_t i = j; i < n; ++i) dot += v[i - j] * qy[i];
        double f = 2.0 * dot / vtv;
        for (std::size_t i = j; i < n; ++i) qy[i] -= f * v[i - j];
      }
    }
    max_diag = std::max(max_diag, std::fabs(a.at(j, j)));
  }

  QrDecomposition out;
  out.r = Matrix(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i; j < p; ++j) out.r.at(i, j) = a.at(i, j);
  out.qty.assign(qy.begin(), qy.begin() + static_cast<std::ptrdiff_t>(p));

  const double tol = 1e-10 * std::max(1.0, max_diag);
  for (std::size_t j = 0; j < p; ++j)
    if (std::fabs(out.r.at(j, j)) < tol) out.deficient_cols.push_back(j);
  out.full_rank = out.deficient_cols.empty();
  return out;
}

std::vector<double> back_substitute(const Matrix& r,
                                    const std::vector<double>& b) {
  const std::size_t p = r.rows;
  std::vector<double> x(p, 0.0);
  for (std::size_t ii = p; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t j = ii + 1; j < p; ++j) s -= r.at(ii, j) * x[j];
    x[ii] = s / r.at(ii, ii);
  }
  return x;
}

Matrix invert_upper(const Matrix& r) {
  const std::size_t p = r.rows;
  Matrix inv(p, p);
  for (std::size_t col = 0; col < p; ++col) {
    std::vector<double> e(p, 0.0);
    e[col] = 1.0;
    auto x = back_substitute(r, e);
    for (std::size_t i = 0; i < p; ++i) inv.at(i, col) = x[i];
  }
  return inv;
}

EigenDecomposition jacobi_eigen(const Matrix& sym, int max_sweeps) {
  const std::size_t n = sym.rows;
  if (sym.cols != n) throw UsageError("jacobi_eigen expects a square matrix");
  Matrix a = sym;
  Matrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) v.at(i, i) = 1.0;

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += a.at(i, j) * a.at(i, j);
    return std::sqrt(s);
  };

  double scale = 0.0;
  for (double x : a.a) scale = std::max(scale, std::fabs(x));
  const double stop = 1e-14 * std::max(1.0, scale) * static_cast<double>(n);

  for (int sweep = 0; sweep < max_sweeps && off_norm() > stop; ++sweep) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = a.at(p, q);
        if (std::fabs(apq) <= 1e-300) continue;
        double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (std::size_t i = 0; i < n; ++i) {
          double aip = a.at(i, p), aiq = a.at(i, q);
          a.at(i, p) = c * aip - s * aiq;
          a.at(i, q) = s * aip + c * aiq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          double api = a.at(p, i), aqi = a.at(q, i);
          a.at(p, i) = c * api - s * aqi;
          a.at(q, i) = s * api + c * aqi;
        }
        for (std::size_t i = 0; i < n; ++i) {
          double vip = v.at(i, p), viq = v.at(i, q);
          v.at(i, p) = c * vip - s * viq;
          v.at(i, q) = s * vip + c * viq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a.at(x, x) > a.at(y, y);
  });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a.at(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i)
      out.vectors.at(i, k) = v.at(i, order[k]);
  }
  return out;
}

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double betacf(double a, double b, double x) {
  constexpr double kFpMin = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 300; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 3e-15) break;
  }
  return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) -
                          std::lgamma(b) + a * std::log(x) +
                          b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double student_t_two_tailed_p(double t, double dof) {
  if (dof <= 0.0) throw UsageError("degrees of freedom must be positive");
  if (!std::isfinite(t)) return 0.0;
  const double x = dof / (dof + t * t);
  return incomplete_beta(dof / 2.0, 0.5, x);
}

}  // namespace polarlex::linalg
