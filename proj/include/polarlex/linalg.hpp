#pragma once

#include <cstddef>
#include <vector>

namespace polarlex::linalg {

// Small dense row-major matrix.
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<double> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
  double& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

// Householder QR of an n x p matrix (n >= p). R is p x p upper triangular;
// qty holds the first p entries of Qᵀy.
struct QrDecomposition {
  Matrix r;
  std::vector<double> qty;
  std::vector<std::size_t> deficient_cols;  // |R_jj| below tolerance
  bool full_rank = true;
};
QrDecomposition householder_qr(const Matrix& x, const std::vector<double>& y);

std::vector<double> back_substitute(const Matrix& r,
                                    const std::vector<double>& b);

// Inverse of a p x p upper-triangular matrix.
Matrix invert_upper(const Matrix& r);

// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
// Eigenvalues descending; vectors.at(i, k) is component i of eigenvector k.
struct EigenDecomposition {
  std::vector<double> values;
  Matrix vectors;
};
EigenDecomposition jacobi_eigen(const Matrix& sym, int max_sweeps = 64);

// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);

// Two-tailed p-value of a Student-t statistic with dof degrees of freedom.
double student_t_two_tailed_p(double t, double dof);

}  // namespace polarlex::linalg
