#include "polarlex/kernels.hpp"

#include <limits>

// Reference kernels. The 4-lane accumulation mirrors one AVX2 register of
// doubles; SIMD backends must reproduce these results bit for bit.

namespace polarlex::kernels {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double l0 = 0.0, l1 = 0.0, l2 = 0.0, l3 = 0.0;
  std::size_t blocks = n / 4;
  for (std::size_t i = 0; i < blocks; ++i) {
    const std::size_t b = 4 * i;
    l0 += x[b + 0] * y[b + 0];
    l1 += x[b + 1] * y[b + 1];
    l2 += x[b + 2] * y[b + 2];
    l3 += x[b + 3] * y[b + 3];
  }
  double acc = (l0 + l2) + (l1 + l3);
  for (std::size_t i = 4 * blocks; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double sum_scalar(const double* x, std::size_t n) {
  double l0 = 0.0, l1 = 0.0, l2 = 0.0, l3 = 0.0;
  std::size_t blocks = n / 4;
  for (std::size_t i = 0; i < blocks; ++i) {
    const std::size_t b = 4 * i;
    l0 += x[b + 0];
    l1 += x[b + 1];
    l2 += x[b + 2];
    l3 += x[b + 3];
  }
  double acc = (l0 + l2) + (l1 + l3);
  for (std::size_t i = 4 * blocks; i < n; ++i) acc += x[i];
  return acc;
}

double l1_distance_scalar(const double* x, const double* y, std::size_t n) {
  double l0 = 0.0, l1 = 0.0, l2 = 0.0, l3 = 0.0;
  std::size_t blocks = n / 4;
  for (std::size_t i = 0; i < blocks; ++i) {
    const std::size_t b = 4 * i;
    l0 += x[b + 0] > y[b + 0] ? x[b + 0] - y[b + 0] : y[b + 0] - x[b + 0];
    l1 += x[b + 1] > y[b + 1] ? x[b + 1] - y[b + 1] : y[b + 1] - x[b + 1];
    l2 += x[b + 2] > y[b + 2] ? x[b + 2] - y[b + 2] : y[b + 2] - x[b + 2];
    l3 += x[b + 3] > y[b + 3] ? x[b + 3] - y[b + 3] : y[b + 3] - x[b + 3];
  }
  double acc = (l0 + l2) + (l1 + l3);
  for (std::size_t i = 4 * blocks; i < n; ++i)
    acc += x[i] > y[i] ? x[i] - y[i] : y[i] - x[i];
  return acc;
}

double max_value_scalar(const double* x, std::size_t n) {
  const double ninf = -std::numeric_limits<double>::infinity();
  double l0 = ninf, l1 = ninf, l2 = ninf, l3 = ninf;
  std::size_t blocks = n / 4;
  for (std::size_t i = 0; i < blocks; ++i) {
    const std::size_t b = 4 * i;
    if (x[b + 0] > l0) l0 = x[b + 0];
    if (x[b + 1] > l1) l1 = x[b + 1];
    if (x[b + 2] > l2) l2 = x[b + 2];
    if (x[b + 3] > l3) l3 = x[b + 3];
  }
  double m02 = l0 > l2 ? l0 : l2;
  double m13 = l1 > l3 ? l1 : l3;
  double acc = m02 > m13 ? m02 : m13;
  for (std::size_t i = 4 * blocks; i < n; ++i)
    if (x[i] > acc) acc = x[i];
  return acc;
}

void axpby_scalar(double a, const double* x, double b, const double* y,
                  double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void scale_scalar(double* x, double s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= s;
}

}  // namespace

namespace detail {
const Ops scalar_ops = {dot_scalar,       sum_scalar,   l1_distance_scalar,
                        max_value_scalar, axpby_scalar, scale_scalar};
}  // namespace detail

}  // namespace polarlex::kernels
