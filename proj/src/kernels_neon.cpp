#if defined(__aarch64__)

#include <arm_neon.h>

#include <limits>

#include "polarlex/kernels.hpp"

// NEON variants: two float64x2 registers emulate the 4-lane scheme
// (acc01 holds lanes 0,1; acc23 holds lanes 2,3). vmul+vadd, no fused ops,
// so results match the scalar reference bit for bit.

namespace polarlex::kernels {
namespace {

inline double reduce_lanes_add(float64x2_t acc01, float64x2_t acc23) {
  float64x2_t s = vaddq_f64(acc01, acc23);  // [l0+l2, l1+l3]
  return vgetq_lane_f64(s, 0) + vgetq_lane_f64(s, 1);
}

double dot_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t a01 = vdupq_n_f64(0.0), a23 = vdupq_n_f64(0.0);
  std::size_t blocks = n / 4;
  for (std::size_t i = 0; i < blocks; ++i) {
    const double* px = x + 4 * i;
    const double* py = y + 4 * i;
    a01 = vaddq_f64(a01, vmulq_f64(vld1q_f64(px), vld1q_f64(py)));
    a23 = vaddq_f64(a23, vmulq_f64(vld1q_f64(px + 2), vld1q_f64(py + 2)));
  }
  double r = reduce_lanes_add(a01, a23);
  for (std::size_t i = 4 * blocks; i < n; ++i) r += x[i] * y[i];
  return r;
}

double sum_neon(const double* x, std::size_t n) {
  float64x2_t a01 = vdupq_n_f64(0.0), a23 = vdupq_n_f64(0.0);
  std::size_t blocks = n / 4;
  for (std::size_t i = 0; i < blocks; ++i) {
    a01 = vaddq_f64(a01, vld1q_f64(x + 4 * i));
    a23 = vaddq_f64(a23, vld1q_f64(x + 4 * i + 2));
  }
  double r = reduce_lanes_add(a01, a23);
  for (std::size_t i = 4 * blocks; i < n; ++i) r += x[i];
  return r;
}

double l1_distance_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t a01 = vdupq_n_f64(0.0), a23 = vdupq_n_f64(0.0);
  std::size_t blocks = n / 4;
  for (std::size_t i = 0; i < blocks; ++i) {
    const double* px = x + 4 * i;
    const double* py = y + 4 * i;
    a01 = vaddq_f64(a01, vabdq_f64(vld1q_f64(px), vld1q_f64(py)));
    a23 = vaddq_f64(a23, vabdq_f64(vld1q_f64(px + 2), vld1q_f64(py + 2)));
  }
  double r = reduce_lanes_add(a01, a23);
  for (std::size_t i = 4 * blocks; i < n; ++i)
    r += x[i] > y[i] ? x[i] - y[i] : y[i] - x[i];
  return r;
}

double max_value_neon(const double* x, std::size_t n) {
  const double ninf = -std::numeric_limits<double>::infinity();
  float64x2_t a01 = vdupq_n_f64(ninf), a23 = vdupq_n_f64(ninf);
  std::size_t blocks = n / 4;
  for (std::size_t i = 0; i < blocks; ++i) {
    a01 = vmaxq_f64(a01, vld1q_f64(x + 4 * i));
    a23 = vmaxq_f64(a23, vld1q_f64(x + 4 * i + 2));
  }
  float64x2_t m = vmaxq_f64(a01, a23);  // [max(l0,l2), max(l1,l3)]
  double m02 = vgetq_lane_f64(m, 0);
  double m13 = vgetq_lane_f64(m, 1);
  double r = m02 > m13 ? m02 : m13;
  for (std::size_t i = 4 * blocks; i < n; ++i)
    if (x[i] > r) r = x[i];
  return r;
}

void axpby_neon(double a, const double* x, double b, const double* y,
                double* out, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  const float64x2_t vb = vdupq_n_f64(b);
  std::size_t pairs = n / 2;
  for (std::size_t i = 0; i < pairs; ++i) {
    float64x2_t vx = vmulq_f64(va, vld1q_f64(x + 2 * i));
    float64x2_t vy = vmulq_f64(vb, vld1q_f64(y + 2 * i));
    vst1q_f64(out + 2 * i, vaddq_f64(vx, vy));
  }
  for (std::size_t i = 2 * pairs; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void scale_neon(double* x, double s, std::size_t n) {
  const float64x2_t vs = vdupq_n_f64(s);
  std::size_t pairs = n / 2;
  for (std::size_t i = 0; i < pairs; ++i)
    vst1q_f64(x + 2 * i, vmulq_f64(vs, vld1q_f64(x + 2 * i)));
  for (std::size_t i = 2 * pairs; i < n; ++i) x[i] *= s;
}

}  // namespace

namespace detail {
const Ops neon_ops = {dot_neon,       sum_neon,   l1_distance_neon,
                      max_value_neon, axpby_neon, scale_neon};
}  // namespace detail

}  // namespace polarlex::kernels

#endif  // __aarch64__
