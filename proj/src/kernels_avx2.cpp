#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <limits>

#include "polarlex/kernels.hpp"

// AVX2 variants. Deliberately mul+add (no FMA) so results stay bit-identical
// with the scalar reference lane scheme.

namespace polarlex::kernels {
namespace {

inline double reduce_lanes_add(__m256d acc) {
  __m128d lo = _mm256_castpd256_pd128(acc);   // lanes 0,1
  __m128d hi = _mm256_extractf128_pd(acc, 1); // lanes 2,3
  __m128d s = _mm_add_pd(lo, hi);             // [l0+l2, l1+l3]
  return _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

inline double reduce_lanes_max(__m256d acc) {
  __m128d lo = _mm256_castpd256_pd128(acc);
  __m128d hi = _mm256_extractf128_pd(acc, 1);
  __m128d m = _mm_max_pd(lo, hi);             // [max(l0,l2), max(l1,l3)]
  double m02 = _mm_cvtsd_f64(m);
  double m13 = _mm_cvtsd_f64(_mm_unpackhi_pd(m, m));
  return m02 > m13 ? m02 : m13;
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t blocks = n / 4;
  for (std::size_t i = 0; i < blocks; ++i) {
    __m256d vx = _mm256_loadu_pd(x + 4 * i);
    __m256d vy = _mm256_loadu_pd(y + 4 * i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(vx, vy));
  }
  double r = reduce_lanes_add(acc);
  for (std::size_t i = 4 * blocks; i < n; ++i) r += x[i] * y[i];
  return r;
}

double sum_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t blocks = n / 4;
  for (std::size_t i = 0; i < blocks; ++i)
    acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + 4 * i));
  double r = reduce_lanes_add(acc);
  for (std::size_t i = 4 * blocks; i < n; ++i) r += x[i];
  return r;
}

double l1_distance_avx2(const double* x, const double* y, std::size_t n) {
  const __m256d absmask =
      _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d acc = _mm256_setzero_pd();
  std::size_t blocks = n / 4;
  for (std::size_t i = 0; i < blocks; ++i) {
    __m256d vx = _mm256_loadu_pd(x + 4 * i);
    __m256d vy = _mm256_loadu_pd(y + 4 * i);
    acc = _mm256_add_pd(acc, _mm256_and_pd(_mm256_sub_pd(vx, vy), absmask));
  }
  double r = reduce_lanes_add(acc);
  for (std::size_t i = 4 * blocks; i < n; ++i)
    r += x[i] > y[i] ? x[i] - y[i] : y[i] - x[i];
  return r;
}

double max_value_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  std::size_t blocks = n / 4;
  for (std::size_t i = 0; i < blocks; ++i)
    acc = _mm256_max_pd(acc, _mm256_loadu_pd(x + 4 * i));
  double r = reduce_lanes_max(acc);
  for (std::size_t i = 4 * blocks; i < n; ++i)
    if (x[i] > r) r = x[i];
  return r;
}

void axpby_avx2(double a, const double* x, double b, const double* y,
                double* out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t blocks = n / 4;
  for (std::size_t i = 0; i < blocks; ++i) {
    __m256d vx = _mm256_mul_pd(va, _mm256_loadu_pd(x + 4 * i));
    __m256d vy = _mm256_mul_pd(vb, _mm256_loadu_pd(y + 4 * i));
    _mm256_storeu_pd(out + 4 * i, _mm256_add_pd(vx, vy));
  }
  for (std::size_t i = 4 * blocks; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void scale_avx2(double* x, double s, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t blocks = n / 4;
  for (std::size_t i = 0; i < blocks; ++i)
    _mm256_storeu_pd(x + 4 * i, _mm256_mul_pd(vs, _mm256_loadu_pd(x + 4 * i)));
  for (std::size_t i = 4 * blocks; i < n; ++i) x[i] *= s;
}

}  // namespace

namespace detail {
const Ops avx2_ops = {dot_avx2,       sum_avx2,   l1_distance_avx2,
                      max_value_avx2, axpby_avx2, scale_avx2};
}  // namespace detail

}  // namespace polarlex::kernels

#endif  // x86_64
