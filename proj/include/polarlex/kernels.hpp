#pragma once

#include <cstddef>
#include <string>

namespace polarlex::kernels {

// Dense double-precision kernels used by the embedding kNN, the restart-walk
// iteration and the regression solver. Scalar is the reference; AVX2/NEON
// variants are selected at runtime and must return bit-identical results.
//
// All reductions follow one fixed accumulation scheme: four strided lanes
// over blocks of 4 (lane j accumulates element 4*i+j), lanes combined as
// (l0+l2) + (l1+l3), remainder folded in sequentially. No FMA contraction.

enum class Backend { Scalar, Avx2, Neon };

struct Ops {
  double (*dot)(const double* x, const double* y, std::size_t n);
  double (*sum)(const double* x, std::size_t n);
  double (*l1_distance)(const double* x, const double* y, std::size_t n);
  double (*max_value)(const double* x, std::size_t n);  // n >= 1
  // out[i] = a*x[i] + b*y[i]; out may alias x or y
  void (*axpby)(double a, const double* x, double b, const double* y,
                double* out, std::size_t n);
  void (*scale)(double* x, double s, std::size_t n);
};

// Best backend supported by this CPU (honours POLARLEX_SIMD=scalar|avx2|neon).
Backend detect_backend();
bool backend_available(Backend b);
std::string backend_name(Backend b);

// Active kernel table. Initialized from detect_backend() on first use.
const Ops& ops();

// Override the active backend (tests, benchmarking). Throws if unavailable.
void force_backend(Backend b);

// Table for an explicit backend, for equivalence testing.
const Ops& ops_for(Backend b);

namespace detail {
extern const Ops scalar_ops;
#if defined(__x86_64__) || defined(_M_X64)
extern const Ops avx2_ops;
#endif
#if defined(__aarch64__)
extern const Ops neon_ops;
#endif
}  // namespace detail

}  // namespace polarlex::kernels
