#include "polarlex/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>

namespace polarlex::kernels {

bool backend_available(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2") != 0;
#else
      return false;
#endif
    case Backend::Neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

std::string backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "?";
}

Backend detect_backend() {
  if (const char* env = std::getenv("POLARLEX_SIMD")) {
    std::string s(env);
    if (s == "scalar") return Backend::Scalar;
    if (s == "avx2" && backend_available(Backend::Avx2)) return Backend::Avx2;
    if (s == "neon" && backend_available(Backend::Neon)) return Backend::Neon;
  }
  if (backend_available(Backend::Avx2)) return Backend::Avx2;
  if (backend_available(Backend::Neon)) return Backend::Neon;
  return Backend::Scalar;
}

const Ops& ops_for(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return detail::scalar_ops;
    case Backend::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return detail::avx2_ops;
#else
      break;
#endif
    case Backend::Neon:
#if defined(__aarch64__)
      return detail::neon_ops;
#else
      break;
#endif
  }
  throw std::runtime_error("kernel backend not compiled in: " +
                           backend_name(b));
}

namespace {
std::atomic<const Ops*> g_active{nullptr};
}

const Ops& ops() {
  const Ops* p = g_active.load(std::memory_order_acquire);
  if (!p) {
    p = &ops_for(detect_backend());
    g_active.store(p, std::memory_order_release);
  }
  return *p;
}

void force_backend(Backend b) {
  if (!backend_available(b))
    throw std::runtime_error("backend unavailable on this CPU: " +
                             backend_name(b));
  g_active.store(&ops_for(b), std::memory_order_release);
}

}  // namespace polarlex::kernels
