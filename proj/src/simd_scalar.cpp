#include "stk/simd.hpp"

namespace stk::simd {

namespace detail {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace detail

namespace {

Backend detect() {
#if defined(__x86_64__)
  if (__builtin_cpu_supports("avx2")) return Backend::Avx2;
#endif
  return Backend::Scalar;
}

const Backend g_backend = detect();

}  // namespace

Backend active_backend() { return g_backend; }

double dot(const double* a, const double* b, std::size_t n) {
#if defined(__x86_64__)
  if (g_backend == Backend::Avx2) return detail::dot_avx2(a, b, n);
#endif
  return detail::dot_scalar(a, b, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
#if defined(__x86_64__)
  if (g_backend == Backend::Avx2) {
    detail::axpy_avx2(alpha, x, y, n);
    return;
  }
#endif
  detail::axpy_scalar(alpha, x, y, n);
}

}  // namespace stk::simd
