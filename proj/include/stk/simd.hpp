#pragma once

#include <cstddef>

// Runtime-dispatched inner-loop kernels. Scalar reference implementations
// always exist; an AVX2 variant is selected on x86-64 CPUs that support it.
// The variants are equivalence-tested against the scalar reference.

namespace stk::simd {

enum class Backend { Scalar, Avx2 };

Backend active_backend();

// sum_i a[i] * b[i]
double dot(const double* a, const double* b, std::size_t n);

// y[i] += alpha * x[i]
void axpy(double alpha, const double* x, double* y, std::size_t n);

namespace detail {
double dot_scalar(const double* a, const double* b, std::size_t n);
void axpy_scalar(double alpha, const double* x, double* y, std::size_t n);
#if defined(__x86_64__)
double dot_avx2(const double* a, const double* b, std::size_t n);
void axpy_avx2(double alpha, const double* x, double* y, std::size_t n);
#endif
}  // namespace detail

}  // namespace stk::simd
