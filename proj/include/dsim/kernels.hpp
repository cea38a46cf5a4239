#pragma once
// Dense vector kernels used by the simplex inner loops. A scalar reference
// implementation is always available; an AVX2 variant is selected at runtime
// when the CPU supports it. The AVX2 elementwise kernels (axpy, scale) use
// plain mul/add so they produce bit-identical results to the scalar path;
// dot() reduces in a different order and may differ in the last ulps.

#include <cstddef>

namespace dsim::kernels {

enum class Isa { scalar, avx2 };

// Active instruction set. Resolved once from CPU detection, overridable
// with the DSIM_SIMD environment variable ("scalar", "avx2", "auto").
Isa active_isa();
const char* isa_name(Isa isa);

// Force a specific implementation (tests). Throws if unsupported on this CPU.
void force_isa(Isa isa);

// y[i] += alpha * x[i]
void axpy(double alpha, const double* x, double* y, std::size_t n);
// x[i] *= alpha
void scale(double alpha, double* x, std::size_t n);
// sum_i a[i] * b[i]
double dot(const double* a, const double* b, std::size_t n);
// index of the largest |x[i]|; ties resolve to the lowest index; n must be > 0
std::size_t amax_index(const double* x, std::size_t n);

namespace scalar {
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double alpha, double* x, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
std::size_t amax_index(const double* x, std::size_t n);
}  // namespace scalar

namespace avx2 {
bool supported();
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double alpha, double* x, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
std::size_t amax_index(const double* x, std::size_t n);
}  // namespace avx2

}  // namespace dsim::kernels
