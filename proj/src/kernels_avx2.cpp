// AVX2 variants of the dense kernels. This translation unit is compiled with
// -mavx2; callers must check avx2::supported() before dispatching here.

#include "dsim/kernels.hpp"

#include <cmath>

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define DSIM_HAVE_AVX2_TU 1
#endif

namespace dsim::kernels::avx2 {

bool supported() {
#if defined(DSIM_HAVE_AVX2_TU) && defined(__GNUC__)
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

#ifdef DSIM_HAVE_AVX2_TU

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // mul+add (not fma) so results match the scalar path bit for bit
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d vy = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(y + i, _mm256_add_pd(vy, _mm256_mul_pd(va, vx)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale(double alpha, double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= alpha;
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

std::size_t amax_index(const double* x, std::size_t n) {
  // pass 1: vector max of |x|, pass 2: first index attaining it (same
  // tie-breaking as the scalar kernel)
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d vmax = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    vmax = _mm256_max_pd(vmax, _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(x + i)));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, vmax);
  double best = lanes[0];
  for (int k = 1; k < 4; ++k)
    if (lanes[k] > best) best = lanes[k];
  for (; i < n; ++i) {
    const double v = std::fabs(x[i]);
    if (v > best) best = v;
  }
  for (std::size_t j = 0; j < n; ++j)
    if (std::fabs(x[j]) == best) return j;
  return 0;
}

#else  // !DSIM_HAVE_AVX2_TU — keep the symbols defined on non-x86 builds

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  scalar::axpy(alpha, x, y, n);
}
void scale(double alpha, double* x, std::size_t n) { scalar::scale(alpha, x, n); }
double dot(const double* a, const double* b, std::size_t n) {
  return scalar::dot(a, b, n);
}
std::size_t amax_index(const double* x, std::size_t n) {
  return scalar::amax_index(x, n);
}

#endif

}  // namespace dsim::kernels::avx2
