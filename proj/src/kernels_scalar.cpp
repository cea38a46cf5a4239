#include "dsim/kernels.hpp"

#include <cmath>

namespace dsim::kernels::scalar {

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale(double alpha, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

std::size_t amax_index(const double* x, std::size_t n) {
  std::size_t best = 0;
  double best_abs = std::fabs(x[0]);
  for (std::size_t i = 1; i < n; ++i) {
    const double v = std::fabs(x[i]);
    if (v > best_abs) {
      best_abs = v;
      best = i;
    }
  }
  return best;
}

}  // namespace dsim::kernels::scalar
