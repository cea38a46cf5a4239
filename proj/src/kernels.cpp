#include "dsim/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace dsim::kernels {

namespace {

Isa resolve_initial_isa() {
  const char* env = std::getenv("DSIM_SIMD");
  if (env != nullptr) {
    if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
    if (std::strcmp(env, "avx2") == 0) {
      if (!avx2::supported())
        throw std::runtime_error("DSIM_SIMD=avx2 requested but CPU lacks AVX2");
      return Isa::avx2;
    }
    // anything else (incl. "auto") falls through to detection
  }
  return avx2::supported() ? Isa::avx2 : Isa::scalar;
}

Isa g_isa = resolve_initial_isa();

}  // namespace

Isa active_isa() { return g_isa; }

const char* isa_name(Isa isa) {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

void force_isa(Isa isa) {
  if (isa == Isa::avx2 && !avx2::supported())
    throw std::runtime_error("AVX2 not supported on this CPU");
  g_isa = isa;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  if (g_isa == Isa::avx2)
    avx2::axpy(alpha, x, y, n);
  else
    scalar::axpy(alpha, x, y, n);
}

void scale(double alpha, double* x, std::size_t n) {
  if (g_isa == Isa::avx2)
    avx2::scale(alpha, x, n);
  else
    scalar::scale(alpha, x, n);
}

double dot(const double* a, const double* b, std::size_t n) {
  if (g_isa == Isa::avx2) return avx2::dot(a, b, n);
  return scalar::dot(a, b, n);
}

std::size_t amax_index(const double* x, std::size_t n) {
  if (g_isa == Isa::avx2) return avx2::amax_index(x, n);
  return scalar::amax_index(x, n);
}

}  // namespace dsim::kernels
