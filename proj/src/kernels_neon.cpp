#include "freenc/kernels.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)
#include <arm_neon.h>

#include <cstring>

namespace freenc::kernels {
namespace {

void gemm_acc_neon(std::size_t rows, std::size_t inner, std::size_t cols, double alpha,
                   const double* a, const double* b, double* c) {
  const std::size_t vec_end = cols & ~std::size_t{1};
  for (std::size_t i = 0; i < rows; ++i) {
    double* crow = c + i * cols;
    for (std::size_t k = 0; k < inner; ++k) {
      const double aik = alpha * a[i * inner + k];
      if (aik == 0.0) continue;
      const float64x2_t va = vdupq_n_f64(aik);
      const double* brow = b + k * cols;
      std::size_t j = 0;
      for (; j < vec_end; j += 2)
        vst1q_f64(crow + j, vfmaq_f64(vld1q_f64(crow + j), va, vld1q_f64(brow + j)));
      for (; j < cols; ++j) crow[j] += aik * brow[j];
    }
  }
}

void gemm_neon(std::size_t rows, std::size_t inner, std::size_t cols, const double* a,
               const double* b, double* c) {
  std::memset(c, 0, rows * cols * sizeof(double));
  gemm_acc_neon(rows, inner, cols, 1.0, a, b, c);
}

void axpy_neon(std::size_t len, double alpha, const double* x, double* y) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  for (; i < len; ++i) y[i] += alpha * x[i];
}

double dot_neon(std::size_t len, const double* x, const double* y) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) acc = vfmaq_f64(acc, vld1q_f64(x + i), vld1q_f64(y + i));
  double s = vaddvq_f64(acc);
  for (; i < len; ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

const KernelTable* neon_table() {
  static const KernelTable t{Backend::Neon, &gemm_neon, &gemm_acc_neon, &axpy_neon, &dot_neon};
  return &t;
}

}  // namespace freenc::kernels

#else

namespace freenc::kernels {
const KernelTable* neon_table() { return nullptr; }
}  // namespace freenc::kernels

#endif
