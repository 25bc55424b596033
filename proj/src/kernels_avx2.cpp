// Compiled with -mavx2 -mfma on x86-64; only entered after a runtime CPU check.
#include "freenc/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

#include <cstring>

namespace freenc::kernels {
namespace {

void gemm_acc_avx2(std::size_t rows, std::size_t inner, std::size_t cols, double alpha,
                   const double* a, const double* b, double* c) {
  const std::size_t vec_end = cols & ~std::size_t{3};
  for (std::size_t i = 0; i < rows; ++i) {
    double* crow = c + i * cols;
    for (std::size_t k = 0; k < inner; ++k) {
      const double aik = alpha * a[i * inner + k];
      if (aik == 0.0) continue;
      const __m256d va = _mm256_set1_pd(aik);
      const double* brow = b + k * cols;
      std::size_t j = 0;
      for (; j < vec_end; j += 4) {
        __m256d vc = _mm256_loadu_pd(crow + j);
        vc = _mm256_fmadd_pd(va, _mm256_loadu_pd(brow + j), vc);
        _mm256_storeu_pd(crow + j, vc);
      }
      for (; j < cols; ++j) crow[j] += aik * brow[j];
    }
  }
}

void gemm_avx2(std::size_t rows, std::size_t inner, std::size_t cols, const double* a,
               const double* b, double* c) {
  std::memset(c, 0, rows * cols * sizeof(double));
  gemm_acc_avx2(rows, inner, cols, 1.0, a, b, c);
}

void axpy_avx2(std::size_t len, double alpha, const double* x, double* y) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < len; ++i) y[i] += alpha * x[i];
}

double dot_avx2(std::size_t len, const double* x, const double* y) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < len; ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable t{Backend::Avx2, &gemm_avx2, &gemm_acc_avx2, &axpy_avx2, &dot_avx2};
  return &t;
}

}  // namespace freenc::kernels

#else

namespace freenc::kernels {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace freenc::kernels

#endif
