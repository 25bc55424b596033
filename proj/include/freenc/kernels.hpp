#pragma once
// Dense real kernels behind every matrix product in the library.
//
// Each kernel has a portable scalar reference and, where the target allows,
// a vectorised variant (AVX2+FMA on x86-64, NEON on aarch64). The variant is
// picked once at runtime from the CPU feature bits; FREENC_SIMD=scalar in the
// environment forces the reference path.

#include <cstddef>
#include <string_view>

namespace freenc::kernels {

enum class Backend { Scalar, Avx2, Neon };

// C (rows x cols) = A (rows x inner) * B (inner x cols), all row-major.
// C must not alias A or B.
using GemmFn = void (*)(std::size_t rows, std::size_t inner, std::size_t cols,
                        const double* a, const double* b, double* c);
// C += alpha * A * B
using GemmAccFn = void (*)(std::size_t rows, std::size_t inner, std::size_t cols,
                           double alpha, const double* a, const double* b, double* c);
// y += alpha * x
using AxpyFn = void (*)(std::size_t len, double alpha, const double* x, double* y);
using DotFn = double (*)(std::size_t len, const double* x, const double* y);

struct KernelTable {
  Backend backend;
  GemmFn gemm;
  GemmAccFn gemm_acc;
  AxpyFn axpy;
  DotFn dot;
};

namespace scalar {
void gemm(std::size_t rows, std::size_t inner, std::size_t cols, const double* a,
          const double* b, double* c);
void gemm_acc(std::size_t rows, std::size_t inner, std::size_t cols, double alpha,
              const double* a, const double* b, double* c);
void axpy(std::size_t len, double alpha, const double* x, double* y);
double dot(std::size_t len, const double* x, const double* y);
}  // namespace scalar

// Returns nullptr when the variant was not compiled for this target.
const KernelTable* avx2_table();
const KernelTable* neon_table();
const KernelTable& scalar_table();

bool backend_supported(Backend b);

// Active table. Selected lazily on first call.
const KernelTable& active();
Backend active_backend();
// Throws std::invalid_argument if the backend is not supported here.
void set_backend(Backend b);

std::string_view backend_name(Backend b);

inline void gemm(std::size_t rows, std::size_t inner, std::size_t cols, const double* a,
                 const double* b, double* c) {
  active().gemm(rows, inner, cols, a, b, c);
}
inline void gemm_acc(std::size_t rows, std::size_t inner, std::size_t cols, double alpha,
                     const double* a, const double* b, double* c) {
  active().gemm_acc(rows, inner, cols, alpha, a, b, c);
}
inline void axpy(std::size_t len, double alpha, const double* x, double* y) {
  active().axpy(len, alpha, x, y);
}
inline double dot(std::size_t len, const double* x, const double* y) {
  return active().dot(len, x, y);
}

}  // namespace freenc::kernels
