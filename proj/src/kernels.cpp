#include "freenc/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

namespace freenc::kernels {

namespace scalar {

void gemm(std::size_t rows, std::size_t inner, std::size_t cols, const double* a,
          const double* b, double* c) {
  std::memset(c, 0, rows * cols * sizeof(double));
  gemm_acc(rows, inner, cols, 1.0, a, b, c);
}

void gemm_acc(std::size_t rows, std::size_t inner, std::size_t cols, double alpha,
              const double* a, const double* b, double* c) {
  for (std::size_t i = 0; i < rows; ++i) {
    double* crow = c + i * cols;
    for (std::size_t k = 0; k < inner; ++k) {
      const double aik = alpha * a[i * inner + k];
      if (aik == 0.0) continue;
      const double* brow = b + k * cols;
      for (std::size_t j = 0; j < cols; ++j) crow[j] += aik * brow[j];
    }
  }
}

void axpy(std::size_t len, double alpha, const double* x, double* y) {
  for (std::size_t i = 0; i < len; ++i) y[i] += alpha * x[i];
}

double dot(std::size_t len, const double* x, const double* y) {
  double s = 0.0;
  for (std::size_t i = 0; i < len; ++i) s += x[i] * y[i];
  return s;
}

}  // namespace scalar

const KernelTable& scalar_table() {
  static const KernelTable t{Backend::Scalar, &scalar::gemm, &scalar::gemm_acc, &scalar::axpy,
                             &scalar::dot};
  return t;
}

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* table_for(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return &scalar_table();
    case Backend::Avx2:
      return cpu_has_avx2() ? avx2_table() : nullptr;
    case Backend::Neon:
      return neon_table();
  }
  return nullptr;
}

const KernelTable* select_default() {
  if (const char* env = std::getenv("FREENC_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return &scalar_table();
    if (want == "avx2" && table_for(Backend::Avx2)) return table_for(Backend::Avx2);
    if (want == "neon" && table_for(Backend::Neon)) return table_for(Backend::Neon);
  }
  if (const auto* t = table_for(Backend::Avx2)) return t;
  if (const auto* t = table_for(Backend::Neon)) return t;
  return &scalar_table();
}

std::atomic<const KernelTable*> g_active{nullptr};

}  // namespace

bool backend_supported(Backend b) { return table_for(b) != nullptr; }

const KernelTable& active() {
  const KernelTable* t = g_active.load(std::memory_order_acquire);
  if (t == nullptr) {
    t = select_default();
    g_active.store(t, std::memory_order_release);
  }
  return *t;
}

Backend active_backend() { return active().backend; }

void set_backend(Backend b) {
  const KernelTable* t = table_for(b);
  if (t == nullptr)
    throw std::invalid_argument("kernel backend not available: " + std::string(backend_name(b)));
  g_active.store(t, std::memory_order_release);
}

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
    case Backend::Neon:
      return "neon";
  }
  return "unknown";
}

}  // namespace freenc::kernels
