#include <cstdlib>
#include <cstring>

#include "fpir/kernels.hpp"

namespace fpir::kernels {

namespace {

ComplexSum phase_sum_scalar(const double* w, const double* cos_t, const double* sin_t, std::size_t n) {
  ComplexSum s;
  for (std::size_t a = 0; a < n; ++a) {
    s.re += w[a] * cos_t[a];
    s.im += w[a] * sin_t[a];
  }
  return s;
}

ComplexSum complex_phase_sum_scalar(const double* wr, const double* wi, const double* cos_t,
                                    const double* sin_t, std::size_t n) {
  ComplexSum s;
  for (std::size_t a = 0; a < n; ++a) {
    s.re += wr[a] * cos_t[a] - wi[a] * sin_t[a];
    s.im += wr[a] * sin_t[a] + wi[a] * cos_t[a];
  }
  return s;
}

ComplexSum conj_dot_scalar(const double* ar, const double* ai, const double* br, const double* bi,
                           std::size_t n) {
  ComplexSum s;
  for (std::size_t i = 0; i < n; ++i) {
    s.re += ar[i] * br[i] + ai[i] * bi[i];
    s.im += ai[i] * br[i] - ar[i] * bi[i];
  }
  return s;
}

void gather_axpy_scalar(double* out_re, double* out_im, const double* in_re, const double* in_im,
                        const std::uint32_t* idx, double w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out_re[i] += w * in_re[idx[i]];
    out_im[i] += w * in_im[idx[i]];
  }
}

constexpr KernelTable kScalarTable{Backend::Scalar, phase_sum_scalar, complex_phase_sum_scalar,
                                   conj_dot_scalar, gather_axpy_scalar};

}  // namespace

std::string_view to_string(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

const KernelTable& scalar_table() { return kScalarTable; }

const KernelTable* avx2_table() {
#if defined(FPIR_HAVE_AVX2)
  return &detail::kAvx2Table;
#else
  return nullptr;
#endif
}

bool cpu_supports_avx2() {
#if defined(FPIR_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& active() {
  static const KernelTable& chosen = [] () -> const KernelTable& {
    const char* force = std::getenv("FPIR_KERNELS");
    if (force != nullptr && std::strcmp(force, "scalar") == 0) return kScalarTable;
    if (avx2_table() != nullptr && cpu_supports_avx2()) return *avx2_table();
    return kScalarTable;
  }();
  return chosen;
}

}  // namespace fpir::kernels
