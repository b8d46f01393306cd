#pragma once

// Data-parallel inner loops behind the character sweeps.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant compiled in its own translation unit. active() picks the variant at
// runtime from CPUID; FPIR_KERNELS=scalar forces the reference path.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace fpir::kernels {

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend b);

struct ComplexSum {
  double re = 0.0;
  double im = 0.0;
};

/// sum_a w[a] * (cos[a] + i sin[a])
using PhaseSumFn = ComplexSum (*)(const double* w, const double* cos_t, const double* sin_t,
                                  std::size_t n);
/// sum_a (wr[a] + i wi[a]) * (cos[a] + i sin[a])
using ComplexPhaseSumFn = ComplexSum (*)(const double* wr, const double* wi, const double* cos_t,
                                         const double* sin_t, std::size_t n);
/// sum_i a[i] * conj(b[i])
using ConjDotFn = ComplexSum (*)(const double* ar, const double* ai, const double* br,
                                 const double* bi, std::size_t n);
/// out[i] += w * in[idx[i]]
using GatherAxpyFn = void (*)(double* out_re, double* out_im, const double* in_re,
                              const double* in_im, const std::uint32_t* idx, double w,
                              std::size_t n);

struct KernelTable {
  Backend backend;
  PhaseSumFn phase_sum;
  ComplexPhaseSumFn complex_phase_sum;
  ConjDotFn conj_dot;
  GatherAxpyFn gather_axpy;
};

const KernelTable& scalar_table();
/// nullptr when the AVX2 variant was not compiled in.
const KernelTable* avx2_table();
bool cpu_supports_avx2();
const KernelTable& active();

namespace detail {
extern const KernelTable kAvx2Table;
}

}  // namespace fpir::kernels
