// Compiled with -mavx2 -mfma; only reached after a CPUID check.

#include <immintrin.h>

#include "fpir/kernels.hpp"

namespace fpir::kernels {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

ComplexSum phase_sum_avx2(const double* w, const double* cos_t, const double* sin_t, std::size_t n) {
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  std::size_t a = 0;
  for (; a + 4 <= n; a += 4) {
    const __m256d wv = _mm256_loadu_pd(w + a);
    re = _mm256_fmadd_pd(wv, _mm256_loadu_pd(cos_t + a), re);
    im = _mm256_fmadd_pd(wv, _mm256_loadu_pd(sin_t + a), im);
  }
  ComplexSum s{hsum(re), hsum(im)};
  for (; a < n; ++a) {
    s.re += w[a] * cos_t[a];
    s.im += w[a] * sin_t[a];
  }
  return s;
}

ComplexSum complex_phase_sum_avx2(const double* wr, const double* wi, const double* cos_t,
                                  const double* sin_t, std::size_t n) {
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  std::size_t a = 0;
  for (; a + 4 <= n; a += 4) {
    const __m256d r = _mm256_loadu_pd(wr + a);
    const __m256d i = _mm256_loadu_pd(wi + a);
    const __m256d c = _mm256_loadu_pd(cos_t + a);
    const __m256d s = _mm256_loadu_pd(sin_t + a);
    re = _mm256_fmadd_pd(r, c, re);
    re = _mm256_fnmadd_pd(i, s, re);
    im = _mm256_fmadd_pd(r, s, im);
    im = _mm256_fmadd_pd(i, c, im);
  }
  ComplexSum out{hsum(re), hsum(im)};
  for (; a < n; ++a) {
    out.re += wr[a] * cos_t[a] - wi[a] * sin_t[a];
    out.im += wr[a] * sin_t[a] + wi[a] * cos_t[a];
  }
  return out;
}

ComplexSum conj_dot_avx2(const double* ar, const double* ai, const double* br, const double* bi,
                         std::size_t n) {
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d xr = _mm256_loadu_pd(ar + k);
    const __m256d xi = _mm256_loadu_pd(ai + k);
    const __m256d yr = _mm256_loadu_pd(br + k);
    const __m256d yi = _mm256_loadu_pd(bi + k);
    re = _mm256_fmadd_pd(xr, yr, re);
    re = _mm256_fmadd_pd(xi, yi, re);
    im = _mm256_fmadd_pd(xi, yr, im);
    im = _mm256_fnmadd_pd(xr, yi, im);
  }
  ComplexSum s{hsum(re), hsum(im)};
  for (; k < n; ++k) {
    s.re += ar[k] * br[k] + ai[k] * bi[k];
    s.im += ai[k] * br[k] - ar[k] * bi[k];
  }
  return s;
}

void gather_axpy_avx2(double* out_re, double* out_im, const double* in_re, const double* in_im,
                      const std::uint32_t* idx, double w, std::size_t n) {
  const __m256d wv = _mm256_set1_pd(w);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m128i iv = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + k));
    const __m256d gr = _mm256_i32gather_pd(in_re, iv, 8);
    const __m256d gi = _mm256_i32gather_pd(in_im, iv, 8);
    _mm256_storeu_pd(out_re + k, _mm256_fmadd_pd(wv, gr, _mm256_loadu_pd(out_re + k)));
    _mm256_storeu_pd(out_im + k, _mm256_fmadd_pd(wv, gi, _mm256_loadu_pd(out_im + k)));
  }
  for (; k < n; ++k) {
    out_re[k] += w * in_re[idx[k]];
    out_im[k] += w * in_im[idx[k]];
  }
}

}  // namespace

namespace detail {
const KernelTable kAvx2Table{Backend::Avx2, phase_sum_avx2, complex_phase_sum_avx2, conj_dot_avx2,
                             gather_axpy_avx2};
}

}  // namespace fpir::kernels
