#include "fpir/additive.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "fpir/kernels.hpp"
#include "fpir/numtheory.hpp"

namespace fpir {

AdditiveBasis::AdditiveBasis(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) fail(ErrorKind::InvalidArgument, "null ring");
  for (const auto& c : ring_->coordinates()) {
    generators_.push_back(static_cast<Elem>(c.stride));
    orders_.push_back(c.modulus);
    strides_.push_back(c.stride);
    lcm_ = nt::lcm(lcm_, c.modulus);
  }
  radix_weights_.assign(orders_.size(), 1);
  for (std::size_t i = orders_.size(); i-- > 1;) radix_weights_[i - 1] = radix_weights_[i] * orders_[i];
  by_stride_.resize(orders_.size());
  std::iota(by_stride_.begin(), by_stride_.end(), 0);
  std::sort(by_stride_.begin(), by_stride_.end(), [&](auto a, auto b) { return strides_[a] < strides_[b]; });
}

std::vector<std::uint32_t> AdditiveBasis::coordinates(Elem x) const {
  std::vector<std::uint32_t> c(orders_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = static_cast<std::uint32_t>((x / strides_[i]) % orders_[i]);
  return c;
}

Elem AdditiveBasis::from_coordinates(std::span<const std::uint32_t> c) const {
  if (c.size() != orders_.size()) fail(ErrorKind::InvalidArgument, "coordinate tuple has wrong length");
  std::uint64_t x = 0;
  for (std::size_t i = 0; i < c.size(); ++i) x += static_cast<std::uint64_t>(c[i] % orders_[i]) * strides_[i];
  return static_cast<Elem>(x);
}

Character AdditiveBasis::character(std::uint64_t index) const {
  if (index >= ring_->order()) fail(ErrorKind::InvalidArgument, "character index out of range");
  std::vector<std::uint32_t> coeffs(orders_.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    coeffs[i] = static_cast<std::uint32_t>((index / radix_weights_[i]) % orders_[i]);
  }
  return character_from_coeffs(coeffs);
}

Character AdditiveBasis::character_from_coeffs(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() != orders_.size()) fail(ErrorKind::InvalidArgument, "character tuple has wrong length");
  Character chi;
  chi.coeffs.assign(coeffs.begin(), coeffs.end());
  chi.weights.resize(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    chi.coeffs[i] %= orders_[i];
    chi.index += chi.coeffs[i] * radix_weights_[i];
    chi.weights[i] = chi.coeffs[i] * (lcm_ / orders_[i]);
  }
  return chi;
}

std::uint64_t AdditiveBasis::angle(const Character& chi, Elem x) const {
  std::uint64_t a = 0;
  for (std::size_t i = 0; i < strides_.size(); ++i) {
    a += chi.weights[i] * ((x / strides_[i]) % orders_[i]);
  }
  return a % lcm_;
}

void AdditiveBasis::angle_table(const Character& chi, std::vector<std::uint32_t>& out) const {
  out.resize(ring_->order());
  out[0] = 0;
  std::uint64_t filled = 1;
  for (std::size_t pos : by_stride_) {
    // The coordinates tile the index range, so each stride equals the size of
    // the block already filled.
    const std::uint64_t w = chi.weights[pos];
    for (std::uint32_t v = 1; v < orders_[pos]; ++v) {
      const std::uint64_t shift = (v * w) % lcm_;
      std::uint32_t* dst = out.data() + v * filled;
      for (std::uint64_t j = 0; j < filled; ++j) {
        std::uint64_t a = out[j] + shift;
        if (a >= lcm_) a -= lcm_;
        dst[j] = static_cast<std::uint32_t>(a);
      }
    }
    filled *= orders_[pos];
  }
}

std::complex<double> AdditiveBasis::value(const Character& chi, Elem x) const {
  const auto a = angle(chi, x);
  return {cos_table()[a], sin_table()[a]};
}

void AdditiveBasis::build_phases() const {
  std::call_once(phases_once_, [this] {
    cos_.resize(lcm_);
    sin_.resize(lcm_);
    for (std::uint64_t a = 0; a < lcm_; ++a) {
      const double t = 2.0 * std::numbers::pi * static_cast<double>(a) / static_cast<double>(lcm_);
      cos_[a] = std::cos(t);
      sin_[a] = std::sin(t);
    }
    // Pin the exactly known values.
    cos_[0] = 1.0;
    sin_[0] = 0.0;
    if (lcm_ % 2 == 0) {
      cos_[lcm_ / 2] = -1.0;
      sin_[lcm_ / 2] = 0.0;
    }
    if (lcm_ % 4 == 0) {
      cos_[lcm_ / 4] = 0.0;
      sin_[lcm_ / 4] = 1.0;
      cos_[3 * lcm_ / 4] = 0.0;
      sin_[3 * lcm_ / 4] = -1.0;
    }
  });
}

const std::vector<double>& AdditiveBasis::cos_table() const {
  build_phases();
  return cos_;
}

const std::vector<double>& AdditiveBasis::sin_table() const {
  build_phases();
  return sin_;
}

CharSummer::CharSummer(const AdditiveBasis& basis)
    : basis_(basis), hist_re_(basis.angle_lcm(), 0.0), hist_im_(basis.angle_lcm(), 0.0) {}

std::complex<double> CharSummer::flush() {
  const auto& k = kernels::active();
  const auto& c = basis_.cos_table();
  const auto& s = basis_.sin_table();
  const std::size_t L = hist_re_.size();
  kernels::ComplexSum r = complex_ ? k.complex_phase_sum(hist_re_.data(), hist_im_.data(), c.data(), s.data(), L)
                                   : k.phase_sum(hist_re_.data(), c.data(), s.data(), L);
  std::fill(hist_re_.begin(), hist_re_.end(), 0.0);
  if (complex_) std::fill(hist_im_.begin(), hist_im_.end(), 0.0);
  complex_ = false;
  return {r.re, r.im};
}

std::complex<double> CharSummer::sum(const Character& chi, std::span<const Elem> xs,
                                     std::span<const double> w) {
  if (xs.size() != w.size()) fail(ErrorKind::InvalidArgument, "weight count mismatch");
  if (xs.size() * 4 >= basis_.ring().order()) {
    basis_.angle_table(chi, angles_);
    for (std::size_t i = 0; i < xs.size(); ++i) hist_re_[angles_[xs[i]]] += w[i];
  } else {
    for (std::size_t i = 0; i < xs.size(); ++i) hist_re_[basis_.angle(chi, xs[i])] += w[i];
  }
  return flush();
}

std::complex<double> CharSummer::sum(const Character& chi, std::span<const Elem> xs) {
  if (xs.size() * 4 >= basis_.ring().order()) {
    basis_.angle_table(chi, angles_);
    for (Elem x : xs) hist_re_[angles_[x]] += 1.0;
  } else {
    for (Elem x : xs) hist_re_[basis_.angle(chi, x)] += 1.0;
  }
  return flush();
}

std::complex<double> CharSummer::sum_function(const Character& chi, std::span<const std::complex<double>> f,
                                              bool conjugate) {
  if (f.size() != basis_.ring().order()) fail(ErrorKind::InvalidArgument, "function table size does not match ring order");
  basis_.angle_table(chi, angles_);
  const std::uint64_t L = basis_.angle_lcm();
  for (std::size_t x = 0; x < f.size(); ++x) {
    std::uint64_t a = angles_[x];
    if (conjugate && a != 0) a = L - a;
    hist_re_[a] += f[x].real();
    hist_im_[a] += f[x].imag();
  }
  complex_ = true;
  return flush();
}

std::complex<double> char_sum(const AdditiveBasis& basis, const Character& chi, std::span<const Elem> values) {
  CharSummer summer(basis);
  return summer.sum(chi, values);
}

bool annihilates(const AdditiveBasis& basis, const Character& chi, const SubgroupSet& H) {
  for (Elem g : H.basis()) {
    if (basis.angle(chi, g) != 0) return false;
  }
  return true;
}

std::vector<Character> annihilator(const AdditiveBasis& basis, const SubgroupSet& H) {
  if (H.ring_order() != basis.ring().order()) fail(ErrorKind::InvalidArgument, "subgroup belongs to another ring");
  std::vector<Character> out;
  out.reserve(H.index());
  for (std::uint64_t i = 0; i < basis.character_count(); ++i) {
    Character chi = basis.character(i);
    if (annihilates(basis, chi, H)) out.push_back(std::move(chi));
  }
  return out;
}

std::vector<Character> annihilator(const AdditiveBasis& basis, std::span<const Elem> elems) {
  return annihilator(basis, SubgroupSet::from_elements(basis.ring(), elems));
}

std::vector<std::complex<double>> fourier_transform(const AdditiveBasis& basis,
                                                    std::span<const std::complex<double>> f) {
  CharSummer summer(basis);
  const double inv = 1.0 / static_cast<double>(basis.ring().order());
  std::vector<std::complex<double>> out(basis.character_count());
  for (std::uint64_t i = 0; i < out.size(); ++i) out[i] = summer.sum_function(basis.character(i), f, true) * inv;
  return out;
}

}  // namespace fpir
