#pragma once

// Cyclic decomposition of (R,+) and its dual group.
//
// Characters are evaluated through integer angles: chi(x) = e(a(x)/L) with
// a(x) = sum_i s_i c_i(x) (L/m_i) mod L. Sums of characters are accumulated
// as an integer-indexed histogram over angle classes and only then weighted
// by cos/sin, so equal angles never pick up separate rounding.

#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "fpir/ring.hpp"
#include "fpir/subgroup.hpp"

namespace fpir {

struct Character {
  std::uint64_t index = 0;
  std::vector<std::uint32_t> coeffs;
  /// coeffs[i] * (L / m_i) mod L
  std::vector<std::uint64_t> weights;

  bool is_trivial() const { return index == 0; }
};

class AdditiveBasis {
 public:
  explicit AdditiveBasis(RingPtr ring);

  const Ring& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  std::size_t rank() const { return orders_.size(); }
  const std::vector<Elem>& generators() const { return generators_; }
  const std::vector<std::uint32_t>& orders() const { return orders_; }
  std::uint64_t angle_lcm() const { return lcm_; }

  std::vector<std::uint32_t> coordinates(Elem x) const;
  Elem from_coordinates(std::span<const std::uint32_t> c) const;

  std::uint64_t character_count() const { return ring_->order(); }
  /// Lexicographic order on coefficient tuples, s_1 most significant; index 0
  /// is the trivial character.
  Character character(std::uint64_t index) const;
  Character character_from_coeffs(std::span<const std::uint32_t> coeffs) const;

  std::uint64_t angle(const Character& chi, Elem x) const;
  /// a(x) for every element x, in O(|R|).
  void angle_table(const Character& chi, std::vector<std::uint32_t>& out) const;
  std::complex<double> value(const Character& chi, Elem x) const;

  /// cos/sin of 2*pi*a/L for a in [0, L).
  const std::vector<double>& cos_table() const;
  const std::vector<double>& sin_table() const;

 private:
  void build_phases() const;

  RingPtr ring_;
  std::vector<Elem> generators_;
  std::vector<std::uint32_t> orders_;
  std::vector<std::uint64_t> strides_;
  std::vector<std::uint64_t> radix_weights_;  // character index place values
  std::vector<std::size_t> by_stride_;         // coordinate positions by ascending stride
  std::uint64_t lcm_ = 1;

  mutable std::once_flag phases_once_;
  mutable std::vector<double> cos_;
  mutable std::vector<double> sin_;
};

/// Reusable scratch space for repeated character sums over one basis. Not
/// thread-safe; use one per worker.
class CharSummer {
 public:
  explicit CharSummer(const AdditiveBasis& basis);

  /// sum_i w_i chi(x_i)
  std::complex<double> sum(const Character& chi, std::span<const Elem> xs,
                           std::span<const double> w);
  /// sum over a multiset of elements (each occurrence weight 1)
  std::complex<double> sum(const Character& chi, std::span<const Elem> xs);
  /// sum_x f(x) chi(x), or sum_x f(x) conj(chi(x)) when `conjugate`.
  std::complex<double> sum_function(const Character& chi, std::span<const std::complex<double>> f,
                                    bool conjugate);

 private:
  std::complex<double> flush();

  const AdditiveBasis& basis_;
  std::vector<double> hist_re_;
  std::vector<double> hist_im_;
  std::vector<std::uint32_t> angles_;
  bool complex_ = false;
};

/// sum_{v in values} chi(v)
std::complex<double> char_sum(const AdditiveBasis& basis, const Character& chi,
                              std::span<const Elem> values);

/// Characters trivial on H, in character order.
std::vector<Character> annihilator(const AdditiveBasis& basis, const SubgroupSet& H);
/// Same, for an arbitrary element set (NotASubgroup unless it is closed).
std::vector<Character> annihilator(const AdditiveBasis& basis, std::span<const Elem> elems);
bool annihilates(const AdditiveBasis& basis, const Character& chi, const SubgroupSet& H);

/// hat f(chi) = E_x f(x) conj(chi(x)) for every character, in character order.
std::vector<std::complex<double>> fourier_transform(const AdditiveBasis& basis,
                                                    std::span<const std::complex<double>> f);

}  // namespace fpir
