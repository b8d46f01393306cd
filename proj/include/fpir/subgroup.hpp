#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "fpir/poly.hpp"
#include "fpir/ring.hpp"

namespace fpir {

/// An additive subgroup of a ring, stored as a sorted element list plus a
/// membership bitset.
class SubgroupSet {
 public:
  /// Closure of `gens` under addition.
  static SubgroupSet generated_by(const Ring& R, std::span<const Elem> gens);
  /// Accepts `elems` only if it already is a subgroup (NotASubgroup otherwise).
  static SubgroupSet from_elements(const Ring& R, std::span<const Elem> elems);
  static SubgroupSet whole(const Ring& R);
  static SubgroupSet trivial(const Ring& R);

  bool contains(Elem x) const { return x < order_ && ((bits_[x >> 6] >> (x & 63)) & 1U) != 0; }
  std::size_t size() const { return elements_.size(); }
  std::uint64_t ring_order() const { return order_; }
  std::uint64_t index() const { return order_ / elements_.size(); }
  bool is_full() const { return elements_.size() == order_; }

  /// Sorted ascending.
  const std::vector<Elem>& elements() const { return elements_; }
  /// The value set the subgroup was closed from (sorted, deduplicated).
  const std::vector<Elem>& generators() const { return generators_; }
  /// Generators that enlarged the closure; they generate the same subgroup.
  const std::vector<Elem>& basis() const { return basis_; }

  friend bool operator==(const SubgroupSet& a, const SubgroupSet& b) {
    return a.order_ == b.order_ && a.elements_ == b.elements_;
  }

 private:
  void insert(Elem x) {
    bits_[x >> 6] |= std::uint64_t{1} << (x & 63);
    elements_.push_back(x);
  }

  std::uint64_t order_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<Elem> elements_;
  std::vector<Elem> generators_;
  std::vector<Elem> basis_;
};

/// Subgroup generated by {P(x) - P(0)} when subtract_constant, else by {P(x)}.
SubgroupSet value_subgroup(const Ring& R, const Polynomial& P, bool subtract_constant);
/// Same, from precomputed values P(x) in element order.
SubgroupSet value_subgroup_from_values(const Ring& R, std::span<const Elem> values, Elem constant,
                                       bool subtract_constant);

/// P(0) lies in the subgroup generated by the differences P(x) - P(0).
bool constant_in_subgroup(const Ring& R, const Polynomial& P);

inline bool is_full(const Ring& R, const SubgroupSet& H) { return H.size() == R.order(); }

/// (1/|H|) sum_{z in H} f(x + z + shift), f given by its values in element order.
std::complex<double> coset_average(const Ring& R, const SubgroupSet& H,
                                   std::span<const std::complex<double>> f, Elem shift, Elem x);

/// Session cache of value subgroups keyed by (ring spec, polynomial, flag).
class SubgroupCache {
 public:
  std::shared_ptr<const SubgroupSet> get(const Ring& R, const Polynomial& P, bool subtract_constant);
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<const SubgroupSet>> entries_;
};

}  // namespace fpir
