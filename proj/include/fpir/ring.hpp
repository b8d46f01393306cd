#pragma once

// Finite principal ideal rings with canonical integer encodings.
//
// Every element is an index in [0, order). The encoding is mixed radix over
// the variant's standard coordinates: the residue for Z/N, ascending
// coefficient digits for the polynomial-quotient variants, and factor-major
// concatenation for products (the first factor is the most significant block).

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fpir/error.hpp"

namespace fpir {

using Elem = std::uint32_t;

enum class RingKind { ZMod, GaloisField, PolyQuotient, GaloisRing, Product };

std::string_view to_string(RingKind kind);

/// Additive order of 1. Finite for every catalog ring; the infinite value only
/// exists so that B(d, c) can be evaluated for characteristic-zero callers.
class Characteristic {
 public:
  constexpr Characteristic() = default;
  constexpr explicit Characteristic(std::uint64_t value) : value_(value) {}
  static constexpr Characteristic infinite() { return Characteristic(); }

  constexpr bool is_infinite() const { return value_ == 0; }
  constexpr std::uint64_t value() const { return value_; }
  bool is_prime() const;

  friend constexpr bool operator==(Characteristic, Characteristic) = default;

 private:
  std::uint64_t value_ = 0;
};

/// One cyclic coordinate of (R,+): c(x) = (x / stride) % modulus.
struct Coordinate {
  std::uint64_t stride;
  std::uint32_t modulus;
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

struct ResidueField {
  RingPtr field;  // null when the ring is itself this residue field
  std::uint64_t size;
  unsigned multiplicity;
};

class Ring {
 public:
  // Factories. Each validates its input and enforces limits.max_order.
  static RingPtr zmod(std::uint64_t n, const Limits& limits = {});
  /// GF(p^e) = F_p[u]/(h). Without h the lexicographically smallest monic
  /// irreducible of degree e is used.
  static RingPtr galois_field(std::uint64_t p, unsigned e,
                              std::optional<std::vector<Elem>> h = std::nullopt,
                              const Limits& limits = {});
  /// base[t]/(g) for a field `base`; g is monic with coefficients in base.
  static RingPtr poly_quotient(RingPtr base, std::vector<Elem> g, const Limits& limits = {});
  /// GR(p^n, r) = (Z/p^n)[xi]/(f), f monic of degree r and irreducible mod p.
  static RingPtr galois_ring(std::uint64_t p, unsigned n, unsigned r,
                             std::optional<std::vector<Elem>> f = std::nullopt,
                             const Limits& limits = {});
  static RingPtr product(std::vector<RingPtr> factors, const Limits& limits = {});

  RingKind kind() const { return kind_; }
  std::uint64_t order() const { return order_; }
  Characteristic characteristic() const { return characteristic_; }
  /// Canonical ring-spec string that round-trips through make_ring.
  const std::string& spec() const { return spec_; }

  Elem zero() const { return 0; }
  Elem one() const { return one_; }
  bool contains(std::uint64_t x) const { return x < order_; }

  Elem add(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const;
  Elem pow(Elem a, std::uint64_t e) const;
  /// Canonical image of an integer.
  Elem from_int(std::int64_t n) const;
  /// n·a for an integer n (repeated addition, done in O(log n)).
  Elem scale(Elem a, std::int64_t n) const;
  std::uint64_t additive_order(Elem a) const;

  bool is_unit(Elem a) const;
  std::uint64_t units_count() const;
  std::uint64_t lpf() const;
  /// Residue fields R/p with the multiplicity of p, in a stable order.
  const std::vector<ResidueField>& residue_fields() const { return residues_; }
  const Ring& residue_field(std::size_t i) const;
  std::vector<std::pair<std::uint64_t, unsigned>> prime_ideal_profile() const;

  std::span<const Coordinate> coordinates() const { return coords_; }
  std::vector<std::uint32_t> coordinates_of(Elem x) const;
  Elem from_coordinates(std::span<const std::uint32_t> c) const;

  // Structure accessors.
  std::span<const RingPtr> factors() const { return factors_; }
  const Ring* base() const { return base_.get(); }
  /// Defining polynomial (monic, coefficients in base()) for GF/PQ/GR.
  std::span<const Elem> modulus() const { return modulus_; }
  std::uint64_t prime() const { return prime_; }

  /// Decompose a product element into per-factor elements.
  std::vector<Elem> split(Elem x) const;
  Elem join(std::span<const Elem> parts) const;

 private:
  Ring() = default;

  void finish_coordinates();
  Elem poly_mul(Elem a, Elem b) const;
  Elem base_mul(Elem a, Elem b) const;

  RingKind kind_ = RingKind::ZMod;
  std::uint64_t order_ = 0;
  Characteristic characteristic_;
  std::string spec_;
  Elem one_ = 0;
  std::uint64_t prime_ = 0;  // residue characteristic for local variants

  // ZMod
  std::uint64_t n_ = 0;
  // Polynomial-quotient variants (GF, PQ, GR)
  RingPtr base_;
  std::vector<Elem> modulus_;
  unsigned degree_ = 0;
  std::uint64_t base_order_ = 0;
  std::vector<Elem> base_mul_table_;
  std::vector<std::vector<Elem>> irreducible_factors_;  // PQ only: distinct f_i
  // Product
  std::vector<RingPtr> factors_;
  std::vector<std::uint64_t> strides_;

  std::vector<Coordinate> coords_;
  // Uniform radix for non-product rings: index digits base `digit_radix_`.
  std::uint32_t digit_radix_ = 0;
  unsigned digit_count_ = 0;

  std::vector<ResidueField> residues_;
};

/// Parse a ring-spec string:
///   Z/<N> | GF(<q>) | GF(<q>;h=<c0,...,ce>) | PQ(q=<q>;g=<c0,...,cm>)
///   | GR(<p>,<n>,<r>) | GR(<p>,<n>,<r>;f=<c0,...,cr>) | prod(<spec>;<spec>;...)
RingPtr make_ring(std::string_view spec, const Limits& limits = {});

// Polynomial helpers over a base ring, used for descriptor validation.
namespace upoly {

using Poly = std::vector<Elem>;

void trim(const Ring& base, Poly& a);
Poly mul(const Ring& base, const Poly& a, const Poly& b);
/// Remainder of a modulo a monic b.
Poly rem_monic(const Ring& base, Poly a, const Poly& b);
/// (quotient, remainder) of a by a monic b.
std::pair<Poly, Poly> divmod_monic(const Ring& base, Poly a, const Poly& b);
bool is_irreducible(const Ring& field, const Poly& f);
/// Monic irreducible factors with multiplicities, ascending (degree, lex).
std::vector<std::pair<Poly, unsigned>> factor(const Ring& field, const Poly& f);
Poly smallest_monic_irreducible(const Ring& field, unsigned degree);

}  // namespace upoly

}  // namespace fpir
