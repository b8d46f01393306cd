#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fpir/poly.hpp"
#include "fpir/ring.hpp"

namespace fpir {

struct ConfigCount {
  std::uint64_t count = 0;
  std::size_t a_size = 0;
  std::size_t b_size = 0;
  double expectation = 0.0;  // |A||B|
  double deviation = 0.0;    // count - |A||B|
  /// |count - |A||B|| / (sqrt(|A||B|) |R|), 0 when A or B is empty
  double normalized_deviation = 0.0;
};

/// #{(x, y) : x in A, x + P(y) in B}
ConfigCount config_count(const Ring& R, std::span<const Elem> values, std::span<const Elem> A,
                         std::span<const Elem> B);
ConfigCount config_count(const Ring& R, const Polynomial& P, std::span<const Elem> A, std::span<const Elem> B);

enum class SearchMode { Exact, Greedy };

struct DifferenceFreeResult {
  std::size_t size = 0;
  std::vector<Elem> witness;  // ascending
  bool exact = false;
  std::uint64_t seed = 0;
  std::uint64_t nodes = 0;    // branch-and-bound nodes visited
};

/// Largest A with no distinct a, b in A and b - a in {P(x)}. Exact mode is a
/// branch and bound on the Cayley graph with connection set {+-P(x)} \ {0}
/// and needs |R| <= 64.
DifferenceFreeResult difference_free_max(const Ring& R, const Polynomial& P, SearchMode mode,
                                         std::uint64_t seed = 0, const Limits& limits = {});

/// Pairwise scan: true iff no distinct a, b in `set` have b - a = P(x).
bool is_difference_free(const Ring& R, const Polynomial& P, std::span<const Elem> set);

struct SarkozyBound {
  double bound = 0.0;
  double c = 0.0;  // (B (k-1))^(1/2^(k-1))
  unsigned k = 0;
  bool conservative = false;
  int degree = 0;
  std::uint64_t lpf = 0;
  bool has_root = false;
  bool constant_in_subgroup = false;
  std::size_t measured = 0;
  bool satisfied = true;
};

/// C |R| lpf^(-1/2^(k-1)) + d |R| / lpf. HypothesisUnmet unless P has a root
/// in R or P(0) lies in the subgroup generated by P(x) - P(0).
SarkozyBound sarkozy_bound_check(const Ring& R, const Polynomial& P, std::size_t measured,
                                 const Limits& limits = {});

enum class IntersectStatus { IntersectiveUpToBound, WitnessFound };

std::string_view to_string(IntersectStatus s);

struct IntersectWitness {
  /// "3" or "3^2" for integers; "(1,1,1)^2" (coefficients of g, ascending) for F_p[t]
  std::string modulus;
  std::uint64_t prime = 0;
  unsigned power = 0;
  std::vector<std::int64_t> g;   // F_p[t] only
  std::uint64_t quotient_order = 0;
  /// No root found by exhaustive evaluation over the whole quotient.
  bool verified = false;
};

struct IntersectivityVerdict {
  IntersectStatus status = IntersectStatus::IntersectiveUpToBound;
  std::optional<IntersectWitness> witness;
  std::string bound_checked;
  std::uint64_t moduli_checked = 0;
};

/// P in Z[x]: roots modulo p^j for primes p <= bound. Simple roots lift by
/// Hensel; singular roots are extended exhaustively while p^j <= bound^2.
/// The witness is the smallest modulus without a root.
IntersectivityVerdict intersectivity_integers(std::span<const std::int64_t> P, std::uint64_t bound,
                                              const Limits& limits = {});

/// P in F_p[t][x], coefficient i given as its t-coefficients (ascending).
/// Sweeps monic irreducible g with deg g <= bound and quotients F_p[t]/(g^j)
/// with j deg g <= 2 bound.
IntersectivityVerdict intersectivity_fpt(std::uint64_t p, const std::vector<std::vector<std::int64_t>>& P,
                                         unsigned bound, const Limits& limits = {});

}  // namespace fpir
