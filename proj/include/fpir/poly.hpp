#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fpir/ring.hpp"

namespace fpir {

/// Polynomial over a ring, coefficients ascending by degree with trailing
/// zeros trimmed. The zero polynomial has degree -1.
struct Polynomial {
  std::vector<Elem> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  bool is_constant() const { return coeffs.size() <= 1; }
  Elem coeff(std::size_t i) const { return i < coeffs.size() ? coeffs[i] : 0; }
  Elem constant_term() const { return coeff(0); }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

Polynomial make_polynomial(const Ring& R, std::vector<Elem> coeffs);
/// c * x^d
Polynomial monomial(const Ring& R, unsigned d, Elem c);

/// `c0,c1,...,cd` with integer entries mapped through Z -> R, or `#i` for a
/// raw element index. `0,0,1` is x^2.
Polynomial parse_polynomial(const Ring& R, std::string_view literal);
/// Literal form using raw indices, e.g. "#0,#0,#1".
std::string to_literal(const Polynomial& P);

Elem eval(const Ring& R, const Polynomial& P, Elem x);
/// P(x) for every x in index order.
std::vector<Elem> eval_all(const Ring& R, const Polynomial& P);

Polynomial add(const Ring& R, const Polynomial& P, const Polynomial& Q);
Polynomial sub(const Ring& R, const Polynomial& P, const Polynomial& Q);
/// P(x) - P(0)
Polynomial drop_constant(const Ring& R, const Polynomial& P);

/// P(x + n) - P(x), by binomial expansion over R.
Polynomial forward_difference(const Ring& R, const Polynomial& P, Elem n);

enum class DerivationMode { Exact, DigitSumBound };

struct DerivationalDegree {
  unsigned value = 0;
  /// True when `value` is only an upper bound for the derivational degree.
  bool is_bound = false;
  DerivationMode mode = DerivationMode::Exact;
};

/// Smallest k such that every (k+1)-fold iterated difference of P vanishes as
/// a polynomial identity in x and the difference directions.
///
/// Exact mode expands the formal iterated difference monomial by monomial:
/// the coefficient of x^{e0} n_1^{e1}...n_j^{ej} (all e_i >= 1) in the j-fold
/// difference of a*x^d is a * d!/(e0! e1! ... ej!), and monomials of different
/// total degree never cancel. The search over exponent partitions is capped by
/// limits.work_budget (WorkGuardExceeded).
///
/// Digit-sum mode returns the maximum base-p digit sum of the exponents in
/// prime characteristic p, and deg P flagged as a bound otherwise.
DerivationalDegree derivational_degree(const Ring& R, const Polynomial& P, DerivationMode mode,
                                       const Limits& limits = {});

/// Exact mode when affordable, digit-sum bound otherwise.
DerivationalDegree derivational_degree_auto(const Ring& R, const Polynomial& P,
                                            const Limits& limits = {});

/// B(d, c) = p^(2 floor(log_p d)) for prime c = p, 1 otherwise.
std::uint64_t b_constant(std::uint64_t d, Characteristic c);

/// Binomial coefficients C(n, k) mod m for 0 <= k <= n <= max_n.
class BinomialTable {
 public:
  BinomialTable(unsigned max_n, std::uint64_t modulus);
  std::uint64_t operator()(unsigned n, unsigned k) const {
    return k > n ? 0 : rows_[n * (max_n_ + 1) + k];
  }

 private:
  unsigned max_n_;
  std::vector<std::uint64_t> rows_;
};

}  // namespace fpir
