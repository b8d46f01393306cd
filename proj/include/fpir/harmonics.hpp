#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fpir/additive.hpp"
#include "fpir/poly.hpp"
#include "fpir/subgroup.hpp"

namespace fpir {

using cvec = std::vector<std::complex<double>>;

/// Values P(x) together with the multiset of centered values P(x) - P(0).
struct ValueProfile {
  Polynomial P;
  Elem constant = 0;
  std::vector<Elem> values;      // P(x), element order
  std::vector<Elem> support;     // distinct centered values, ascending
  std::vector<double> counts;    // multiplicities of `support`
};

ValueProfile value_profile(const Ring& R, const Polynomial& P);

/// (1/|R|) sum_x chi(P(x))
std::complex<double> exp_sum(const AdditiveBasis& basis, const Polynomial& P, const Character& chi);
/// S(chi) = (1/|R|) sum_x chi(P(x) - P(0)) for every character, in character order.
cvec centered_exp_sums(const AdditiveBasis& basis, const ValueProfile& profile);

/// hat f for every character, reusing the per-character angle tables.
class FourierPlan {
 public:
  explicit FourierPlan(const AdditiveBasis& basis, const Limits& limits = {});
  /// out[i] = E_x f(x) conj(chi_i(x))
  void transform(std::span<const std::complex<double>> f, cvec& out);

 private:
  const AdditiveBasis& basis_;
  std::size_t n_;
  std::vector<std::uint32_t> conj_angles_;  // n x n, row per character
  std::vector<double> hist_re_, hist_im_;
};

struct ExpSumRow {
  std::uint64_t index;
  std::vector<std::uint32_t> coeffs;
  double modulus;
  /// |S|^(2^(k-1))
  double lhs;
  bool in_annihilator;
  bool satisfied;
};

struct ExpSumReport {
  std::string ring;
  std::string poly;
  int degree = 0;
  unsigned k = 0;
  /// k is an upper bound rather than the exact derivational degree.
  bool conservative = false;
  std::uint64_t b = 1;
  std::uint64_t lpf = 0;
  double rhs = 0.0;
  std::size_t subgroup_size = 0;
  std::vector<ExpSumRow> rows;
  double max_nontrivial_modulus = 0.0;
  /// max |S| over characters outside the annihilator (0 if none)
  double max_outside_modulus = 0.0;
  std::size_t violations = 0;
  bool bound_satisfied = true;
};

inline constexpr double kBoundTolerance = 1e-9;

ExpSumReport character_bound_check(const AdditiveBasis& basis, const Polynomial& P,
                                   const Limits& limits = {});

struct VdcResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double rhs_imag = 0.0;
  bool imag_ok = true;
  bool holds = true;
};

/// |E f|^(2^k) against E_{v in H^k} E_u Delta_{v_1..v_k} f(u), by enumeration.
VdcResult vdc_check(const Ring& R, const SubgroupSet& H, std::span<const std::complex<double>> f,
                    unsigned k, const Limits& limits = {});

/// Everything about (R, P) that does not depend on f.
class TEContext {
 public:
  TEContext(const AdditiveBasis& basis, const Polynomial& P, const Limits& limits = {});

  const AdditiveBasis& basis() const { return basis_; }
  const ValueProfile& profile() const { return profile_; }
  const SubgroupSet& subgroup() const { return H_; }
  unsigned k() const { return k_; }
  bool conservative() const { return conservative_; }
  double bound_factor() const { return factor_; }
  const cvec& exp_sums() const { return S_; }
  const std::vector<char>& in_annihilator() const { return ann_; }

  /// ||E_y f(x + P(y)) - E_{z in H} f(x + P(0) + z)||_{L^2(x)} by direct enumeration.
  double lhs_direct(std::span<const std::complex<double>> f) const;
  /// The same norm from the Fourier side.
  double lhs_fourier(std::span<const std::complex<double>> f);

 private:
  const AdditiveBasis& basis_;
  ValueProfile profile_;
  SubgroupSet H_;
  unsigned k_ = 0;
  bool conservative_ = false;
  double factor_ = 0.0;  // (B (k-1) / lpf)^(1/2^(k-1))
  cvec S_;
  std::vector<char> ann_;
  FourierPlan plan_;
  cvec fhat_;
  // The difference of averages is sum_w weight(w) f(x + P(0) + w) with
  // weight(w) = #{y : P(y) - P(0) = w}/|R| - 1_H(w)/|H|.
  std::vector<double> weights_;
  std::vector<std::uint32_t> shift_table_;  // weights_.size() x n
};

struct TEReport {
  std::string ring;
  std::string poly;
  std::uint64_t seed = 0;
  std::size_t sample = 0;
  double lhs = 0.0;
  double lhs_fourier = 0.0;
  double rhs = 0.0;
  double norm = 0.0;
  double ratio = 0.0;
  unsigned k = 0;
  bool conservative = false;
  Elem coset = 0;
  std::size_t subgroup_size = 0;
  bool satisfied = true;
};

TEReport te_estimate(TEContext& ctx, std::span<const std::complex<double>> f);
TEReport te_estimate(const AdditiveBasis& basis, const Polynomial& P,
                     std::span<const std::complex<double>> f, const Limits& limits = {});

/// Independent real and imaginary parts uniform on [-1, 1].
cvec random_function(std::size_t n, std::uint64_t seed);
double l2_norm(std::span<const std::complex<double>> f);

/// Polynomial in up to three variables over a ring, as a list of terms.
struct MultiPoly {
  struct Term {
    std::array<unsigned, 3> exps{};
    Elem coeff = 0;
  };
  unsigned vars = 1;
  std::vector<Term> terms;

  /// Degree in each variable.
  std::array<unsigned, 3> degrees() const;
  bool is_zero() const;
};

Elem eval(const Ring& R, const MultiPoly& T, std::span<const Elem> x);

struct RootCountResult {
  std::uint64_t count = 0;
  double bound = 0.0;
  unsigned degree_sum = 0;
  bool holds = true;
};

RootCountResult root_count_bound_check(const Ring& R, const MultiPoly& T, const Limits& limits = {});

}  // namespace fpir
