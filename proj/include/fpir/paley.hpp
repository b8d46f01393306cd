#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fpir/additive.hpp"
#include "fpir/ring.hpp"

namespace fpir {

/// Cayley graph of (R,+) with connection set S = {x^d, -x^d : x in R} \ {0}.
struct CayleyGraphSpec {
  RingPtr ring;
  unsigned d = 2;
  std::vector<Elem> connection;   // S, ascending
  std::vector<char> in_connection;
  std::size_t r = 0;
  bool minus_one_is_power = false;
  /// 1/2 when -1 is a d-th power, else 1
  double pm_halving = 1.0;
  std::size_t kernel_size = 0;    // #{z : z^d = 1}
  /// char(R) divides d: the graph may be disconnected and verdicts are refused.
  bool char_divides_degree = false;
};

CayleyGraphSpec build_paley(const RingPtr& R, unsigned d);

/// One `u v` pair per edge with u < v.
std::vector<std::pair<Elem, Elem>> edge_list(const CayleyGraphSpec& g);

/// (A v)(x) = sum_{s in S} v(x + s)
std::vector<std::complex<double>> adjacency_apply(const CayleyGraphSpec& g,
                                                  std::span<const std::complex<double>> v);

struct SpectrumReport {
  std::vector<double> eigenvalues;  // character order
  double max_imag = 0.0;
  double lambda2 = 0.0;
  std::uint64_t lambda2_index = 0;
  std::vector<std::uint32_t> lambda2_coeffs;
  double epsilon_star = 0.0;        // lambda2 / (8 r)
  double trace = 0.0;
  double trace_sq = 0.0;
};

SpectrumReport spectrum(const AdditiveBasis& basis, const CayleyGraphSpec& g);

/// #{(a, b) in A x B : b - a in S}
std::uint64_t edge_count(const CayleyGraphSpec& g, std::span<const Elem> A, std::span<const Elem> B);

enum class SetSource { Exhaustive, Sampled, Structured, Explicit };

struct UniformityOptions {
  SetSource source = SetSource::Structured;
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  /// (A, B) pairs for SetSource::Explicit
  std::vector<std::pair<std::vector<Elem>, std::vector<Elem>>> pairs;
};

struct UniformityReport {
  SetSource source = SetSource::Structured;
  std::uint64_t seed = 0;
  std::uint64_t pairs_examined = 0;
  /// max over examined (A, B) of |N(A,B) - r|A||B|/|V|| / (r |V|)
  double max_normalized_deviation = 0.0;
  /// Every eps below this value is ruled out.
  double epsilon_lower_bound = 0.0;
  /// lambda2 / r: the graph is eps-uniform for every eps at or above this.
  double spectral_upper = 0.0;
  /// lambda2 sqrt(|A||B|) / (r |V|) at the maximizing pair
  double spectral_certificate = 0.0;
  std::vector<Elem> best_a, best_b;
  /// Examined pairs violating |N - r|A||B|/|V|| <= lambda2 sqrt(|A||B|) + 0.5
  std::uint64_t mixing_violations = 0;
  /// Exhaustive mode covered every (A, B).
  bool certified = false;
};

UniformityReport uniformity_measure(const CayleyGraphSpec& g, const SpectrumReport& spec,
                                    const UniformityOptions& opts, const Limits& limits = {});

struct BadPrime {
  std::uint64_t residue_size;
  std::size_t covered;       // |{+-x^d : x in R/p}|
  double epsilon_floor;      // sqrt((d-1) / (64 d^2 [R:p]))
};

struct QuasirandomVerdict {
  double delta = 0.0;         // 1 - |R^x|/|R|
  unsigned k = 0;
  std::uint64_t b = 1;
  double sufficient_epsilon = 0.0;
  std::vector<BadPrime> bad_primes;
  std::optional<double> necessary_epsilon_floor;
  double spectral_epsilon_floor = 0.0;
};

QuasirandomVerdict quasirandomness_verdict(const CayleyGraphSpec& g, const SpectrumReport& spec,
                                           const Limits& limits = {});

std::string_view to_string(SetSource s);

}  // namespace fpir
