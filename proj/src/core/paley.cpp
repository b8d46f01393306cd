#include "fpir/paley.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "fpir/poly.hpp"

namespace fpir {

CayleyGraphSpec build_paley(const RingPtr& R, unsigned d) {
  if (!R) fail(ErrorKind::InvalidArgument, "null ring");
  if (d < 2) fail(ErrorKind::InvalidArgument, "Paley-type graphs need d >= 2");
  CayleyGraphSpec g;
  g.ring = R;
  g.d = d;
  const std::uint64_t n = R->order();
  std::vector<char> is_power(n, 0);
  for (std::uint64_t x = 0; x < n; ++x) {
    const Elem y = R->pow(static_cast<Elem>(x), d);
    is_power[y] = 1;
    if (y == R->one()) ++g.kernel_size;
  }
  g.in_connection.assign(n, 0);
  for (std::uint64_t y = 1; y < n; ++y) {
    if (is_power[y]) {
      g.in_connection[y] = 1;
      g.in_connection[R->neg(static_cast<Elem>(y))] = 1;
    }
  }
  g.in_connection[0] = 0;
  for (std::uint64_t y = 0; y < n; ++y) {
    if (g.in_connection[y]) g.connection.push_back(static_cast<Elem>(y));
  }
  g.r = g.connection.size();
  g.minus_one_is_power = is_power[R->neg(R->one())] != 0;
  g.pm_halving = g.minus_one_is_power ? 0.5 : 1.0;
  g.char_divides_degree = d % R->characteristic().value() == 0;
  return g;
}

std::vector<std::pair<Elem, Elem>> edge_list(const CayleyGraphSpec& g) {
  std::vector<std::pair<Elem, Elem>> edges;
  const Ring& R = *g.ring;
  for (std::uint64_t u = 0; u < R.order(); ++u) {
    for (Elem s : g.connection) {
      const Elem v = R.add(static_cast<Elem>(u), s);
      if (u < v) edges.emplace_back(static_cast<Elem>(u), v);
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

std::vector<std::complex<double>> adjacency_apply(const CayleyGraphSpec& g, std::span<const std::complex<double>> v) {
  const Ring& R = *g.ring;
  if (v.size() != R.order()) fail(ErrorKind::InvalidArgument, "vector size does not match ring order");
  std::vector<std::complex<double>> out(v.size());
  for (std::uint64_t x = 0; x < R.order(); ++x) {
    std::complex<double> acc = 0.0;
    for (Elem s : g.connection) acc += v[R.add(static_cast<Elem>(x), s)];
    out[x] = acc;
  }
  return out;
}

SpectrumReport spectrum(const AdditiveBasis& basis, const CayleyGraphSpec& g) {
  if (&basis.ring() != g.ring.get() && basis.ring().spec() != g.ring->spec()) {
    fail(ErrorKind::InvalidArgument, "basis and graph use different rings");
  }
  SpectrumReport rep;
  CharSummer summer(basis);
  const std::uint64_t n = basis.character_count();
  rep.eigenvalues.resize(n);
  constexpr double kTie = 1e-12;
  bool have = false;
  for (std::uint64_t i = 0; i < n; ++i) {
    const Character chi = basis.character(i);
    const auto s = summer.sum(chi, g.connection);
    rep.eigenvalues[i] = s.real();
    rep.max_imag = std::max(rep.max_imag, std::abs(s.imag()));
    rep.trace += s.real();
    rep.trace_sq += s.real() * s.real();
    if (i == 0) continue;
    const double m = std::abs(s.real());
    if (!have || m > rep.lambda2 + kTie) {
      have = true;
      rep.lambda2 = m;
      rep.lambda2_index = i;
      rep.lambda2_coeffs = chi.coeffs;
    }
  }
  rep.epsilon_star = g.r == 0 ? 0.0 : rep.lambda2 / (8.0 * static_cast<double>(g.r));
  return rep;
}

std::uint64_t edge_count(const CayleyGraphSpec& g, std::span<const Elem> A, std::span<const Elem> B) {
  const Ring& R = *g.ring;
  std::vector<char> inB(R.order(), 0);
  for (Elem b : B) inB.at(b) = 1;
  std::uint64_t count = 0;
  for (Elem a : A) {
    for (Elem s : g.connection) count += inB[R.add(a, s)];
  }
  return count;
}

std::string_view to_string(SetSource s) {
  switch (s) {
    case SetSource::Exhaustive: return "exhaustive";
    case SetSource::Sampled: return "sampled";
    case SetSource::Structured: return "structured";
    case SetSource::Explicit: return "file";
  }
  return "unknown";
}

namespace {

struct Tracker {
  const CayleyGraphSpec& g;
  const SpectrumReport& spec;
  UniformityReport& rep;
  double n;
  double r;

  void record(std::span<const Elem> A, std::span<const Elem> B, std::uint64_t count) {
    ++rep.pairs_examined;
    const double ab = static_cast<double>(A.size()) * static_cast<double>(B.size());
    const double dev = std::abs(static_cast<double>(count) - r * ab / n);
    if (dev > spec.lambda2 * std::sqrt(ab) + 0.5) ++rep.mixing_violations;
    const double norm = dev / (r * n);
    if (norm > rep.max_normalized_deviation || rep.pairs_examined == 1) {
      rep.max_normalized_deviation = norm;
      rep.best_a.assign(A.begin(), A.end());
      rep.best_b.assign(B.begin(), B.end());
      rep.spectral_certificate = spec.lambda2 * std::sqrt(ab) / (r * n);
    }
  }
};

// For a fixed B the deviation is additive in A: with t_a = #{b in B : b - a in S}
// - r|B|/|V|, the best A collects all positive (or all negative) t_a.
void best_a_for(const std::vector<double>& t, std::vector<Elem>& A) {
  double pos = 0.0, neg = 0.0;
  for (double x : t) (x > 0 ? pos : neg) += x;
  const bool take_pos = pos >= -neg;
  A.clear();
  for (std::size_t a = 0; a < t.size(); ++a) {
    if (take_pos ? t[a] > 0 : t[a] < 0) A.push_back(static_cast<Elem>(a));
  }
}

}  // namespace

UniformityReport uniformity_measure(const CayleyGraphSpec& g, const SpectrumReport& spec,
                                    const UniformityOptions& opts, const Limits& limits) {
  const Ring& R = *g.ring;
  const std::size_t n = R.order();
  UniformityReport rep;
  rep.source = opts.source;
  rep.seed = opts.seed;
  if (g.r == 0) fail(ErrorKind::InvalidArgument, "graph has no edges");
  rep.spectral_upper = spec.lambda2 / static_cast<double>(g.r);
  Tracker tr{g, spec, rep, static_cast<double>(n), static_cast<double>(g.r)};
  const double per_b = static_cast<double>(g.r) / static_cast<double>(n);

  // nbr_of_b[b] lists the a with b - a in S, i.e. a = b - s.
  auto neighbours = [&](Elem b, std::vector<Elem>& out) {
    out.clear();
    for (Elem s : g.connection) out.push_back(R.sub(b, s));
  };

  std::vector<Elem> A, B, nb;
  std::vector<double> t(n);
  auto evaluate_b = [&]() {
    std::fill(t.begin(), t.end(), -per_b * static_cast<double>(B.size()));
    for (Elem b : B) {
      neighbours(b, nb);
      for (Elem a : nb) t[a] += 1.0;
    }
    best_a_for(t, A);
    tr.record(A, B, edge_count(g, A, B));
  };

  switch (opts.source) {
    case SetSource::Explicit: {
      for (const auto& [a, b] : opts.pairs) {
        for (Elem x : a) if (!R.contains(x)) fail(ErrorKind::InvalidArgument, "set element out of range");
        for (Elem x : b) if (!R.contains(x)) fail(ErrorKind::InvalidArgument, "set element out of range");
      }
      require_work(opts.pairs.size() * n * g.r, limits, "explicit uniformity");
      for (const auto& [a, b] : opts.pairs) tr.record(a, b, edge_count(g, a, b));
      break;
    }
    case SetSource::Exhaustive: {
      if (n >= 31) fail(ErrorKind::WorkGuardExceeded, "exhaustive uniformity needs a small ring");
      const std::uint64_t subsets = std::uint64_t{1} << n;
      require_work(subsets * n, limits, "exhaustive uniformity");
      // Gray-code walk over B with incremental t.
      std::vector<char> inB(n, 0);
      std::fill(t.begin(), t.end(), 0.0);
      std::size_t bsize = 0;
      std::vector<int> counts(n, 0);
      for (std::uint64_t step = 0; step < subsets; ++step) {
        if (step > 0) {
          const int flip = std::countr_zero(step);
          neighbours(static_cast<Elem>(flip), nb);
          const int delta = inB[flip] ? -1 : 1;
          inB[flip] = static_cast<char>(!inB[flip]);
          bsize += delta;
          for (Elem a : nb) counts[a] += delta;
        }
        for (std::size_t a = 0; a < n; ++a) t[a] = counts[a] - per_b * static_cast<double>(bsize);
        best_a_for(t, A);
        B.clear();
        for (std::size_t b = 0; b < n; ++b) {
          if (inB[b]) B.push_back(static_cast<Elem>(b));
        }
        std::uint64_t count = 0;
        for (Elem a : A) count += static_cast<std::uint64_t>(counts[a]);
        tr.record(A, B, count);
      }
      rep.certified = true;
      break;
    }
    case SetSource::Sampled: {
      require_work(static_cast<std::uint64_t>(opts.samples) * n * (g.r + 1), limits, "sampled uniformity");
      std::mt19937_64 rng(opts.seed);
      for (std::size_t i = 0; i < opts.samples; ++i) {
        B.clear();
        for (std::size_t b = 0; b < n; ++b) {
          if (rng() >> 63) B.push_back(static_cast<Elem>(b));
        }
        evaluate_b();
      }
      break;
    }
    case SetSource::Structured: {
      std::vector<std::vector<Elem>> family;
      family.push_back({0});
      family.push_back(g.connection);
      std::vector<Elem> with0 = g.connection;
      with0.insert(with0.begin(), 0);
      family.push_back(with0);
      std::vector<Elem> powers;
      for (std::uint64_t x = 0; x < n; ++x) powers.push_back(R.pow(static_cast<Elem>(x), g.d));
      std::sort(powers.begin(), powers.end());
      powers.erase(std::unique(powers.begin(), powers.end()), powers.end());
      family.push_back(powers);
      std::vector<Elem> comp, comp0;
      for (std::uint64_t x = 0; x < n; ++x) {
        if (!g.in_connection[x]) comp.push_back(static_cast<Elem>(x));
        if (!g.in_connection[x] && x != 0) comp0.push_back(static_cast<Elem>(x));
      }
      family.push_back(comp);
      family.push_back(comp0);
      require_work(family.size() * family.size() * n * g.r, limits, "structured uniformity");
      for (const auto& a : family) {
        for (const auto& b : family) tr.record(a, b, edge_count(g, a, b));
      }
      break;
    }
  }
  rep.epsilon_lower_bound = rep.max_normalized_deviation;
  return rep;
}

QuasirandomVerdict quasirandomness_verdict(const CayleyGraphSpec& g, const SpectrumReport& spec, const Limits& limits) {
  if (g.char_divides_degree) {
    fail(ErrorKind::CharDividesDegree, "characteristic of " + g.ring->spec() + " divides d = " + std::to_string(g.d));
  }
  const Ring& R = *g.ring;
  QuasirandomVerdict v;
  v.delta = 1.0 - static_cast<double>(R.units_count()) / static_cast<double>(R.order());
  v.k = derivational_degree(R, monomial(R, g.d, R.one()), DerivationMode::Exact, limits).value;
  v.b = b_constant(g.d, R.characteristic());
  const double root = 1.0 / std::ldexp(1.0, static_cast<int>(v.k) - 1);
  v.sufficient_epsilon = 3.0 * g.d * static_cast<double>(v.b) * (v.k - 1.0) * std::pow(v.delta, root);

  for (std::size_t i = 0; i < R.residue_fields().size(); ++i) {
    const Ring& F = R.residue_field(i);
    std::vector<char> covered(F.order(), 0);
    for (std::uint64_t x = 0; x < F.order(); ++x) {
      const Elem y = F.pow(static_cast<Elem>(x), g.d);
      covered[y] = 1;
      covered[F.neg(y)] = 1;
    }
    const auto c = static_cast<std::size_t>(std::count(covered.begin(), covered.end(), 1));
    if (c == F.order()) continue;
    const double q = static_cast<double>(F.order());
    const double dd = g.d;
    BadPrime bp{F.order(), c, std::sqrt((dd - 1.0) / (64.0 * dd * dd * q))};
    v.necessary_epsilon_floor = std::max(v.necessary_epsilon_floor.value_or(0.0), bp.epsilon_floor);
    v.bad_primes.push_back(bp);
  }
  v.spectral_epsilon_floor = spec.epsilon_star;
  return v;
}

}  // namespace fpir
