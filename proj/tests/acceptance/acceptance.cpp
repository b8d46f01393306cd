#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "../unit/catalog.hpp"
#include "fpir/combinatorics.hpp"
#include "fpir/harmonics.hpp"
#include "fpir/numtheory.hpp"
#include "fpir/paley.hpp"
#include "fpir/subgroup.hpp"

using namespace fpir;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void run(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) {
    o.pass = false;
    o.detail += " [over time budget]";
  }
  failures += !o.pass;
  std::printf("criterion %2d %-28s %s  %.2fs/%.0fs  %s\n", id, name, o.pass ? "PASS" : "FAIL", secs, budget_s,
              o.detail.c_str());
  std::fflush(stdout);
}

std::uint64_t smallest_prime(const Ring& R) { return nt::factorize(R.characteristic().value()).front().first; }

// Exhaustive closure of a generating set under addition.
std::set<Elem> closure(const Ring& R, const std::vector<Elem>& gens) {
  std::set<Elem> H = {0};
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<Elem> cur(H.begin(), H.end());
    for (Elem h : cur)
      for (Elem g : gens) grew |= H.insert(R.add(h, g)).second;
  }
  return H;
}

std::vector<Polynomial> poly_suite(const Ring& R, std::mt19937_64& rng) {
  const std::uint64_t p = smallest_prime(R);
  const Elem one = R.one();
  std::vector<Polynomial> ps;
  ps.push_back(monomial(R, 1, one));
  ps.push_back(monomial(R, 2, one));
  ps.push_back(parse_polynomial(R, "1,0,0,1"));
  ps.push_back(parse_polynomial(R, "0,1,0,0,1"));
  ps.push_back(parse_polynomial(R, "0,0,3,0,0,1"));
  ps.push_back(monomial(R, 6, one));
  std::vector<Elem> c(7);
  for (auto& x : c) x = static_cast<Elem>(rng() % R.order());
  c[6] = one;
  ps.push_back(make_polynomial(R, c));
  ps.push_back(monomial(R, static_cast<unsigned>(p), one));
  ps.push_back(add(R, add(R, monomial(R, static_cast<unsigned>(p * p), one), monomial(R, static_cast<unsigned>(2 * p), one)),
                   monomial(R, 1, one)));
  std::vector<Polynomial> out;
  for (auto& P : ps)
    if (P.degree() >= 1) out.push_back(std::move(P));
  return out;
}

Outcome gauss() {
  std::ostringstream os;
  bool ok = true;
  for (std::uint64_t p : {5u, 13u, 17u, 29u}) {
    auto R = Ring::zmod(p);
    AdditiveBasis B(R);
    const auto rep = character_bound_check(B, monomial(*R, 2, R->one()));
    const double s2 = rep.max_nontrivial_modulus * rep.max_nontrivial_modulus;
    const bool tight = std::abs(s2 - 1.0 / p) < 1e-9 && std::abs(rep.rhs - 1.0 / p) < 1e-9 && rep.k == 2;
    ok = ok && tight && rep.bound_satisfied;
    os << "p=" << p << " |S|^2=" << s2 << " ";
  }
  return {ok, os.str()};
}

Outcome character_suite() {
  std::mt19937_64 rng(20);
  std::size_t pairs = 0, violations = 0, conservative = 0, rings = 0, lifted_violations = 0;
  std::string offenders;
  std::set<std::string> kinds;
  for (const char* s : test::catalog()) {
    auto R = make_ring(s);
    ++rings;
    kinds.insert(std::string(s).substr(0, 2));
    AdditiveBasis B(R);
    for (const auto& P : poly_suite(*R, rng)) {
      const auto rep = character_bound_check(B, P);
      ++pairs;
      violations += rep.violations;
      if (rep.violations) {
        offenders += " " + std::string(s) + ":" + to_literal(P) + " k=" + std::to_string(rep.k);
        // Over a ring whose characteristic is not prime the lift lives in characteristic zero,
        // where the derivational degree is deg P.
        const auto d = static_cast<unsigned>(P.degree());
        const bool prime_char = nt::is_prime(R->characteristic().value());
        const unsigned k = prime_char ? rep.k : d;
        const double rhs = static_cast<double>(rep.b) * (k - 1.0) / static_cast<double>(rep.lpf);
        lifted_violations += std::pow(rep.max_outside_modulus, std::pow(2.0, k - 1.0)) > rhs + kBoundTolerance;
      }
      conservative += rep.conservative;
      if (!rep.conservative) {
        const double n = static_cast<double>(R->order());
        if (std::pow(n, rep.k + 1) > 16777216.0) ++conservative;
      }
    }
  }
  std::ostringstream os;
  os << rings << " rings, " << kinds.size() << " variants, " << pairs << " pairs, " << violations << " violations, "
     << conservative << " with bound k";
  if (violations) os << ";" << offenders << "; with the characteristic-zero lift degree: " << lifted_violations << " pairs violate";
  return {violations == 0 && rings >= 20 && kinds.size() == 5 && pairs >= 20 * 8, os.str()};
}

Outcome te_suite() {
  std::mt19937_64 rng(20);
  std::size_t runs = 0, bad = 0, mismatch = 0;
  double worst = 0.0, max_diff = 0.0;
  for (const char* s : test::catalog()) {
    auto R = make_ring(s);
    AdditiveBasis B(R);
    for (const auto& P : poly_suite(*R, rng)) {
      TEContext ctx(B, P);
      for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto f = random_function(R->order(), seed);
        const auto rep = te_estimate(ctx, f);
        const double direct = ctx.lhs_direct(f);
        const double diff = std::abs(direct - rep.lhs_fourier);
        max_diff = std::max(max_diff, diff);
        mismatch += diff > 1e-8;
        bad += !(rep.lhs <= rep.rhs + kBoundTolerance);
        worst = std::max(worst, rep.ratio);
        ++runs;
      }
    }
  }
  std::ostringstream os;
  os << runs << " runs, " << bad << " violations, max lhs/rhs " << worst << ", max |direct-fourier| " << max_diff;
  return {bad == 0 && mismatch == 0, os.str()};
}

Outcome vdc_suite() {
  std::size_t rings = 0, configs = 0, bad = 0;
  for (const char* s : test::catalog()) {
    auto R = make_ring(s);
    if (R->order() > 64) continue;
    std::vector<SubgroupSet> subs = {SubgroupSet::trivial(*R), SubgroupSet::whole(*R)};
    for (Elem g = 1; g < R->order() && subs.size() < 4; ++g) {
      auto H = SubgroupSet::generated_by(*R, std::vector<Elem>{g});
      if (std::find(subs.begin(), subs.end(), H) == subs.end()) subs.push_back(std::move(H));
    }
    if (subs.size() < 3) continue;
    ++rings;
    std::uint64_t seed = 0;
    for (const auto& H : subs) {
      for (unsigned k = 1; k <= 3; ++k) {
        const double work = std::pow(static_cast<double>(H.size()), k) * R->order() * std::pow(2.0, k);
        if (work > 4.0e5) continue;
        ++configs;
        for (int i = 0; i < 200; ++i) {
          const auto f = random_function(R->order(), seed++);
          bad += !vdc_check(*R, H, f, k).holds;
        }
      }
    }
  }
  std::ostringstream os;
  os << rings << " rings, " << configs << " (H,k) configurations x 200 f, " << bad << " violations";
  return {bad == 0 && rings > 0, os.str()};
}

std::size_t brute_difference_free(const Ring& R, const Polynomial& P) {
  const auto n = R.order();
  std::vector<char> diff(n, 0);
  for (Elem x = 0; x < n; ++x) diff[eval(R, P, x)] = 1;
  std::size_t best = 0;
  for (std::uint32_t m = 1; m < (1u << n); ++m) {
    const auto size = static_cast<std::size_t>(__builtin_popcount(m));
    if (size <= best) continue;
    bool ok = true;
    for (Elem a = 0; a < n && ok; ++a)
      for (Elem b = 0; b < n && ok; ++b)
        if (a != b && (m >> a & 1) && (m >> b & 1) && diff[R.sub(b, a)]) ok = false;
    if (ok) best = size;
  }
  return best;
}

Outcome sarkozy() {
  std::ostringstream os;
  bool ok = true;
  for (std::uint64_t p : {5u, 13u}) {
    auto R = Ring::zmod(p);
    const auto P = monomial(*R, 2, R->one());
    const auto res = difference_free_max(*R, P, SearchMode::Exact);
    const auto brute = brute_difference_free(*R, P);
    const bool frozen = res.size == (p == 5 ? 2u : 3u);
    ok = ok && res.exact && res.size == brute && frozen && res.size <= std::sqrt(static_cast<double>(p)) + 2 &&
         res.witness.size() == res.size && is_difference_free(*R, P, res.witness);
    os << "Z/" << p << " size " << res.size << " (brute " << brute << ") ";
  }
  return {ok, os.str()};
}

Outcome paley_closed_form() {
  std::ostringstream os;
  bool ok = true;
  for (std::uint64_t q : {13u, 17u, 29u}) {
    auto R = Ring::zmod(q);
    AdditiveBasis B(R);
    const auto g = build_paley(R, 2);
    const auto sp = spectrum(B, g);
    const double rq = std::sqrt(static_cast<double>(q));
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < q; ++i) {
      lo += std::abs(sp.eigenvalues[i] - (-1.0 - rq) / 2.0) < 1e-9;
      hi += std::abs(sp.eigenvalues[i] - (-1.0 + rq) / 2.0) < 1e-9;
    }
    ok = ok && lo == (q - 1) / 2 && hi == (q - 1) / 2;
    if (q == 13) {
      double worst = 0.0;
      for (std::uint64_t i = 0; i < q; ++i) {
        const auto chi = B.character(i);
        std::vector<std::complex<double>> v(q);
        for (Elem x = 0; x < q; ++x) v[x] = B.value(chi, x);
        const auto Av = adjacency_apply(g, v);
        for (Elem x = 0; x < q; ++x) worst = std::max(worst, std::abs(Av[x] - sp.eigenvalues[i] * v[x]));
      }
      ok = ok && worst < 1e-9;
      os << "q=13 eigenvector residual " << worst << "; ";
    }
    os << "q=" << q << " multiplicities " << lo << "/" << hi << " ";
  }
  return {ok, os.str()};
}

Outcome dichotomy() {
  auto z35 = make_ring("Z/35");
  auto z13 = make_ring("Z/13");
  const auto g35 = build_paley(z35, 2), g13 = build_paley(z13, 2);
  const auto v35 = quasirandomness_verdict(g35, spectrum(AdditiveBasis(z35), g35));
  const auto v13 = quasirandomness_verdict(g13, spectrum(AdditiveBasis(z13), g13));
  const bool bad5 = v35.bad_primes.size() == 1 && v35.bad_primes[0].residue_size == 5;
  const double floor35 = v35.necessary_epsilon_floor.value_or(0.0);
  const bool floor_ok = floor35 >= 0.0280;
  const bool clean13 = v13.bad_primes.empty();
  const bool spectral = v35.spectral_epsilon_floor > v13.spectral_epsilon_floor;
  std::ostringstream os;
  os.precision(6);
  os << "Z/35 floor " << floor35 << (floor_ok ? " >= " : " < ") << "0.0280, bad prime 5 " << (bad5 ? "yes" : "no")
     << "; Z/13 bad primes " << v13.bad_primes.size();
  if (!v13.bad_primes.empty()) os << " (covered " << v13.bad_primes[0].covered << " of " << v13.bad_primes[0].residue_size << ")";
  os << "; spectral " << v35.spectral_epsilon_floor << " vs " << v13.spectral_epsilon_floor;
  return {bad5 && floor_ok && clean13 && spectral, os.str()};
}

Outcome subgroups() {
  auto pq = make_ring("PQ(q=2;g=0,0,1)");
  const auto sq = monomial(*pq, 2, pq->one());
  const auto H = value_subgroup(*pq, sq, false);
  const auto Hc = closure(*pq, eval_all(*pq, sq));
  const bool a = H.index() == 2 && std::vector<Elem>(Hc.begin(), Hc.end()) == H.elements();

  const auto shifted = parse_polynomial(*pq, "#2,0,1");
  const auto Hs = closure(*pq, [&] {
    std::vector<Elem> v;
    for (Elem x = 0; x < pq->order(); ++x) v.push_back(pq->sub(eval(*pq, shifted, x), shifted.constant_term()));
    return v;
  }());
  const bool b = !constant_in_subgroup(*pq, shifted) && !Hs.count(shifted.constant_term());

  auto z5 = make_ring("Z/5");
  const auto sq5 = monomial(*z5, 2, z5->one());
  const bool c = is_full(*z5, value_subgroup(*z5, sq5, false)) && closure(*z5, eval_all(*z5, sq5)).size() == 5;
  std::ostringstream os;
  os << "index " << H.index() << ", constant in subgroup " << (b ? "false" : "true") << ", Z/5 full " << (c ? "yes" : "no");
  return {a && b && c, os.str()};
}

Outcome root_counts() {
  std::mt19937_64 rng(9);
  std::vector<RingPtr> rings;
  for (const char* s : test::catalog()) {
    auto R = make_ring(s);
    if (R->order() <= 128) rings.push_back(std::move(R));
  }
  std::size_t done = 0, bad = 0;
  while (done < 600) {
    const auto& R = rings[done % rings.size()];
    MultiPoly T;
    T.vars = 1 + static_cast<unsigned>(rng() % 2);
    const std::size_t nterms = 1 + rng() % 4;
    for (std::size_t t = 0; t < nterms; ++t) {
      MultiPoly::Term term;
      for (unsigned v = 0; v < T.vars; ++v) term.exps[v] = static_cast<unsigned>(rng() % 5);
      term.coeff = static_cast<Elem>(rng() % R->order());
      T.terms.push_back(term);
    }
    if (T.is_zero()) continue;
    try {
      bad += !root_count_bound_check(*R, T).holds;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ZeroPolynomial) throw;
      continue;
    }
    ++done;
  }
  auto z12 = make_ring("Z/12");
  MultiPoly six;
  six.terms.push_back({{1, 0, 0}, 6});
  const auto t = root_count_bound_check(*z12, six);
  std::ostringstream os;
  os << done << " polynomials over " << rings.size() << " rings, " << bad << " violations; 6x over Z/12 count "
     << t.count << " bound " << t.bound;
  return {bad == 0 && t.count == 6 && t.bound == 6.0, os.str()};
}

Outcome intersectivity() {
  const std::vector<std::int64_t> a = {-1, 0, 1}, b = {-2, 0, 1};
  const auto va = intersectivity_integers(a, 200);
  const auto vb = intersectivity_integers(b, 200);
  const auto vc = intersectivity_fpt(3, {{1}, {1}}, 3);
  const bool ok = va.status == IntersectStatus::IntersectiveUpToBound && vb.status == IntersectStatus::WitnessFound &&
                  vb.witness && vb.witness->modulus == "3" && vc.status == IntersectStatus::IntersectiveUpToBound;
  std::ostringstream os;
  os << "x^2-1 " << to_string(va.status) << ", x^2-2 witness " << (vb.witness ? vb.witness->modulus : "none")
     << ", x+1 over F_3[t] " << to_string(vc.status);
  return {ok, os.str()};
}

Outcome trend() {
  std::vector<double> stat;
  std::vector<std::uint64_t> primes;
  bool bounded = true;
  for (std::uint64_t p = 5; p <= 97; ++p) {
    if (!nt::is_prime(p)) continue;
    auto R = Ring::zmod(p);
    AdditiveBasis B(R);
    const auto P = monomial(*R, 2, R->one());
    TEContext ctx(B, P);
    const auto values = eval_all(*R, P);
    std::mt19937_64 rng(1000 + p);
    double sup = 0.0;
    for (int i = 0; i < 200; ++i) {
      std::vector<Elem> A, Bs;
      for (Elem x = 0; x < p; ++x) {
        if (rng() & 1) A.push_back(x);
        if (rng() & 1) Bs.push_back(x);
      }
      const auto cc = config_count(*R, values, A, Bs);
      const double n2 = static_cast<double>(p) * p;
      const double dev = std::abs(cc.deviation) / n2;
      const double plug = ctx.bound_factor() * std::sqrt(static_cast<double>(A.size()) * Bs.size() / n2);
      bounded = bounded && dev <= plug + 1e-12;
      sup = std::max(sup, dev);
    }
    primes.push_back(p);
    stat.push_back(sup);
  }
  bool monotone = true;
  std::ostringstream os;
  os.precision(3);
  for (std::size_t i = 1; i < stat.size(); ++i) {
    if (stat[i] > 1.1 * stat[i - 1]) {
      monotone = false;
      os << "rise at p=" << primes[i] << " (" << stat[i - 1] << " -> " << stat[i] << ") ";
    }
  }
  os << "sup deviation " << stat.front() << " at p=5 to " << stat.back() << " at p=97";
  if (!bounded) os << "; plug-in bound exceeded";
  return {monotone && bounded, os.str()};
}

}  // namespace

int main() {
  run(1, "gauss tightness", 1, gauss);
  run(2, "character bound suite", 60, character_suite);
  run(3, "quantitative TE suite", 120, te_suite);
  run(4, "vdC property suite", 30, vdc_suite);
  run(5, "Sarkozy extremal check", 10, sarkozy);
  run(6, "Paley spectrum closed form", 5, paley_closed_form);
  run(7, "quasirandomness dichotomy", 5, dichotomy);
  run(8, "subgroup structure", 1, subgroups);
  run(9, "root count bound", 30, root_counts);
  run(10, "intersectivity oracle", 5, intersectivity);
  run(11, "asymptotic trend", 60, trend);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
