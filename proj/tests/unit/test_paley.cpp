#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "catalog.hpp"
#include "fpir/paley.hpp"

using namespace fpir;
using cd = std::complex<double>;

namespace {

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::uint64_t direct_edges(const CayleyGraphSpec& g, const std::vector<Elem>& A, const std::vector<Elem>& B) {
  std::uint64_t c = 0;
  for (Elem a : A)
    for (Elem b : B) c += g.in_connection[g.ring->sub(b, a)] != 0;
  return c;
}

}  // namespace

TEST_CASE("connection sets") {
  const auto g13 = build_paley(make_ring("Z/13"), 2);
  CHECK(g13.connection == std::vector<Elem>{1, 3, 4, 9, 10, 12});
  CHECK(g13.r == 6);
  const auto g7 = build_paley(make_ring("Z/7"), 2);
  CHECK(g7.r == 6);
  const auto g5 = build_paley(make_ring("Z/5"), 2);
  CHECK(g5.connection == std::vector<Elem>{1, 4});
}

TEST_CASE("connection set structure over the catalog") {
  for (const char* s : test::catalog()) {
    auto R = make_ring(s);
    for (unsigned d : {2u, 3u, 4u}) {
      const auto g = build_paley(R, d);
      CAPTURE(std::string(s));
      CAPTURE(d);
      CHECK_FALSE(g.in_connection[0]);
      bool symmetric = true;
      for (Elem x : g.connection) symmetric = symmetric && g.in_connection[R->neg(x)];
      CHECK(symmetric);
      CHECK(g.r == g.connection.size());
      if (d % R->characteristic().value() != 0) {
        CHECK_FALSE(g.char_divides_degree);
        if (R->units_count() + 1 == R->order()) CHECK(g.r * d >= R->units_count());
      }
      const auto edges = edge_list(g);
      CHECK(edges.size() * 2 == g.r * R->order());
      CHECK(std::all_of(edges.begin(), edges.end(), [](auto e) { return e.first < e.second; }));
    }
  }
}

TEST_CASE("spectra of small Paley graphs") {
  {
    auto R = make_ring("Z/13");
    const auto sp = spectrum(AdditiveBasis(R), build_paley(R, 2));
    CHECK(sp.lambda2 == doctest::Approx((1.0 + std::sqrt(13.0)) / 2.0).epsilon(1e-12));
    CHECK(sp.eigenvalues[0] == doctest::Approx(6.0));
  }
  {
    auto R = make_ring("Z/5");
    const auto sp = spectrum(AdditiveBasis(R), build_paley(R, 2));
    const double c1 = 2 * std::cos(2 * std::numbers::pi / 5), c2 = 2 * std::cos(4 * std::numbers::pi / 5);
    const auto ev = sorted(sp.eigenvalues);
    const std::vector<double> expect = sorted({2.0, c1, c1, c2, c2});
    for (std::size_t i = 0; i < 5; ++i) CHECK(ev[i] == doctest::Approx(expect[i]).epsilon(1e-12));
    // largest nontrivial absolute value
    CHECK(sp.lambda2 == doctest::Approx(std::abs(c2)).epsilon(1e-12));
  }
  {
    auto R = make_ring("Z/7");
    const auto sp = spectrum(AdditiveBasis(R), build_paley(R, 2));
    CHECK(sp.lambda2 == doctest::Approx(1.0));
    for (std::size_t i = 1; i < 7; ++i) CHECK(sp.eigenvalues[i] == doctest::Approx(-1.0));
  }
}

TEST_CASE("Paley closed form") {
  for (std::uint64_t q : {13u, 17u, 29u}) {
    auto R = Ring::zmod(q);
    const auto sp = spectrum(AdditiveBasis(R), build_paley(R, 2));
    const double lo = (-1.0 - std::sqrt(static_cast<double>(q))) / 2.0, hi = (-1.0 + std::sqrt(static_cast<double>(q))) / 2.0;
    std::size_t nlo = 0, nhi = 0;
    for (std::size_t i = 1; i < q; ++i) {
      nlo += std::abs(sp.eigenvalues[i] - lo) < 1e-9;
      nhi += std::abs(sp.eigenvalues[i] - hi) < 1e-9;
    }
    CHECK(std::abs(sp.eigenvalues[0] - (q - 1) / 2.0) < 1e-9);
    CHECK(nlo == (q - 1) / 2);
    CHECK(nhi == (q - 1) / 2);
  }
}

TEST_CASE("eigenvector identity") {
  for (const char* s : test::catalog()) {
    auto R = make_ring(s);
    if (R->order() > 64) continue;
    AdditiveBasis B(R);
    for (unsigned d : {2u, 3u}) {
      const auto g = build_paley(R, d);
      const auto sp = spectrum(B, g);
      double worst = 0.0;
      for (std::uint64_t i = 0; i < B.character_count(); ++i) {
        const auto chi = B.character(i);
        std::vector<cd> v(R->order());
        for (Elem x = 0; x < R->order(); ++x) v[x] = B.value(chi, x);
        const auto Av = adjacency_apply(g, v);
        for (Elem x = 0; x < R->order(); ++x) {
          cd direct = 0.0;
          for (Elem t : g.connection) direct += v[R->add(x, t)];
          worst = std::max({worst, std::abs(Av[x] - direct), std::abs(Av[x] - sp.eigenvalues[i] * v[x])});
        }
      }
      CAPTURE(std::string(s));
      CHECK(worst < 1e-9);
    }
  }
}

TEST_CASE("trace identities") {
  for (const char* s : test::catalog()) {
    auto R = make_ring(s);
    AdditiveBasis B(R);
    for (unsigned d : {2u, 3u, 5u}) {
      const auto g = build_paley(R, d);
      const auto sp = spectrum(B, g);
      CAPTURE(std::string(s));
      CHECK(std::abs(sp.trace) < 1e-6);
      CHECK(std::abs(sp.trace_sq - static_cast<double>(g.r * R->order())) < 1e-6);
      CHECK(sp.max_imag < 1e-9);
      CHECK(sp.eigenvalues[0] == doctest::Approx(static_cast<double>(g.r)));
    }
  }
}

TEST_CASE("edge counts") {
  auto z7 = make_ring("Z/7");
  const auto k7 = build_paley(z7, 2);
  std::vector<Elem> all = {0, 1, 2, 3, 4, 5, 6};
  CHECK(edge_count(k7, all, all) == 42);

  auto z13 = make_ring("Z/13");
  const auto g = build_paley(z13, 2);
  const std::vector<Elem> qr = {0, 1, 3, 4, 9, 10, 12};
  CHECK(edge_count(g, qr, qr) == direct_edges(g, qr, qr));
  CHECK(edge_count(g, {}, qr) == 0);

  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    std::vector<Elem> A, B;
    for (Elem x = 0; x < 13; ++x) {
      if (rng() & 1) A.push_back(x);
      if (rng() & 1) B.push_back(x);
    }
    CHECK(edge_count(g, A, B) == direct_edges(g, A, B));
  }
}

TEST_CASE("exhaustive uniformity matches brute force") {
  for (const char* s : {"Z/5", "Z/7", "GF(8)", "prod(Z/2;Z/3)"}) {
    auto R = make_ring(s);
    const auto g = build_paley(R, 2);
    if (g.r == 0) continue;
    const auto sp = spectrum(AdditiveBasis(R), g);
    const std::size_t n = R->order();
    double best = 0.0;
    for (std::uint32_t ma = 0; ma < (1u << n); ++ma) {
      std::vector<Elem> A;
      for (Elem x = 0; x < n; ++x)
        if (ma >> x & 1) A.push_back(x);
      for (std::uint32_t mb = 0; mb < (1u << n); ++mb) {
        std::vector<Elem> B;
        for (Elem x = 0; x < n; ++x)
          if (mb >> x & 1) B.push_back(x);
        const double dev = std::abs(static_cast<double>(direct_edges(g, A, B)) -
                                    static_cast<double>(g.r) * A.size() * B.size() / n);
        best = std::max(best, dev / (static_cast<double>(g.r) * n));
      }
    }
    const auto u = uniformity_measure(g, sp, {SetSource::Exhaustive, 0, 0});
    CAPTURE(std::string(s));
    CHECK(u.certified);
    CHECK(u.max_normalized_deviation == doctest::Approx(best).epsilon(1e-12));
    CHECK(u.mixing_violations == 0);
  }
}

TEST_CASE("certified uniformity implies the eigenvalue bound") {
  for (const char* s : {"Z/5", "Z/13", "Z/17", "GF(9)", "Z/12", "PQ(q=3;g=0,0,1)", "prod(Z/3;Z/5)"}) {
    auto R = make_ring(s);
    const auto g = build_paley(R, 2);
    const auto sp = spectrum(AdditiveBasis(R), g);
    const auto u = uniformity_measure(g, sp, {SetSource::Exhaustive, 0, 0});
    CAPTURE(std::string(s));
    REQUIRE(u.certified);
    CHECK(sp.lambda2 <= 8.0 * u.epsilon_lower_bound * g.r + 1e-12);
    CHECK(u.epsilon_lower_bound <= u.spectral_upper + 1e-12);
  }
}

TEST_CASE("expander mixing on sampled and structured sets") {
  for (const char* s : {"Z/13", "Z/35", "GF(25)", "GR(3,2,2)", "prod(Z/5;Z/7)", "Z/97"}) {
    auto R = make_ring(s);
    const auto g = build_paley(R, 2);
    const auto sp = spectrum(AdditiveBasis(R), g);
    for (auto src : {SetSource::Sampled, SetSource::Structured}) {
      const auto u = uniformity_measure(g, sp, {src, 100, 3});
      CAPTURE(std::string(s));
      CHECK(u.mixing_violations == 0);
      CHECK_FALSE(u.certified);
      CHECK(u.pairs_examined > 0);
    }
    const auto a = uniformity_measure(g, sp, {SetSource::Sampled, 50, 9});
    const auto b = uniformity_measure(g, sp, {SetSource::Sampled, 50, 9});
    CHECK(a.max_normalized_deviation == b.max_normalized_deviation);
  }
}

TEST_CASE("exhaustive mode respects the work guard") {
  auto R = make_ring("Z/41");
  const auto g = build_paley(R, 2);
  const auto sp = spectrum(AdditiveBasis(R), g);
  CHECK_THROWS_AS(uniformity_measure(g, sp, {SetSource::Exhaustive, 0, 0}), Error);
}

TEST_CASE("quasirandomness verdicts") {
  {
    auto R = make_ring("Z/35");
    const auto g = build_paley(R, 2);
    const auto v = quasirandomness_verdict(g, spectrum(AdditiveBasis(R), g));
    REQUIRE(v.bad_primes.size() == 1);
    CHECK(v.bad_primes[0].residue_size == 5);
    CHECK(v.bad_primes[0].covered == 3);
    REQUIRE(v.necessary_epsilon_floor.has_value());
    CHECK(*v.necessary_epsilon_floor == doctest::Approx(1.0 / std::sqrt(1280.0)).epsilon(1e-12));
  }
  {
    // +-squares mod 13 together with 0 are 7 of the 13 residues
    auto R = make_ring("Z/13");
    const auto g = build_paley(R, 2);
    const auto sp = spectrum(AdditiveBasis(R), g);
    const auto v = quasirandomness_verdict(g, sp);
    REQUIRE(v.bad_primes.size() == 1);
    CHECK(v.bad_primes[0].covered == 7);
    CHECK(v.spectral_epsilon_floor == doctest::Approx(sp.lambda2 / 48.0).epsilon(1e-12));
  }
  {
    auto R = make_ring("Z/7");
    const auto g = build_paley(R, 2);
    const auto v = quasirandomness_verdict(g, spectrum(AdditiveBasis(R), g));
    CHECK(v.bad_primes.empty());
    CHECK_FALSE(v.necessary_epsilon_floor.has_value());
  }
  {
    auto R = make_ring("GF(9)");
    const auto g = build_paley(R, 2);
    const auto v = quasirandomness_verdict(g, spectrum(AdditiveBasis(R), g));
    CHECK(v.k == 2);
    CHECK(v.b == 1);
    CHECK(v.delta == doctest::Approx(1.0 / 9.0));
    CHECK(v.sufficient_epsilon == doctest::Approx(3.0 * 2.0 * std::sqrt(1.0 / 9.0)).epsilon(1e-12));
  }
  {
    auto R = make_ring("GF(4)");
    const auto g = build_paley(R, 2);
    CHECK(g.char_divides_degree);
    try {
      quasirandomness_verdict(g, spectrum(AdditiveBasis(R), g));
      FAIL("verdict should be refused");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::CharDividesDegree);
    }
  }
}
