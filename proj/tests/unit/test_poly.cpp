#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "catalog.hpp"
#include "fpir/numtheory.hpp"
#include "fpir/poly.hpp"

using namespace fpir;

namespace {

// Smallest k such that every (k+1)-fold difference in directions from R is the
// zero polynomial in x. Enumerates the directions one level at a time,
// deduplicating the intermediate polynomials.
unsigned direction_degree(const Ring& R, const Polynomial& P) {
  std::set<std::vector<Elem>> level = {P.coeffs};
  for (unsigned j = 0;; ++j) {
    std::set<std::vector<Elem>> next;
    for (const auto& c : level) {
      const Polynomial Q{c};
      for (std::uint64_t n = 0; n < R.order(); ++n) {
        auto D = forward_difference(R, Q, static_cast<Elem>(n));
        if (!D.is_zero()) next.insert(D.coeffs);
      }
    }
    if (next.empty()) return j;
    level = std::move(next);
  }
}

Polynomial random_poly(const Ring& R, unsigned deg, std::mt19937_64& rng) {
  std::vector<Elem> c(deg + 1);
  for (auto& x : c) x = static_cast<Elem>(rng() % R.order());
  if (c.back() == 0) c.back() = R.one();
  return make_polynomial(R, c);
}

}  // namespace

TEST_CASE("parsing and literals") {
  auto z5 = make_ring("Z/5");
  CHECK(parse_polynomial(*z5, "0,0,1").coeffs == std::vector<Elem>{0, 0, 1});
  CHECK(parse_polynomial(*z5, "-1,0,6").coeffs == std::vector<Elem>{4, 0, 1});
  CHECK(parse_polynomial(*z5, "1,0,0").degree() == 0);
  CHECK(parse_polynomial(*z5, "0").is_zero());
  auto gf4 = make_ring("GF(4)");
  CHECK(parse_polynomial(*gf4, "#2,1").coeffs == std::vector<Elem>{2, 1});
  CHECK(to_literal(parse_polynomial(*gf4, "#2,1")) == "#2,#1");
  for (const char* bad : {"", "1,x", "#9", "1,,2", "#"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_polynomial(*gf4, bad), Error);
  }
}

TEST_CASE("evaluation") {
  auto z5 = make_ring("Z/5");
  CHECK(eval(*z5, parse_polynomial(*z5, "0,0,1"), 3) == 4);
  auto gf4 = make_ring("GF(4)");
  CHECK(eval(*gf4, parse_polynomial(*gf4, "1,1,1"), 2) == 0);
  auto pq = make_ring("PQ(q=2;g=1,1,0,1)");  // F_2[t]/(t^3+t+1); t^2 has index 4
  CHECK(eval(*pq, parse_polynomial(*pq, "1,1"), 4) == 5);

  auto z12 = make_ring("Z/12");
  const auto P = parse_polynomial(*z12, "3,0,5,1");
  const auto all = eval_all(*z12, P);
  for (Elem x = 0; x < 12; ++x) CHECK(all[x] == (3 + 5 * x * x + x * x * x) % 12);
}

TEST_CASE("forward differences") {
  auto z7 = make_ring("Z/7");
  CHECK(forward_difference(*z7, parse_polynomial(*z7, "0,0,1"), 1).coeffs == std::vector<Elem>{1, 2});
  auto gf4 = make_ring("GF(4)");
  CHECK(forward_difference(*gf4, parse_polynomial(*gf4, "0,0,1"), 1).coeffs == std::vector<Elem>{1});
  for (Elem n = 0; n < 4; ++n) CHECK(forward_difference(*gf4, parse_polynomial(*gf4, "0,1"), n) == make_polynomial(*gf4, {n}));
}

TEST_CASE("forward difference agrees with pointwise evaluation") {
  std::mt19937_64 rng(2);
  for (const char* s : test::catalog()) {
    CAPTURE(std::string(s));
    auto R = make_ring(s);
    for (int t = 0; t < 5; ++t) {
      const auto P = random_poly(*R, 1 + rng() % 6, rng);
      const Elem n = static_cast<Elem>(rng() % R->order());
      const auto D = forward_difference(*R, P, n);
      bool ok = true;
      for (std::uint64_t x = 0; x < R->order(); ++x) {
        const Elem e = static_cast<Elem>(x);
        ok = ok && eval(*R, D, e) == R->sub(eval(*R, P, R->add(e, n)), eval(*R, P, e));
      }
      CHECK(ok);
    }
  }
}

TEST_CASE("differencing lowers the degree when the characteristic is large") {
  std::mt19937_64 rng(4);
  for (const char* s : {"Z/7", "Z/13", "GF(9)", "GF(25)", "GF(121)", "Z/35", "GR(5,2,1)"}) {
    auto R = make_ring(s);
    for (int t = 0; t < 20; ++t) {
      const unsigned deg = 1 + static_cast<unsigned>(rng() % std::min<std::uint64_t>(R->lpf() - 1, 6));
      const auto P = random_poly(*R, deg, rng);
      const Elem n = static_cast<Elem>(1 + rng() % (R->order() - 1));
      CHECK(forward_difference(*R, P, n).degree() < P.degree());
    }
  }
}

TEST_CASE("derivational degree examples") {
  auto exact = [](const char* ring, const char* poly) {
    auto R = make_ring(ring);
    return derivational_degree(*R, parse_polynomial(*R, poly), DerivationMode::Exact).value;
  };
  CHECK(exact("Z/7", "0,0,1") == 2);
  CHECK(exact("GF(8)", "0,0,0,0,1") == 1);
  CHECK(exact("GF(9)", "0,0,0,0,0,0,1") == 2);
  CHECK(exact("Z/8", "0,0,0,0,1") == 3);
  CHECK(exact("Z/4", "0,0,1") == 2);

  auto z8 = make_ring("Z/8");
  const auto b = derivational_degree(*z8, parse_polynomial(*z8, "0,0,0,0,1"), DerivationMode::DigitSumBound);
  CHECK(b.value == 4);
  CHECK(b.is_bound);
  auto gf8 = make_ring("GF(8)");
  const auto d = derivational_degree(*gf8, parse_polynomial(*gf8, "0,1,0,1,1"), DerivationMode::DigitSumBound);
  CHECK(d.value == 2);
  CHECK_FALSE(d.is_bound);
}

TEST_CASE("monomials in prime characteristic have digit-sum degree") {
  for (std::uint64_t p : {2u, 3u, 5u}) {
    for (unsigned e : {1u, 2u}) {
      auto R = Ring::galois_field(p, e);
      for (unsigned d = 1; d <= 16; ++d) {
        CAPTURE(p);
        CAPTURE(e);
        CAPTURE(d);
        const auto P = monomial(*R, d, R->one());
        CHECK(derivational_degree(*R, P, DerivationMode::Exact).value == nt::digit_sum(d, p));
        CHECK(derivational_degree(*R, P, DerivationMode::DigitSumBound).value == nt::digit_sum(d, p));
      }
    }
  }
}

TEST_CASE("exact degree never exceeds the digit-sum bound") {
  std::mt19937_64 rng(8);
  for (const char* s : test::catalog()) {
    CAPTURE(std::string(s));
    auto R = make_ring(s);
    for (int t = 0; t < 6; ++t) {
      const auto P = random_poly(*R, 1 + rng() % 8, rng);
      const auto ex = derivational_degree(*R, P, DerivationMode::Exact);
      const auto bd = derivational_degree(*R, P, DerivationMode::DigitSumBound);
      CHECK(ex.value <= bd.value);
      CHECK(ex.value >= 1);
      CHECK(ex.value <= static_cast<unsigned>(P.degree()));
    }
  }
}

TEST_CASE("direction enumeration oracle") {
  std::mt19937_64 rng(9);
  // Fields larger than the degree: a difference vanishing for all directions
  // is formally zero, so both notions agree.
  for (const char* s : {"Z/7", "Z/13", "GF(8)", "GF(9)", "GF(16)"}) {
    auto R = make_ring(s);
    for (int t = 0; t < 4; ++t) {
      const unsigned deg = 1 + static_cast<unsigned>(rng() % std::min<std::uint64_t>(R->order() - 1, 5));
      const auto P = random_poly(*R, deg, rng);
      CAPTURE(std::string(s));
      CAPTURE(to_literal(P));
      CHECK(direction_degree(*R, P) == derivational_degree(*R, P, DerivationMode::Exact).value);
    }
  }
  // Elsewhere the formal degree can only be larger.
  for (const char* s : {"Z/4", "Z/8", "Z/12", "GF(4)", "PQ(q=2;g=0,0,1)", "GR(2,2,2)", "prod(Z/2;Z/3)"}) {
    auto R = make_ring(s);
    for (int t = 0; t < 4; ++t) {
      const auto P = random_poly(*R, 1 + rng() % 5, rng);
      CAPTURE(std::string(s));
      CAPTURE(to_literal(P));
      CHECK(direction_degree(*R, P) <= derivational_degree(*R, P, DerivationMode::Exact).value);
    }
  }
}

TEST_CASE("work guard on the exact search") {
  auto R = make_ring("Z/1024");
  Limits tiny;
  tiny.work_budget = 50;
  const auto P = monomial(*R, 40, R->one());
  CHECK_THROWS_AS(derivational_degree(*R, P, DerivationMode::Exact, tiny), Error);
  const auto a = derivational_degree_auto(*R, P, tiny);
  CHECK(a.is_bound);
  CHECK(a.value == 40);
}

TEST_CASE("B constant") {
  CHECK(b_constant(2, Characteristic(5)) == 1);
  CHECK(b_constant(5, Characteristic(3)) == 9);
  CHECK(b_constant(7, Characteristic::infinite()) == 1);
  CHECK(b_constant(9, Characteristic(12)) == 1);
  CHECK(b_constant(8, Characteristic(2)) == 64);
  CHECK(b_constant(1, Characteristic(2)) == 1);
}

TEST_CASE("B(d,p)(k-1) is nondecreasing in d") {
  // k(d) is the digit-sum bound for a polynomial of degree d, i.e. the largest
  // digit sum of an exponent up to d.
  for (std::uint64_t p : {2u, 3u, 5u, 7u}) {
    double prev = 0.0;
    unsigned k = 0;
    for (unsigned d = 1; d <= 60; ++d) {
      k = std::max(k, nt::digit_sum(d, p));
      const double v = static_cast<double>(b_constant(d, Characteristic(p))) * (k - 1.0);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("binomial table") {
  BinomialTable t(20, 1000000007ull);
  CHECK(t(20, 10) == 184756);
  BinomialTable t2(8, 2);
  CHECK(t2(8, 4) == 0);
  CHECK(t2(7, 3) == 1);
}
