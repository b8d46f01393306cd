#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "catalog.hpp"
#include "fpir/additive.hpp"
#include "fpir/subgroup.hpp"

using namespace fpir;
using cd = std::complex<double>;

namespace {

// chi_s(x) = exp(2 pi i sum_j s_j c_j(x) / m_j), straight from the coordinates
cd direct_value(const AdditiveBasis& B, const Character& chi, Elem x) {
  const auto c = B.coordinates(x);
  double t = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) t += static_cast<double>(chi.coeffs[j]) * c[j] / B.orders()[j];
  return std::polar(1.0, 2.0 * std::numbers::pi * t);
}

}  // namespace

TEST_CASE("cyclic decompositions") {
  CHECK(AdditiveBasis(make_ring("Z/12")).orders() == std::vector<std::uint32_t>{12});
  CHECK(AdditiveBasis(make_ring("GF(4)")).orders() == std::vector<std::uint32_t>{2, 2});
  CHECK(AdditiveBasis(make_ring("GR(3,2,2)")).orders() == std::vector<std::uint32_t>{9, 9});
  CHECK(AdditiveBasis(make_ring("PQ(q=3;g=0,0,1)")).orders() == std::vector<std::uint32_t>{3, 3});

  AdditiveBasis p(make_ring("prod(Z/2;Z/3)"));
  CHECK(p.character_count() == 6);
  CHECK(p.angle_lcm() == 6);
}

TEST_CASE("character values") {
  AdditiveBasis z5(make_ring("Z/5"));
  CHECK(z5.character_count() == 5);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto chi = z5.character(s);
    for (Elem x = 0; x < 5; ++x) {
      CHECK(std::abs(z5.value(chi, x) - std::polar(1.0, 2.0 * std::numbers::pi * s * x / 5.0)) < 1e-12);
    }
  }

  AdditiveBasis gf4(make_ring("GF(4)"));
  for (std::uint64_t i = 0; i < 4; ++i) {
    for (Elem x = 0; x < 4; ++x) {
      const cd v = gf4.value(gf4.character(i), x);
      CHECK(std::abs(v.imag()) < 1e-12);
      CHECK(std::abs(std::abs(v.real()) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("characters agree with the coordinate formula") {
  for (const char* s : {"Z/12", "GF(9)", "GR(2,2,2)", "prod(Z/3;GF(4))", "PQ(q=2;g=0,1,1)"}) {
    CAPTURE(std::string(s));
    AdditiveBasis B(make_ring(s));
    double worst = 0.0;
    for (std::uint64_t i = 0; i < B.character_count(); ++i) {
      const auto chi = B.character(i);
      CHECK(B.character_from_coeffs(chi.coeffs).index == i);
      for (Elem x = 0; x < B.ring().order(); ++x) worst = std::max(worst, std::abs(B.value(chi, x) - direct_value(B, chi, x)));
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("annihilators") {
  auto z6 = make_ring("Z/6");
  AdditiveBasis B(z6);
  const auto H = SubgroupSet::generated_by(*z6, std::vector<Elem>{2});
  const auto ann = annihilator(B, H);
  REQUIRE(ann.size() == 2);
  CHECK(ann[0].index == 0);
  CHECK(ann[1].index == 3);

  CHECK(annihilator(B, SubgroupSet::whole(*z6)).size() == 1);
  CHECK(annihilator(B, SubgroupSet::trivial(*z6)).size() == 6);

  try {
    annihilator(B, std::vector<Elem>{0, 1});
    FAIL("accepted a non-subgroup");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotASubgroup);
  }
}

TEST_CASE("character sums") {
  AdditiveBasis B(make_ring("Z/5"));
  const std::vector<Elem> all = {0, 1, 2, 3, 4};
  CHECK(std::abs(char_sum(B, B.character(2), all)) < 1e-12);
  const std::vector<Elem> some = {3, 3, 1, 4};
  CHECK(std::abs(char_sum(B, B.character(0), some) - 4.0) < 1e-12);
  const std::vector<Elem> squares = {0, 1, 4, 4, 1};
  CHECK(std::abs(std::abs(char_sum(B, B.character(1), squares)) - std::sqrt(5.0)) < 1e-9);

  CharSummer summer(B);
  const std::vector<double> w = {0.5, -1.0, 2.0};
  const std::vector<Elem> xs = {1, 2, 1};
  const cd expect = 0.5 * B.value(B.character(3), 1) - B.value(B.character(3), 2) + 2.0 * B.value(B.character(3), 1);
  CHECK(std::abs(summer.sum(B.character(3), xs, w) - expect) < 1e-12);
}

TEST_CASE("orthogonality over the catalog") {
  for (const char* s : test::catalog()) {
    CAPTURE(std::string(s));
    AdditiveBasis B(make_ring(s));
    std::vector<Elem> all(B.ring().order());
    for (Elem x = 0; x < all.size(); ++x) all[x] = x;
    double worst = 0.0;
    for (std::uint64_t i = 1; i < B.character_count(); ++i) worst = std::max(worst, std::abs(char_sum(B, B.character(i), all)));
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("angles are additive") {
  std::mt19937_64 rng(7);
  for (const char* s : test::catalog()) {
    CAPTURE(std::string(s));
    auto R = make_ring(s);
    AdditiveBasis B(R);
    std::uniform_int_distribution<std::uint64_t> pick(0, R->order() - 1);
    bool ok = true;
    for (int t = 0; t < 1000 && ok; ++t) {
      const auto chi = B.character(pick(rng));
      const Elem x = static_cast<Elem>(pick(rng)), y = static_cast<Elem>(pick(rng));
      ok = B.angle(chi, R->add(x, y)) == (B.angle(chi, x) + B.angle(chi, y)) % B.angle_lcm();
    }
    CHECK(ok);

    std::vector<std::uint32_t> table;
    const auto chi = B.character(pick(rng));
    B.angle_table(chi, table);
    bool same = true;
    for (Elem x = 0; x < R->order(); ++x) same = same && table[x] == B.angle(chi, x);
    CHECK(same);
  }
}

TEST_CASE("Parseval") {
  std::mt19937_64 rng(11);
  for (const char* s : {"Z/12", "Z/13", "GF(9)", "GF(16)", "PQ(q=2;g=0,0,1)", "GR(3,2,2)", "prod(Z/3;GF(4))", "Z/64"}) {
    CAPTURE(std::string(s));
    AdditiveBasis B(make_ring(s));
    const std::size_t n = B.ring().order();
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      const auto f = test::random_vector(n, rng);
      const auto fh = fourier_transform(B, f);
      double lhs = 0.0, rhs = 0.0;
      for (const auto& z : fh) lhs += std::norm(z);
      for (const auto& z : f) rhs += std::norm(z);
      rhs /= static_cast<double>(n);
      worst = std::max(worst, std::abs(lhs - rhs) / rhs);
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("annihilator duality on value subgroups") {
  for (const char* s : test::catalog()) {
    CAPTURE(std::string(s));
    auto R = make_ring(s);
    AdditiveBasis B(R);
    for (const auto& gens : std::vector<std::vector<Elem>>{{}, {1}, {R->from_int(2)}, {static_cast<Elem>(R->order() - 1)}}) {
      const auto H = SubgroupSet::generated_by(*R, gens);
      CHECK(annihilator(B, H).size() * H.size() == R->order());
    }
  }
}
