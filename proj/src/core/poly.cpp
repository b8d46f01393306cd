#include "fpir/poly.hpp"

#include <algorithm>
#include <charconv>
#include <functional>

#include "fpir/numtheory.hpp"

namespace fpir {

namespace {

void trim(Polynomial& P) {
  while (!P.coeffs.empty() && P.coeffs.back() == 0) P.coeffs.pop_back();
}

std::uint64_t char_modulus(const Ring& R) { return R.characteristic().value(); }

}  // namespace

BinomialTable::BinomialTable(unsigned max_n, std::uint64_t modulus)
    : max_n_(max_n), rows_(static_cast<std::size_t>(max_n + 1) * (max_n + 1), 0) {
  const std::uint64_t one = modulus == 1 ? 0 : 1;
  for (unsigned n = 0; n <= max_n; ++n) {
    rows_[n * (max_n + 1)] = one;
    for (unsigned k = 1; k <= n; ++k) {
      rows_[n * (max_n + 1) + k] =
          (rows_[(n - 1) * (max_n + 1) + k - 1] + (k <= n - 1 ? rows_[(n - 1) * (max_n + 1) + k] : 0)) % modulus;
    }
  }
}

Polynomial make_polynomial(const Ring& R, std::vector<Elem> coeffs) {
  for (Elem c : coeffs) {
    if (!R.contains(c)) {
      fail(ErrorKind::InvalidArgument, "coefficient " + std::to_string(c) + " is not an element of " + R.spec());
    }
  }
  Polynomial P{std::move(coeffs)};
  trim(P);
  return P;
}

Polynomial monomial(const Ring& R, unsigned d, Elem c) {
  std::vector<Elem> coeffs(d + 1, 0);
  coeffs[d] = c;
  return make_polynomial(R, std::move(coeffs));
}

Polynomial parse_polynomial(const Ring& R, std::string_view literal) {
  std::vector<Elem> coeffs;
  std::size_t start = 0;
  auto bad = [&](const std::string& why) -> void {
    fail(ErrorKind::ParseError, "polynomial '" + std::string(literal) + "': " + why);
  };
  if (literal.empty()) bad("empty");
  while (true) {
    const auto comma = literal.find(',', start);
    auto tok = literal.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (tok.empty()) bad("empty coefficient");
    if (tok.front() == '#') {
      std::uint64_t v = 0;
      auto [ptr, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.size() == 1) bad("bad index '" + std::string(tok) + "'");
      if (!R.contains(v)) bad("index " + std::to_string(v) + " out of range for " + R.spec());
      coeffs.push_back(static_cast<Elem>(v));
    } else {
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) bad("bad integer '" + std::string(tok) + "'");
      coeffs.push_back(R.from_int(v));
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return make_polynomial(R, std::move(coeffs));
}

std::string to_literal(const Polynomial& P) {
  if (P.is_zero()) return "#0";
  std::string s;
  for (std::size_t i = 0; i < P.coeffs.size(); ++i) {
    if (i) s += ',';
    s += '#' + std::to_string(P.coeffs[i]);
  }
  return s;
}

Elem eval(const Ring& R, const Polynomial& P, Elem x) {
  Elem acc = 0;
  for (std::size_t i = P.coeffs.size(); i-- > 0;) acc = R.add(R.mul(acc, x), P.coeffs[i]);
  return acc;
}

std::vector<Elem> eval_all(const Ring& R, const Polynomial& P) {
  std::vector<Elem> out(R.order());
  for (std::uint64_t x = 0; x < R.order(); ++x) out[x] = eval(R, P, static_cast<Elem>(x));
  return out;
}

Polynomial add(const Ring& R, const Polynomial& P, const Polynomial& Q) {
  Polynomial out;
  out.coeffs.resize(std::max(P.coeffs.size(), Q.coeffs.size()), 0);
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = R.add(P.coeff(i), Q.coeff(i));
  trim(out);
  return out;
}

Polynomial sub(const Ring& R, const Polynomial& P, const Polynomial& Q) {
  Polynomial out;
  out.coeffs.resize(std::max(P.coeffs.size(), Q.coeffs.size()), 0);
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = R.sub(P.coeff(i), Q.coeff(i));
  trim(out);
  return out;
}

Polynomial drop_constant(const Ring&, const Polynomial& P) {
  Polynomial out = P;
  if (!out.coeffs.empty()) out.coeffs[0] = 0;
  trim(out);
  return out;
}

Polynomial forward_difference(const Ring& R, const Polynomial& P, Elem n) {
  if (P.is_constant()) return {};
  const unsigned deg = static_cast<unsigned>(P.degree());
  const BinomialTable binom(deg, char_modulus(R));
  std::vector<Elem> npow(deg + 1);
  npow[0] = R.one();
  for (unsigned i = 1; i <= deg; ++i) npow[i] = R.mul(npow[i - 1], n);
  Polynomial out;
  out.coeffs.assign(deg, 0);
  for (unsigned d = 1; d <= deg; ++d) {
    const Elem a = P.coeffs[d];
    if (a == 0) continue;
    for (unsigned i = 0; i < d; ++i) {
      const Elem term = R.mul(a, npow[d - i]);
      out.coeffs[i] = R.add(out.coeffs[i], R.scale(term, static_cast<std::int64_t>(binom(d, i))));
    }
  }
  trim(out);
  return out;
}

std::uint64_t b_constant(std::uint64_t d, Characteristic c) {
  if (d == 0) fail(ErrorKind::InvalidArgument, "B(d,c) requires d >= 1");
  if (!c.is_prime()) return 1;
  const std::uint64_t p = c.value();
  std::uint64_t pm = 1;
  unsigned m = 0;
  while (pm <= d / p) {
    pm *= p;
    ++m;
  }
  return pm * pm;
}

namespace {

// Largest j such that some e0 >= 0 and parts e1..ej >= 1 summing to d have a
// multinomial coefficient that is nonzero modulo `order`.
unsigned max_difference_parts(unsigned d, std::uint64_t order, const BinomialTable& binom,
                               std::uint64_t& work, const Limits& limits) {
  int best = -1;
  // Parts are generated in nonincreasing order; acc is the running product of
  // binomials C(remaining, part) mod order.
  std::function<void(unsigned, unsigned, unsigned, std::uint64_t)> dfs =
      [&](unsigned rem, unsigned max_part, unsigned parts, std::uint64_t acc) {
        if (++work > limits.work_budget) {
          fail(ErrorKind::WorkGuardExceeded, "derivational degree: partition search exceeds work budget");
        }
        if (rem == 0) {
          if (acc % order != 0) best = std::max(best, static_cast<int>(parts));
          return;
        }
        if (static_cast<int>(parts + rem) <= best) return;
        for (unsigned part = 1; part <= std::min(rem, max_part); ++part) {
          const std::uint64_t next = nt::mulmod(acc, binom(rem, part), order);
          if (next == 0) continue;
          dfs(rem - part, part, parts + 1, next);
        }
      };
  for (unsigned e0 = 0; e0 < d; ++e0) {
    if (static_cast<int>(d - e0) <= best) break;
    const std::uint64_t start = binom(d, e0) % order;
    if (start == 0) continue;
    dfs(d - e0, d - e0, 0, start);
  }
  return best < 0 ? 0 : static_cast<unsigned>(best);
}

}  // namespace

DerivationalDegree derivational_degree(const Ring& R, const Polynomial& P, DerivationMode mode,
                                       const Limits& limits) {
  if (P.is_constant()) fail(ErrorKind::InvalidArgument, "derivational degree requires a nonconstant polynomial");
  const unsigned deg = static_cast<unsigned>(P.degree());
  DerivationalDegree out;
  out.mode = mode;
  if (mode == DerivationMode::DigitSumBound) {
    const auto c = R.characteristic();
    if (c.is_prime()) {
      for (unsigned d = 1; d <= deg; ++d) {
        if (P.coeffs[d] != 0) out.value = std::max(out.value, nt::digit_sum(d, c.value()));
      }
      out.is_bound = false;
    } else {
      out.value = deg;
      out.is_bound = true;
    }
    return out;
  }
  if (deg > 4096) fail(ErrorKind::WorkGuardExceeded, "derivational degree: degree too large for exact mode");
  require_work(static_cast<std::uint64_t>(deg + 1) * (deg + 1), limits, "derivational degree");
  const std::uint64_t ch = char_modulus(R);
  const BinomialTable binom(deg, ch);
  std::uint64_t work = 0;
  for (unsigned d = 1; d <= deg; ++d) {
    const Elem a = P.coeffs[d];
    if (a == 0) continue;
    const std::uint64_t ord = R.additive_order(a);
    if (ord == 1) continue;
    out.value = std::max(out.value, max_difference_parts(d, ord, binom, work, limits));
  }
  return out;
}

DerivationalDegree derivational_degree_auto(const Ring& R, const Polynomial& P, const Limits& limits) {
  try {
    return derivational_degree(R, P, DerivationMode::Exact, limits);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::WorkGuardExceeded) throw;
    auto k = derivational_degree(R, P, DerivationMode::DigitSumBound, limits);
    k.is_bound = true;
    return k;
  }
}

}  // namespace fpir
