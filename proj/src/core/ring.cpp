#include "fpir/ring.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "fpir/numtheory.hpp"

namespace fpir {

namespace {

std::string join_coeffs(std::span<const Elem> c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c[i]);
  }
  return s;
}

void check_order(std::uint64_t order, const Limits& limits, std::string_view what) {
  if (order > limits.max_order) {
    fail(ErrorKind::OrderTooLarge, std::string(what) + ": order " + std::to_string(order) +
                                       " exceeds limit " + std::to_string(limits.max_order));
  }
}

std::uint64_t checked_order(std::uint64_t base, unsigned exp, const Limits& limits,
                            std::string_view what) {
  auto o = nt::checked_pow(base, exp, limits.max_order);
  if (!o) {
    fail(ErrorKind::OrderTooLarge, std::string(what) + ": order " + std::to_string(base) + "^" +
                                       std::to_string(exp) + " exceeds limit " +
                                       std::to_string(limits.max_order));
  }
  return *o;
}

void check_monic(const Ring& base, std::span<const Elem> f, std::string_view what) {
  for (Elem c : f) {
    if (!base.contains(c)) {
      fail(ErrorKind::InvalidArgument, std::string(what) + ": coefficient " + std::to_string(c) +
                                           " is not an element of " + base.spec());
    }
  }
  if (f.size() < 2) fail(ErrorKind::InvalidArgument, std::string(what) + ": degree must be >= 1");
  if (f.back() != base.one()) fail(ErrorKind::NotMonic, std::string(what) + " is not monic");
}

}  // namespace

std::string_view to_string(RingKind kind) {
  switch (kind) {
    case RingKind::ZMod: return "ZMod";
    case RingKind::GaloisField: return "GF";
    case RingKind::PolyQuotient: return "PolyQuotient";
    case RingKind::GaloisRing: return "GaloisRing";
    case RingKind::Product: return "Product";
  }
  return "?";
}

bool Characteristic::is_prime() const { return !is_infinite() && nt::is_prime(value_); }

// ---------------------------------------------------------------------------
// Factories

RingPtr Ring::zmod(std::uint64_t n, const Limits& limits) {
  if (n < 2) fail(ErrorKind::InvalidArgument, "Z/N requires N >= 2");
  check_order(n, limits, "Z/" + std::to_string(n));
  auto r = std::shared_ptr<Ring>(new Ring());
  r->kind_ = RingKind::ZMod;
  r->n_ = n;
  r->order_ = n;
  r->characteristic_ = Characteristic(n);
  r->spec_ = "Z/" + std::to_string(n);
  r->one_ = 1;
  r->digit_radix_ = static_cast<std::uint32_t>(n);
  r->digit_count_ = 1;
  r->coords_ = {{1, static_cast<std::uint32_t>(n)}};
  auto f = nt::factorize(n);
  r->prime_ = f.size() == 1 ? f.front().first : 0;
  for (auto [p, e] : f) {
    r->residues_.push_back({f.size() == 1 && e == 1 ? nullptr : zmod(p), p, e});
  }
  return r;
}

RingPtr Ring::galois_field(std::uint64_t p, unsigned e, std::optional<std::vector<Elem>> h,
                           const Limits& limits) {
  if (!nt::is_prime(p)) fail(ErrorKind::InvalidArgument, "GF: " + std::to_string(p) + " is not prime");
  if (e < 1) fail(ErrorKind::InvalidArgument, "GF: extension degree must be >= 1");
  const std::uint64_t q = checked_order(p, e, limits, "GF");
  auto prime_field = zmod(p, limits);
  std::vector<Elem> poly;
  const bool explicit_h = h.has_value();
  if (h) {
    poly = std::move(*h);
    check_monic(*prime_field, poly, "GF defining polynomial h");
    if (poly.size() != e + 1) {
      fail(ErrorKind::InvalidArgument, "GF(" + std::to_string(q) + "): h must have degree " +
                                           std::to_string(e));
    }
    if (!upoly::is_irreducible(*prime_field, poly)) {
      fail(ErrorKind::NotIrreducible, "GF defining polynomial h=" + join_coeffs(poly) +
                                          " is reducible mod " + std::to_string(p));
    }
  } else {
    poly = upoly::smallest_monic_irreducible(*prime_field, e);
  }
  auto r = std::shared_ptr<Ring>(new Ring());
  r->kind_ = RingKind::GaloisField;
  r->order_ = q;
  r->characteristic_ = Characteristic(p);
  r->prime_ = p;
  r->base_ = prime_field;
  r->base_order_ = p;
  r->degree_ = e;
  r->modulus_ = poly;
  r->one_ = 1;
  const bool is_default = !explicit_h || poly == upoly::smallest_monic_irreducible(*prime_field, e);
  r->spec_ = "GF(" + std::to_string(q) + (is_default ? ")" : ";h=" + join_coeffs(poly) + ")");
  r->finish_coordinates();
  r->residues_.push_back({nullptr, q, 1});
  return r;
}

RingPtr Ring::poly_quotient(RingPtr base, std::vector<Elem> g, const Limits& limits) {
  if (!base) fail(ErrorKind::InvalidArgument, "PQ: missing base field");
  const bool base_is_field = base->kind() == RingKind::GaloisField ||
                             (base->kind() == RingKind::ZMod && nt::is_prime(base->order()));
  if (!base_is_field) fail(ErrorKind::InvalidArgument, "PQ: base " + base->spec() + " is not a field");
  check_monic(*base, g, "PQ modulus g");
  const unsigned m = static_cast<unsigned>(g.size() - 1);
  const std::uint64_t order = checked_order(base->order(), m, limits, "PQ");
  auto r = std::shared_ptr<Ring>(new Ring());
  r->kind_ = RingKind::PolyQuotient;
  r->order_ = order;
  r->characteristic_ = base->characteristic();
  r->prime_ = base->characteristic().value();
  r->base_ = base;
  r->base_order_ = base->order();
  r->degree_ = m;
  r->modulus_ = g;
  r->one_ = 1;
  r->spec_ = "PQ(q=" + std::to_string(base->order()) + ";g=" + join_coeffs(g) + ")";
  if (base->kind() != RingKind::ZMod && base->order() <= 1024) {
    const auto b = base->order();
    r->base_mul_table_.resize(b * b);
    for (std::uint64_t i = 0; i < b; ++i) {
      for (std::uint64_t j = 0; j < b; ++j) {
        r->base_mul_table_[i * b + j] = base->mul(static_cast<Elem>(i), static_cast<Elem>(j));
      }
    }
  }
  r->finish_coordinates();
  auto factors = upoly::factor(*base, g);
  const bool is_field = factors.size() == 1 && factors.front().second == 1;
  for (auto& [f, mult] : factors) {
    const std::uint64_t size = *nt::checked_pow(base->order(), static_cast<unsigned>(f.size() - 1));
    r->residues_.push_back({is_field ? nullptr : poly_quotient(base, f, limits), size, mult});
    r->irreducible_factors_.push_back(f);
  }
  return r;
}

RingPtr Ring::galois_ring(std::uint64_t p, unsigned n, unsigned r_deg,
                          std::optional<std::vector<Elem>> f, const Limits& limits) {
  if (!nt::is_prime(p)) fail(ErrorKind::InvalidArgument, "GR: " + std::to_string(p) + " is not prime");
  if (n < 1 || r_deg < 1) fail(ErrorKind::InvalidArgument, "GR: n and r must be >= 1");
  const std::uint64_t pn = checked_order(p, n, limits, "GR");
  const std::uint64_t order = checked_order(pn, r_deg, limits, "GR");
  auto coeff_ring = zmod(pn, limits);
  auto prime_field = zmod(p, limits);
  std::vector<Elem> poly;
  const auto default_poly = upoly::smallest_monic_irreducible(*prime_field, r_deg);
  if (f) {
    poly = std::move(*f);
    check_monic(*coeff_ring, poly, "GR defining polynomial f");
    if (poly.size() != r_deg + 1) {
      fail(ErrorKind::InvalidArgument, "GR: f must have degree " + std::to_string(r_deg));
    }
    std::vector<Elem> reduced(poly.size());
    std::transform(poly.begin(), poly.end(), reduced.begin(), [p](Elem c) { return static_cast<Elem>(c % p); });
    if (!upoly::is_irreducible(*prime_field, reduced)) {
      fail(ErrorKind::NotIrreducible, "GR defining polynomial f=" + join_coeffs(poly) +
                                          " is reducible mod " + std::to_string(p));
    }
  } else {
    poly = default_poly;
  }
  auto r = std::shared_ptr<Ring>(new Ring());
  r->kind_ = RingKind::GaloisRing;
  r->order_ = order;
  r->characteristic_ = Characteristic(pn);
  r->prime_ = p;
  r->base_ = coeff_ring;
  r->base_order_ = pn;
  r->degree_ = r_deg;
  r->modulus_ = poly;
  r->one_ = 1;
  r->spec_ = "GR(" + std::to_string(p) + "," + std::to_string(n) + "," + std::to_string(r_deg) +
             (poly == default_poly ? ")" : ";f=" + join_coeffs(poly) + ")");
  r->finish_coordinates();
  std::vector<Elem> reduced(poly.size());
  std::transform(poly.begin(), poly.end(), reduced.begin(), [p](Elem c) { return static_cast<Elem>(c % p); });
  const std::uint64_t residue_size = *nt::checked_pow(p, r_deg);
  r->residues_.push_back({n == 1 ? nullptr : galois_field(p, r_deg, reduced, limits), residue_size, n});
  return r;
}

RingPtr Ring::product(std::vector<RingPtr> factors, const Limits& limits) {
  if (factors.empty()) fail(ErrorKind::InvalidArgument, "prod: needs at least one factor");
  std::uint64_t order = 1;
  std::uint64_t ch = 1;
  for (const auto& f : factors) {
    if (!f) fail(ErrorKind::InvalidArgument, "prod: null factor");
    if (order > limits.max_order / f->order()) {
      fail(ErrorKind::OrderTooLarge, "prod: order exceeds limit " + std::to_string(limits.max_order));
    }
    order *= f->order();
    ch = nt::lcm(ch, f->characteristic().value());
  }
  check_order(order, limits, "prod");
  auto r = std::shared_ptr<Ring>(new Ring());
  r->kind_ = RingKind::Product;
  r->order_ = order;
  r->characteristic_ = Characteristic(ch);
  r->factors_ = factors;
  r->strides_.assign(factors.size(), 1);
  for (std::size_t i = factors.size(); i-- > 1;) r->strides_[i - 1] = r->strides_[i] * factors[i]->order();
  r->spec_ = "prod(";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) r->spec_ += ';';
    r->spec_ += factors[i]->spec();
  }
  r->spec_ += ")";
  std::vector<Elem> ones;
  for (const auto& f : factors) ones.push_back(f->one());
  r->one_ = r->join(ones);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (const auto& c : factors[i]->coordinates()) {
      r->coords_.push_back({c.stride * r->strides_[i], c.modulus});
    }
    const auto& fr = factors[i]->residue_fields();
    for (const auto& res : fr) {
      r->residues_.push_back({res.field ? res.field : factors[i], res.size, res.multiplicity});
    }
  }
  return r;
}

void Ring::finish_coordinates() {
  // Polynomial-quotient variants: D coefficients, each a base element whose
  // own index is a fixed-radix digit string.
  const Ring& b = *base_;
  digit_radix_ = b.digit_radix_;
  digit_count_ = degree_ * b.digit_count_;
  std::uint64_t stride = 1;
  for (unsigned i = 0; i < digit_count_; ++i) {
    coords_.push_back({stride, digit_radix_});
    stride *= digit_radix_;
  }
}

// ---------------------------------------------------------------------------
// Arithmetic

std::vector<Elem> Ring::split(Elem x) const {
  std::vector<Elem> parts(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    parts[i] = static_cast<Elem>((x / strides_[i]) % factors_[i]->order());
  }
  return parts;
}

Elem Ring::join(std::span<const Elem> parts) const {
  std::uint64_t x = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) x += parts[i] * strides_[i];
  return static_cast<Elem>(x);
}

Elem Ring::add(Elem a, Elem b) const {
  switch (kind_) {
    case RingKind::ZMod: {
      std::uint64_t s = std::uint64_t{a} + b;
      return static_cast<Elem>(s >= n_ ? s - n_ : s);
    }
    case RingKind::Product: {
      std::uint64_t x = 0;
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        const auto o = factors_[i]->order();
        const auto ai = static_cast<Elem>((a / strides_[i]) % o);
        const auto bi = static_cast<Elem>((b / strides_[i]) % o);
        x += factors_[i]->add(ai, bi) * strides_[i];
      }
      return static_cast<Elem>(x);
    }
    default: {
      if (digit_radix_ == 2) return a ^ b;
      const std::uint32_t r = digit_radix_;
      std::uint64_t out = 0, place = 1;
      while (a != 0 || b != 0) {
        std::uint32_t s = a % r + b % r;
        if (s >= r) s -= r;
        out += s * place;
        place *= r;
        a /= r;
        b /= r;
      }
      return static_cast<Elem>(out);
    }
  }
}

Elem Ring::neg(Elem a) const {
  switch (kind_) {
    case RingKind::ZMod: return a == 0 ? 0 : static_cast<Elem>(n_ - a);
    case RingKind::Product: {
      std::uint64_t x = 0;
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        const auto ai = static_cast<Elem>((a / strides_[i]) % factors_[i]->order());
        x += factors_[i]->neg(ai) * strides_[i];
      }
      return static_cast<Elem>(x);
    }
    default: {
      if (digit_radix_ == 2) return a;
      const std::uint32_t r = digit_radix_;
      std::uint64_t out = 0, place = 1;
      while (a != 0) {
        const std::uint32_t d = a % r;
        out += (d == 0 ? 0 : r - d) * place;
        place *= r;
        a /= r;
      }
      return static_cast<Elem>(out);
    }
  }
}

Elem Ring::base_mul(Elem a, Elem b) const {
  if (base_->kind_ == RingKind::ZMod) return static_cast<Elem>(std::uint64_t{a} * b % base_order_);
  if (!base_mul_table_.empty()) return base_mul_table_[a * base_order_ + b];
  return base_->mul(a, b);
}

Elem Ring::poly_mul(Elem a, Elem b) const {
  const unsigned D = degree_;
  const std::uint64_t q = base_order_;
  std::array<Elem, 32> ca{}, cb{};
  for (unsigned i = 0; i < D; ++i) {
    ca[i] = static_cast<Elem>(a % q);
    cb[i] = static_cast<Elem>(b % q);
    a = static_cast<Elem>(a / q);
    b = static_cast<Elem>(b / q);
  }
  std::array<std::uint64_t, 64> t{};
  if (base_->kind_ == RingKind::ZMod) {
    for (unsigned i = 0; i < D; ++i) {
      if (ca[i] == 0) continue;
      for (unsigned j = 0; j < D; ++j) t[i + j] += std::uint64_t{ca[i]} * cb[j] % q;
    }
    for (unsigned i = 0; i + 1 < 2 * D; ++i) t[i] %= q;
    for (unsigned i = 2 * D - 1; i-- > D;) {
      const std::uint64_t c = t[i];
      if (c == 0) continue;
      for (unsigned j = 0; j < D; ++j) {
        t[i - D + j] = (t[i - D + j] + c * (q - modulus_[j] % q)) % q;
      }
    }
  } else {
    const Ring& base = *base_;
    for (unsigned i = 0; i < D; ++i) {
      if (ca[i] == 0) continue;
      for (unsigned j = 0; j < D; ++j) {
        t[i + j] = base.add(static_cast<Elem>(t[i + j]), base_mul(ca[i], cb[j]));
      }
    }
    for (unsigned i = 2 * D - 1; i-- > D;) {
      const auto c = static_cast<Elem>(t[i]);
      if (c == 0) continue;
      for (unsigned j = 0; j < D; ++j) {
        t[i - D + j] = base.sub(static_cast<Elem>(t[i - D + j]), base_mul(c, modulus_[j]));
      }
    }
  }
  std::uint64_t out = 0, place = 1;
  for (unsigned i = 0; i < D; ++i) {
    out += t[i] * place;
    place *= q;
  }
  return static_cast<Elem>(out);
}

Elem Ring::mul(Elem a, Elem b) const {
  switch (kind_) {
    case RingKind::ZMod: return static_cast<Elem>(std::uint64_t{a} * b % n_);
    case RingKind::Product: {
      std::uint64_t x = 0;
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        const auto o = factors_[i]->order();
        const auto ai = static_cast<Elem>((a / strides_[i]) % o);
        const auto bi = static_cast<Elem>((b / strides_[i]) % o);
        x += factors_[i]->mul(ai, bi) * strides_[i];
      }
      return static_cast<Elem>(x);
    }
    default: return poly_mul(a, b);
  }
}

Elem Ring::pow(Elem a, std::uint64_t e) const {
  Elem result = one_;
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    e >>= 1;
    if (e) a = mul(a, a);
  }
  return result;
}

Elem Ring::from_int(std::int64_t n) const {
  switch (kind_) {
    case RingKind::ZMod: {
      const auto m = static_cast<std::int64_t>(n_);
      return static_cast<Elem>(((n % m) + m) % m);
    }
    case RingKind::Product: {
      std::vector<Elem> parts;
      for (const auto& f : factors_) parts.push_back(f->from_int(n));
      return join(parts);
    }
    default: return base_->from_int(n);
  }
}

Elem Ring::scale(Elem a, std::int64_t n) const {
  if (n < 0) return scale(neg(a), -n);
  Elem acc = 0;
  auto k = static_cast<std::uint64_t>(n);
  while (k > 0) {
    if (k & 1) acc = add(acc, a);
    k >>= 1;
    if (k) a = add(a, a);
  }
  return acc;
}

std::uint64_t Ring::additive_order(Elem a) const {
  std::uint64_t ord = 1;
  for (const auto& c : coords_) {
    const std::uint64_t ci = (a / c.stride) % c.modulus;
    ord = nt::lcm(ord, c.modulus / nt::gcd(ci, c.modulus));
  }
  return ord;
}

bool Ring::is_unit(Elem a) const {
  switch (kind_) {
    case RingKind::ZMod: return nt::gcd(a, n_) == 1;
    case RingKind::GaloisField: return a != 0;
    case RingKind::GaloisRing: {
      // Local ring with maximal ideal pR: units are the elements nonzero mod p.
      for (unsigned i = 0; i < degree_; ++i) {
        if ((a % base_order_) % prime_ != 0) return true;
        a = static_cast<Elem>(a / base_order_);
      }
      return false;
    }
    case RingKind::PolyQuotient: {
      upoly::Poly pa(degree_);
      for (unsigned i = 0; i < degree_; ++i) {
        pa[i] = static_cast<Elem>(a % base_order_);
        a = static_cast<Elem>(a / base_order_);
      }
      upoly::trim(*base_, pa);
      for (const auto& f : irreducible_factors_) {
        if (upoly::rem_monic(*base_, pa, f).empty()) return false;
      }
      return true;
    }
    case RingKind::Product: {
      const auto parts = split(a);
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (!factors_[i]->is_unit(parts[i])) return false;
      }
      return true;
    }
  }
  return false;
}

std::uint64_t Ring::units_count() const {
  // |R^x| = |R| * prod over prime ideals of (1 - 1/[R:p]).
  std::uint64_t u = order_;
  for (const auto& r : residues_) u = u / r.size * (r.size - 1);
  return u;
}

std::uint64_t Ring::lpf() const {
  std::uint64_t best = ~std::uint64_t{0};
  for (const auto& r : residues_) best = std::min(best, r.size);
  return best;
}

const Ring& Ring::residue_field(std::size_t i) const {
  const auto& r = residues_.at(i);
  return r.field ? *r.field : *this;
}

std::vector<std::pair<std::uint64_t, unsigned>> Ring::prime_ideal_profile() const {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (const auto& r : residues_) out.emplace_back(r.size, r.multiplicity);
  return out;
}

std::vector<std::uint32_t> Ring::coordinates_of(Elem x) const {
  std::vector<std::uint32_t> c(coords_.size());
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    c[i] = static_cast<std::uint32_t>((x / coords_[i].stride) % coords_[i].modulus);
  }
  return c;
}

Elem Ring::from_coordinates(std::span<const std::uint32_t> c) const {
  std::uint64_t x = 0;
  for (std::size_t i = 0; i < coords_.size(); ++i) x += (c[i] % coords_[i].modulus) * coords_[i].stride;
  return static_cast<Elem>(x);
}

// ---------------------------------------------------------------------------
// Polynomials over a base ring

namespace upoly {

void trim(const Ring&, Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly mul(const Ring& base, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = base.add(out[i + j], base.mul(a[i], b[j]));
  }
  trim(base, out);
  return out;
}

std::pair<Poly, Poly> divmod_monic(const Ring& base, Poly a, const Poly& b) {
  trim(base, a);
  const std::size_t n = b.size() - 1;
  if (a.size() <= n) return {{}, a};
  Poly q(a.size() - n, 0);
  for (std::size_t i = a.size(); i-- > n;) {
    const Elem c = a[i];
    if (c == 0) continue;
    q[i - n] = c;
    for (std::size_t j = 0; j <= n; ++j) a[i - n + j] = base.sub(a[i - n + j], base.mul(c, b[j]));
  }
  a.resize(n);
  trim(base, a);
  trim(base, q);
  return {q, a};
}

Poly rem_monic(const Ring& base, Poly a, const Poly& b) { return divmod_monic(base, std::move(a), b).second; }

namespace {

// k-th monic polynomial of the given degree in lexicographic order with the
// constant coefficient most significant.
Poly nth_monic(std::uint64_t idx, unsigned degree, std::uint64_t b) {
  Poly g(degree + 1, 0);
  g[degree] = 1;
  for (unsigned j = degree; j-- > 0;) {
    g[j] = static_cast<Elem>(idx % b);
    idx /= b;
  }
  return g;
}

}  // namespace

bool is_irreducible(const Ring& field, const Poly& f) {
  const std::size_t deg = f.size() - 1;
  if (f.size() < 2) return false;
  if (deg == 1) return true;
  const std::uint64_t b = field.order();
  for (unsigned k = 1; 2 * k <= deg; ++k) {
    const std::uint64_t count = *nt::checked_pow(b, k);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      if (rem_monic(field, f, nth_monic(idx, k, b)).empty()) return false;
    }
  }
  return true;
}

std::vector<std::pair<Poly, unsigned>> factor(const Ring& field, const Poly& f) {
  std::vector<std::pair<Poly, unsigned>> out;
  Poly cur = f;
  const std::uint64_t b = field.order();
  for (unsigned k = 1; 2 * k <= cur.size() - 1; ++k) {
    const std::uint64_t count = *nt::checked_pow(b, k);
    for (std::uint64_t idx = 0; idx < count && 2 * k <= cur.size() - 1; ++idx) {
      const Poly g = nth_monic(idx, k, b);
      unsigned mult = 0;
      for (;;) {
        auto [q, r] = divmod_monic(field, cur, g);
        if (!r.empty()) break;
        cur = std::move(q);
        ++mult;
      }
      if (mult > 0) out.emplace_back(g, mult);
    }
  }
  // Whatever survives has no factor of degree <= deg/2, so it is irreducible.
  if (cur.size() >= 2) out.emplace_back(cur, 1);
  return out;
}

Poly smallest_monic_irreducible(const Ring& field, unsigned degree) {
  const std::uint64_t b = field.order();
  const std::uint64_t count = *nt::checked_pow(b, degree);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Poly g = nth_monic(idx, degree, b);
    if (is_irreducible(field, g)) return g;
  }
  fail(ErrorKind::NotIrreducible, "no monic irreducible of degree " + std::to_string(degree));
}

}  // namespace upoly
}  // namespace fpir
