#include "fpir/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>

#include "fpir/numtheory.hpp"
#include "fpir/subgroup.hpp"

namespace fpir {

namespace {

std::vector<char> membership(const Ring& R, std::span<const Elem> set) {
  std::vector<char> in(R.order(), 0);
  for (Elem x : set) {
    if (!R.contains(x)) fail(ErrorKind::InvalidArgument, "set element out of range");
    in[x] = 1;
  }
  return in;
}

std::size_t distinct_count(const std::vector<char>& in) {
  return static_cast<std::size_t>(std::count(in.begin(), in.end(), 1));
}

}  // namespace

ConfigCount config_count(const Ring& R, std::span<const Elem> values, std::span<const Elem> A,
                         std::span<const Elem> B) {
  const auto inA = membership(R, A);
  const auto inB = membership(R, B);
  ConfigCount cc;
  cc.a_size = distinct_count(inA);
  cc.b_size = distinct_count(inB);
  for (std::uint64_t x = 0; x < R.order(); ++x) {
    if (!inA[x]) continue;
    for (Elem v : values) cc.count += inB[R.add(static_cast<Elem>(x), v)];
  }
  cc.expectation = static_cast<double>(cc.a_size) * static_cast<double>(cc.b_size);
  cc.deviation = static_cast<double>(cc.count) - cc.expectation;
  if (cc.a_size > 0 && cc.b_size > 0) {
    cc.normalized_deviation = std::abs(cc.deviation) / (std::sqrt(cc.expectation) * static_cast<double>(R.order()));
  }
  return cc;
}

ConfigCount config_count(const Ring& R, const Polynomial& P, std::span<const Elem> A, std::span<const Elem> B) {
  const auto values = eval_all(R, P);
  return config_count(R, values, A, B);
}

namespace {

// Forbidden differences {+-P(x)} \ {0} as a membership table.
std::vector<char> forbidden_differences(const Ring& R, const Polynomial& P) {
  std::vector<char> d(R.order(), 0);
  for (Elem v : eval_all(R, P)) {
    d[v] = 1;
    d[R.neg(v)] = 1;
  }
  d[0] = 0;
  return d;
}

class IndependentSetSearch {
 public:
  IndependentSetSearch(std::vector<std::uint64_t> adj, std::uint64_t budget)
      : adj_(std::move(adj)), budget_(budget) {}

  std::uint64_t run(std::uint64_t all) {
    best_ = 0;
    best_size_ = 0;
    expand(all, 0, 0);
    return best_;
  }
  std::uint64_t nodes() const { return nodes_; }

 private:
  // Number of cliques in a greedy clique cover of `cand`; an independent set
  // takes at most one vertex from each.
  int cover_bound(std::uint64_t cand) const {
    int cliques = 0;
    while (cand) {
      std::uint64_t pool = cand;
      while (pool) {
        const int v = std::countr_zero(pool);
        cand &= ~(std::uint64_t{1} << v);
        pool &= adj_[v];
        pool &= cand;
      }
      ++cliques;
    }
    return cliques;
  }

  void expand(std::uint64_t cand, std::uint64_t chosen, int size) {
    if (++nodes_ > budget_) fail(ErrorKind::WorkGuardExceeded, "independent set search exceeds work budget");
    if (cand == 0) {
      if (size > best_size_) {
        best_size_ = size;
        best_ = chosen;
      }
      return;
    }
    if (size + cover_bound(cand) <= best_size_) return;
    // Branch on the candidate with the most neighbours among candidates.
    int pick = -1, deg = -1;
    for (std::uint64_t c = cand; c; c &= c - 1) {
      const int v = std::countr_zero(c);
      const int d = std::popcount(adj_[v] & cand);
      if (d > deg) {
        deg = d;
        pick = v;
      }
    }
    const std::uint64_t bit = std::uint64_t{1} << pick;
    expand(cand & ~bit & ~adj_[pick], chosen | bit, size + 1);
    if (deg > 0) expand(cand & ~bit, chosen, size);
  }

  std::vector<std::uint64_t> adj_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::uint64_t best_ = 0;
  int best_size_ = 0;
};

}  // namespace

DifferenceFreeResult difference_free_max(const Ring& R, const Polynomial& P, SearchMode mode, std::uint64_t seed,
                                         const Limits& limits) {
  const std::uint64_t n = R.order();
  const auto D = forbidden_differences(R, P);
  DifferenceFreeResult res;
  res.seed = seed;
  if (mode == SearchMode::Exact) {
    if (n > 64) fail(ErrorKind::WorkGuardExceeded, "exact difference-free search needs |R| <= 64");
    std::vector<std::uint64_t> adj(n, 0);
    for (std::uint64_t a = 0; a < n; ++a) {
      for (std::uint64_t b = 0; b < n; ++b) {
        if (D[R.sub(static_cast<Elem>(b), static_cast<Elem>(a))]) adj[a] |= std::uint64_t{1} << b;
      }
    }
    IndependentSetSearch search(adj, limits.work_budget);
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    const std::uint64_t best = search.run(all);
    for (std::uint64_t v = 0; v < n; ++v) {
      if ((best >> v) & 1U) res.witness.push_back(static_cast<Elem>(v));
    }
    res.exact = true;
    res.nodes = search.nodes();
  } else {
    std::vector<Elem> diffs;
    for (std::uint64_t d = 0; d < n; ++d) {
      if (D[d]) diffs.push_back(static_cast<Elem>(d));
    }
    require_work(n * (diffs.size() + 1), limits, "greedy difference-free search");
    // Cayley graphs are regular, so a max-degree-last order reduces to a
    // seeded shuffle.
    std::vector<Elem> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<char> taken(n, 0);
    for (Elem a : order) {
      bool ok = true;
      for (Elem d : diffs) {
        if (taken[R.add(a, d)]) {
          ok = false;
          break;
        }
      }
      if (ok) {
        taken[a] = 1;
        res.witness.push_back(a);
      }
    }
    std::sort(res.witness.begin(), res.witness.end());
  }
  res.size = res.witness.size();
  return res;
}

bool is_difference_free(const Ring& R, const Polynomial& P, std::span<const Elem> set) {
  std::vector<char> is_value(R.order(), 0);
  for (Elem v : eval_all(R, P)) is_value[v] = 1;
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = 0; j < set.size(); ++j) {
      if (set[i] == set[j]) continue;
      if (is_value[R.sub(set[j], set[i])]) return false;
    }
  }
  return true;
}

SarkozyBound sarkozy_bound_check(const Ring& R, const Polynomial& P, std::size_t measured, const Limits& limits) {
  if (P.is_constant()) fail(ErrorKind::InvalidArgument, "Sarkozy bound requires a nonconstant polynomial");
  SarkozyBound sb;
  const auto values = eval_all(R, P);
  sb.has_root = std::find(values.begin(), values.end(), Elem{0}) != values.end();
  sb.constant_in_subgroup = value_subgroup_from_values(R, values, P.constant_term(), true).contains(P.constant_term());
  if (!sb.has_root && !sb.constant_in_subgroup) {
    fail(ErrorKind::HypothesisUnmet, "P has no root in " + R.spec() + " and P(0) is outside the difference subgroup");
  }
  const auto kd = derivational_degree_auto(R, P, limits);
  sb.k = kd.value;
  sb.conservative = kd.is_bound;
  sb.degree = P.degree();
  sb.lpf = R.lpf();
  const double b = static_cast<double>(b_constant(static_cast<std::uint64_t>(sb.degree), R.characteristic()));
  const double root = 1.0 / std::ldexp(1.0, static_cast<int>(sb.k) - 1);
  const double n = static_cast<double>(R.order());
  const double lpf = static_cast<double>(sb.lpf);
  sb.c = std::pow(b * (sb.k - 1.0), root);
  sb.bound = sb.c * n * std::pow(lpf, -root) + sb.degree * n / lpf;
  sb.measured = measured;
  sb.satisfied = static_cast<double>(measured) <= sb.bound + 1e-9;
  return sb;
}

std::string_view to_string(IntersectStatus s) {
  return s == IntersectStatus::WitnessFound ? "WITNESS_FOUND" : "INTERSECTIVE_UP_TO_BOUND";
}

namespace {

std::uint64_t eval_mod(std::span<const std::int64_t> P, std::uint64_t x, std::uint64_t m) {
  std::uint64_t acc = 0;
  for (std::size_t i = P.size(); i-- > 0;) {
    const std::int64_t c = P[i] % static_cast<std::int64_t>(m);
    const std::uint64_t cm = c < 0 ? static_cast<std::uint64_t>(c + static_cast<std::int64_t>(m)) : static_cast<std::uint64_t>(c);
    acc = (nt::mulmod(acc, x, m) + cm) % m;
  }
  return acc;
}

std::vector<std::int64_t> derivative(std::span<const std::int64_t> P) {
  std::vector<std::int64_t> d;
  for (std::size_t i = 1; i < P.size(); ++i) d.push_back(P[i] * static_cast<std::int64_t>(i));
  return d;
}

std::string power_label(const std::string& base, unsigned j) {
  return j == 1 ? base : base + "^" + std::to_string(j);
}

}  // namespace

IntersectivityVerdict intersectivity_integers(std::span<const std::int64_t> P0, std::uint64_t bound,
                                              const Limits& limits) {
  std::vector<std::int64_t> P(P0.begin(), P0.end());
  while (!P.empty() && P.back() == 0) P.pop_back();
  if (P.size() < 2) fail(ErrorKind::InvalidArgument, "intersectivity requires a nonconstant polynomial");
  if (bound < 2) fail(ErrorKind::InvalidArgument, "bound must be at least 2");
  if (bound > (std::uint64_t{1} << 31)) fail(ErrorKind::InvalidArgument, "bound too large");
  const auto dP = derivative(P);
  const std::uint64_t cap = bound * bound;
  IntersectivityVerdict v;
  std::uint64_t work = 0;
  std::optional<std::uint64_t> best;

  for (std::uint64_t p = 2; p <= bound; ++p) {
    if (!nt::is_prime(p)) continue;
    if (best && p >= *best) break;
    work += p;
    require_work(work, limits, "intersectivity sweep");
    std::vector<std::uint64_t> roots;
    bool simple = false;
    for (std::uint64_t x = 0; x < p; ++x) {
      if (eval_mod(P, x, p) == 0) {
        roots.push_back(x);
        if (eval_mod(dP, x, p) != 0) simple = true;
      }
    }
    ++v.moduli_checked;
    if (roots.empty()) {
      best = std::min(best.value_or(p), p);
      continue;
    }
    if (simple) continue;
    // Only singular roots: lift exhaustively.
    std::uint64_t m = p;
    unsigned j = 1;
    while (m <= cap / p) {
      const std::uint64_t next = m * p;
      if (best && next >= *best) break;
      std::vector<std::uint64_t> lifted;
      for (std::uint64_t r : roots) {
        for (std::uint64_t t = 0; t < p; ++t) {
          const std::uint64_t x = r + t * m;
          if (eval_mod(P, x, next) == 0) lifted.push_back(x);
        }
      }
      work += roots.size() * p;
      require_work(work, limits, "intersectivity sweep");
      ++v.moduli_checked;
      m = next;
      ++j;
      if (lifted.empty()) {
        best = m;
        break;
      }
      roots = std::move(lifted);
    }
  }

  v.bound_checked = "primes <= " + std::to_string(bound) + ", prime powers <= " + std::to_string(cap);
  if (best) {
    v.status = IntersectStatus::WitnessFound;
    IntersectWitness w;
    const auto pp = nt::prime_power(*best);
    w.prime = pp->first;
    w.power = pp->second;
    w.modulus = power_label(std::to_string(w.prime), w.power);
    w.quotient_order = *best;
    require_work(*best, limits, "witness verification");
    w.verified = true;
    for (std::uint64_t x = 0; x < *best; ++x) {
      if (eval_mod(P, x, *best) == 0) {
        w.verified = false;
        break;
      }
    }
    v.witness = std::move(w);
  }
  return v;
}

namespace {

Elem embed_fpt(const Ring& Q, const Ring& base, const upoly::Poly& mod, const std::vector<std::int64_t>& c,
               std::uint64_t p) {
  upoly::Poly a;
  for (std::int64_t x : c) {
    std::int64_t r = x % static_cast<std::int64_t>(p);
    if (r < 0) r += static_cast<std::int64_t>(p);
    a.push_back(static_cast<Elem>(r));
  }
  upoly::trim(base, a);
  a = upoly::rem_monic(base, std::move(a), mod);
  std::uint64_t idx = 0, place = 1;
  for (Elem d : a) {
    idx += d * place;
    place *= p;
  }
  if (!Q.contains(idx)) fail(ErrorKind::InvalidArgument, "coefficient embedding out of range");
  return static_cast<Elem>(idx);
}

}  // namespace

IntersectivityVerdict intersectivity_fpt(std::uint64_t p, const std::vector<std::vector<std::int64_t>>& P0,
                                         unsigned bound, const Limits& limits) {
  if (!nt::is_prime(p)) fail(ErrorKind::InvalidArgument, "F_p[t] needs a prime p");
  if (bound < 1) fail(ErrorKind::InvalidArgument, "bound must be at least 1");
  auto is_zero_coeff = [p](const std::vector<std::int64_t>& c) {
    return std::all_of(c.begin(), c.end(), [p](std::int64_t x) { return x % static_cast<std::int64_t>(p) == 0; });
  };
  std::vector<std::vector<std::int64_t>> P = P0;
  while (!P.empty() && is_zero_coeff(P.back())) P.pop_back();
  if (P.size() < 2) fail(ErrorKind::InvalidArgument, "intersectivity requires a nonconstant polynomial");

  const RingPtr base = Ring::galois_field(p, 1, std::nullopt, limits);
  IntersectivityVerdict v;
  std::uint64_t work = 0;
  struct Found {
    std::uint64_t order;
    upoly::Poly g;
    unsigned j;
  };
  std::optional<Found> best;

  for (unsigned e = 1; e <= bound; ++e) {
    const auto count = nt::checked_pow(p, e, limits.work_budget);
    if (!count) fail(ErrorKind::WorkGuardExceeded, "too many candidate irreducibles");
    for (std::uint64_t code = 0; code < *count; ++code) {
      upoly::Poly g(e + 1);
      std::uint64_t c = code;
      for (unsigned i = 0; i < e; ++i) {
        g[i] = static_cast<Elem>(c % p);
        c /= p;
      }
      g[e] = 1;
      if (!upoly::is_irreducible(*base, g)) continue;

      upoly::Poly gj = g;
      for (unsigned j = 1; j * e <= 2 * bound; ++j) {
        if (j > 1) gj = upoly::mul(*base, gj, g);
        const auto order = nt::checked_pow(p, j * e, limits.max_order);
        if (!order) break;
        if (best && *order >= best->order) break;
        const RingPtr Q = Ring::poly_quotient(base, gj, limits);
        std::vector<Elem> coeffs;
        for (const auto& ci : P) coeffs.push_back(embed_fpt(*Q, *base, gj, ci, p));
        const Polynomial PQ = make_polynomial(*Q, coeffs);
        const Polynomial dPQ = [&] {
          std::vector<Elem> d;
          for (std::size_t i = 1; i < coeffs.size(); ++i) d.push_back(Q->scale(coeffs[i], static_cast<std::int64_t>(i)));
          return make_polynomial(*Q, d);
        }();
        work += Q->order();
        require_work(work, limits, "intersectivity sweep");
        ++v.moduli_checked;
        bool any = false, simple = false;
        for (std::uint64_t x = 0; x < Q->order(); ++x) {
          if (eval(*Q, PQ, static_cast<Elem>(x)) == 0) {
            any = true;
            if (Q->is_unit(eval(*Q, dPQ, static_cast<Elem>(x)))) {
              simple = true;
              break;
            }
          }
        }
        if (!any) {
          best = Found{Q->order(), g, j};
          break;
        }
        if (simple) break;
      }
    }
  }

  v.bound_checked = "monic irreducible g with deg g <= " + std::to_string(bound) + ", g^j with deg <= " +
                    std::to_string(2 * bound);
  if (best) {
    v.status = IntersectStatus::WitnessFound;
    IntersectWitness w;
    w.prime = p;
    w.power = best->j;
    w.quotient_order = best->order;
    std::string label = "(";
    for (std::size_t i = 0; i < best->g.size(); ++i) {
      if (i) label += ',';
      label += std::to_string(best->g[i]);
      w.g.push_back(best->g[i]);
    }
    label += ")";
    w.modulus = power_label(label, best->j);
    // Re-check the whole quotient independently of the sweep.
    upoly::Poly gj = best->g;
    for (unsigned j = 1; j < best->j; ++j) gj = upoly::mul(*base, gj, best->g);
    const RingPtr Q = Ring::poly_quotient(base, gj, limits);
    std::vector<Elem> coeffs;
    for (const auto& ci : P) coeffs.push_back(embed_fpt(*Q, *base, gj, ci, p));
    const Polynomial PQ = make_polynomial(*Q, coeffs);
    w.verified = true;
    for (std::uint64_t x = 0; x < Q->order(); ++x) {
      if (eval(*Q, PQ, static_cast<Elem>(x)) == 0) {
        w.verified = false;
        break;
      }
    }
    v.witness = std::move(w);
  }
  return v;
}

}  // namespace fpir
