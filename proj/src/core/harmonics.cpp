#include "fpir/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "fpir/kernels.hpp"

namespace fpir {

ValueProfile value_profile(const Ring& R, const Polynomial& P) {
  ValueProfile prof;
  prof.P = P;
  prof.constant = P.constant_term();
  prof.values = eval_all(R, P);
  std::vector<std::uint32_t> hist(R.order(), 0);
  for (Elem v : prof.values) ++hist[R.sub(v, prof.constant)];
  for (std::uint64_t w = 0; w < R.order(); ++w) {
    if (hist[w] != 0) {
      prof.support.push_back(static_cast<Elem>(w));
      prof.counts.push_back(hist[w]);
    }
  }
  return prof;
}

std::complex<double> exp_sum(const AdditiveBasis& basis, const Polynomial& P, const Character& chi) {
  const auto values = eval_all(basis.ring(), P);
  return char_sum(basis, chi, values) / static_cast<double>(basis.ring().order());
}

cvec centered_exp_sums(const AdditiveBasis& basis, const ValueProfile& profile) {
  CharSummer summer(basis);
  const double inv = 1.0 / static_cast<double>(basis.ring().order());
  cvec out(basis.character_count());
  for (std::uint64_t i = 0; i < out.size(); ++i) {
    out[i] = summer.sum(basis.character(i), profile.support, profile.counts) * inv;
  }
  return out;
}

FourierPlan::FourierPlan(const AdditiveBasis& basis, const Limits& limits)
    : basis_(basis), n_(basis.ring().order()) {
  require_work(static_cast<std::uint64_t>(n_) * n_, limits, "Fourier plan");
  conj_angles_.resize(n_ * n_);
  std::vector<std::uint32_t> row;
  const std::uint64_t L = basis.angle_lcm();
  for (std::size_t i = 0; i < n_; ++i) {
    basis.angle_table(basis.character(i), row);
    for (std::size_t x = 0; x < n_; ++x) conj_angles_[i * n_ + x] = row[x] == 0 ? 0 : static_cast<std::uint32_t>(L - row[x]);
  }
  hist_re_.assign(L, 0.0);
  hist_im_.assign(L, 0.0);
}

void FourierPlan::transform(std::span<const std::complex<double>> f, cvec& out) {
  if (f.size() != n_) fail(ErrorKind::InvalidArgument, "function table size does not match ring order");
  const auto& k = kernels::active();
  const auto& c = basis_.cos_table();
  const auto& s = basis_.sin_table();
  const double inv = 1.0 / static_cast<double>(n_);
  out.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::uint32_t* a = conj_angles_.data() + i * n_;
    for (std::size_t x = 0; x < n_; ++x) {
      hist_re_[a[x]] += f[x].real();
      hist_im_[a[x]] += f[x].imag();
    }
    const auto r = k.complex_phase_sum(hist_re_.data(), hist_im_.data(), c.data(), s.data(), hist_re_.size());
    out[i] = {r.re * inv, r.im * inv};
    std::fill(hist_re_.begin(), hist_re_.end(), 0.0);
    std::fill(hist_im_.begin(), hist_im_.end(), 0.0);
  }
}

ExpSumReport character_bound_check(const AdditiveBasis& basis, const Polynomial& P, const Limits& limits) {
  const Ring& R = basis.ring();
  if (P.is_constant()) fail(ErrorKind::InvalidArgument, "character bound requires a nonconstant polynomial");
  ExpSumReport rep;
  rep.ring = R.spec();
  rep.poly = to_literal(P);
  rep.degree = P.degree();
  const auto kd = derivational_degree_auto(R, P, limits);
  rep.k = kd.value;
  rep.conservative = kd.is_bound;
  rep.b = b_constant(static_cast<std::uint64_t>(rep.degree), R.characteristic());
  rep.lpf = R.lpf();
  rep.rhs = static_cast<double>(rep.b) * (rep.k - 1.0) / static_cast<double>(rep.lpf);

  const auto profile = value_profile(R, P);
  require_work(R.order() * profile.support.size(), limits, "character sweep");
  const auto H = value_subgroup_from_values(R, profile.values, profile.constant, true);
  rep.subgroup_size = H.size();
  const auto S = centered_exp_sums(basis, profile);
  const double power = std::ldexp(1.0, static_cast<int>(rep.k) - 1);
  rep.rows.reserve(S.size());
  for (std::uint64_t i = 0; i < S.size(); ++i) {
    Character chi = basis.character(i);
    ExpSumRow row;
    row.index = i;
    row.modulus = std::abs(S[i]);
    row.lhs = std::pow(row.modulus, power);
    row.in_annihilator = annihilates(basis, chi, H);
    row.satisfied = row.in_annihilator || row.lhs <= rep.rhs + kBoundTolerance;
    row.coeffs = std::move(chi.coeffs);
    if (i != 0) rep.max_nontrivial_modulus = std::max(rep.max_nontrivial_modulus, row.modulus);
    if (!row.in_annihilator) rep.max_outside_modulus = std::max(rep.max_outside_modulus, row.modulus);
    if (!row.satisfied) ++rep.violations;
    rep.rows.push_back(std::move(row));
  }
  rep.bound_satisfied = rep.violations == 0;
  return rep;
}

VdcResult vdc_check(const Ring& R, const SubgroupSet& H, std::span<const std::complex<double>> f, unsigned k,
                    const Limits& limits) {
  const std::size_t n = R.order();
  if (f.size() != n) fail(ErrorKind::InvalidArgument, "function table size does not match ring order");
  if (k == 0) fail(ErrorKind::InvalidArgument, "vdC requires k >= 1");
  if (H.ring_order() != n) fail(ErrorKind::InvalidArgument, "subgroup belongs to another ring");
  double work = static_cast<double>(n);
  for (unsigned j = 0; j < k; ++j) work *= static_cast<double>(H.size());
  if (work > static_cast<double>(limits.work_budget)) {
    fail(ErrorKind::WorkGuardExceeded, "vdC: |H|^k |R| exceeds work budget");
  }

  const auto& hv = H.elements();
  std::vector<std::uint32_t> trans(hv.size() * n);
  for (std::size_t i = 0; i < hv.size(); ++i) {
    for (std::size_t u = 0; u < n; ++u) trans[i * n + u] = R.add(static_cast<Elem>(u), hv[i]);
  }

  // level[j] holds Delta_{v_1..v_j} f as separate real/imaginary arrays.
  std::vector<std::vector<double>> re(k), im(k);
  for (unsigned j = 0; j < k; ++j) {
    re[j].resize(n);
    im[j].resize(n);
  }
  for (std::size_t u = 0; u < n; ++u) {
    re[0][u] = f[u].real();
    im[0][u] = f[u].imag();
  }
  std::vector<double> gr(n), gi(n);
  const auto& kern = kernels::active();
  kernels::ComplexSum acc;

  std::function<void(unsigned)> descend = [&](unsigned j) {
    for (std::size_t i = 0; i < hv.size(); ++i) {
      std::fill(gr.begin(), gr.end(), 0.0);
      std::fill(gi.begin(), gi.end(), 0.0);
      kern.gather_axpy(gr.data(), gi.data(), re[j].data(), im[j].data(), trans.data() + i * n, 1.0, n);
      if (j + 1 == k) {
        const auto s = kern.conj_dot(gr.data(), gi.data(), re[j].data(), im[j].data(), n);
        acc.re += s.re;
        acc.im += s.im;
        continue;
      }
      for (std::size_t u = 0; u < n; ++u) {
        // g(u+v) * conj(g(u))
        const double ar = gr[u], ai = gi[u], br = re[j][u], bi = im[j][u];
        re[j + 1][u] = ar * br + ai * bi;
        im[j + 1][u] = ai * br - ar * bi;
      }
      descend(j + 1);
    }
  };
  descend(0);

  std::complex<double> mean = 0.0;
  double fmax = 0.0;
  for (const auto& z : f) {
    mean += z;
    fmax = std::max(fmax, std::abs(z));
  }
  mean /= static_cast<double>(n);
  const double power = std::ldexp(1.0, static_cast<int>(k));
  VdcResult res;
  res.lhs = std::pow(std::abs(mean), power);
  res.rhs = acc.re / work;
  res.rhs_imag = acc.im / work;
  const double scale = std::max(1.0, std::pow(fmax, power));
  res.imag_ok = std::abs(res.rhs_imag) <= kBoundTolerance * scale;
  res.holds = res.lhs <= res.rhs + kBoundTolerance * scale;
  return res;
}

TEContext::TEContext(const AdditiveBasis& basis, const Polynomial& P, const Limits& limits)
    : basis_(basis), plan_(basis, limits) {
  const Ring& R = basis.ring();
  if (P.is_constant()) fail(ErrorKind::InvalidArgument, "TE estimate requires a nonconstant polynomial");
  profile_ = value_profile(R, P);
  H_ = value_subgroup_from_values(R, profile_.values, profile_.constant, true);
  const auto kd = derivational_degree_auto(R, P, limits);
  k_ = kd.value;
  conservative_ = kd.is_bound;
  const double b = static_cast<double>(b_constant(static_cast<std::uint64_t>(P.degree()), R.characteristic()));
  factor_ = std::pow(b * (k_ - 1.0) / static_cast<double>(R.lpf()), 1.0 / std::ldexp(1.0, static_cast<int>(k_) - 1));
  S_ = centered_exp_sums(basis, profile_);
  ann_.resize(S_.size());
  for (std::size_t i = 0; i < S_.size(); ++i) ann_[i] = annihilates(basis, basis.character(i), H_) ? 1 : 0;

  const std::size_t n = R.order();
  std::map<Elem, double> w;
  for (std::size_t i = 0; i < profile_.support.size(); ++i) w[profile_.support[i]] += profile_.counts[i] / static_cast<double>(n);
  for (Elem z : H_.elements()) w[z] -= 1.0 / static_cast<double>(H_.size());
  std::vector<Elem> shifts;
  for (const auto& [e, weight] : w) {
    if (weight != 0.0) {
      shifts.push_back(e);
      weights_.push_back(weight);
    }
  }
  require_work(static_cast<std::uint64_t>(shifts.size()) * n, limits, "TE shift table");
  shift_table_.resize(shifts.size() * n);
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    const Elem off = R.add(profile_.constant, shifts[i]);
    for (std::size_t x = 0; x < n; ++x) shift_table_[i * n + x] = R.add(static_cast<Elem>(x), off);
  }
}

double TEContext::lhs_direct(std::span<const std::complex<double>> f) const {
  const std::size_t n = basis_.ring().order();
  if (f.size() != n) fail(ErrorKind::InvalidArgument, "function table size does not match ring order");
  std::vector<double> fr(n), fi(n), dr(n, 0.0), di(n, 0.0);
  for (std::size_t x = 0; x < n; ++x) {
    fr[x] = f[x].real();
    fi[x] = f[x].imag();
  }
  const auto& kern = kernels::active();
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    kern.gather_axpy(dr.data(), di.data(), fr.data(), fi.data(), shift_table_.data() + i * n, weights_[i], n);
  }
  const auto s = kern.conj_dot(dr.data(), di.data(), dr.data(), di.data(), n);
  return std::sqrt(std::max(0.0, s.re) / static_cast<double>(n));
}

double TEContext::lhs_fourier(std::span<const std::complex<double>> f) {
  plan_.transform(f, fhat_);
  double acc = 0.0;
  for (std::size_t i = 0; i < fhat_.size(); ++i) {
    const std::complex<double> m = S_[i] - (ann_[i] ? 1.0 : 0.0);
    acc += std::norm(fhat_[i]) * std::norm(m);
  }
  return std::sqrt(acc);
}

TEReport te_estimate(TEContext& ctx, std::span<const std::complex<double>> f) {
  TEReport rep;
  rep.ring = ctx.basis().ring().spec();
  rep.poly = to_literal(ctx.profile().P);
  rep.lhs = ctx.lhs_direct(f);
  rep.lhs_fourier = ctx.lhs_fourier(f);
  rep.norm = l2_norm(f);
  rep.rhs = ctx.bound_factor() * rep.norm;
  rep.ratio = rep.rhs > 0.0 ? rep.lhs / rep.rhs : (rep.lhs > 0.0 ? INFINITY : 0.0);
  rep.k = ctx.k();
  rep.conservative = ctx.conservative();
  rep.coset = ctx.profile().constant;
  rep.subgroup_size = ctx.subgroup().size();
  rep.satisfied = rep.lhs <= rep.rhs + kBoundTolerance * (1.0 + rep.norm);
  return rep;
}

TEReport te_estimate(const AdditiveBasis& basis, const Polynomial& P, std::span<const std::complex<double>> f,
                     const Limits& limits) {
  TEContext ctx(basis, P, limits);
  return te_estimate(ctx, f);
}

cvec random_function(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  cvec f(n);
  for (auto& z : f) {
    const double re = unit();
    const double im = unit();
    z = {re, im};
  }
  return f;
}

double l2_norm(std::span<const std::complex<double>> f) {
  if (f.empty()) return 0.0;
  double acc = 0.0;
  for (const auto& z : f) acc += std::norm(z);
  return std::sqrt(acc / static_cast<double>(f.size()));
}

std::array<unsigned, 3> MultiPoly::degrees() const {
  std::array<unsigned, 3> d{};
  for (const auto& t : terms) {
    if (t.coeff == 0) continue;
    for (unsigned i = 0; i < 3; ++i) d[i] = std::max(d[i], t.exps[i]);
  }
  return d;
}

bool MultiPoly::is_zero() const {
  return std::all_of(terms.begin(), terms.end(), [](const Term& t) { return t.coeff == 0; });
}

Elem eval(const Ring& R, const MultiPoly& T, std::span<const Elem> x) {
  if (x.size() < T.vars) fail(ErrorKind::InvalidArgument, "too few arguments for polynomial");
  Elem acc = 0;
  for (const auto& t : T.terms) {
    Elem term = t.coeff;
    for (unsigned i = 0; i < T.vars; ++i) term = R.mul(term, R.pow(x[i], t.exps[i]));
    acc = R.add(acc, term);
  }
  return acc;
}

namespace {

MultiPoly combine_terms(const Ring& R, const MultiPoly& T) {
  std::map<std::array<unsigned, 3>, Elem> merged;
  for (const auto& t : T.terms) {
    for (unsigned i = T.vars; i < 3; ++i) {
      if (t.exps[i] != 0) fail(ErrorKind::InvalidArgument, "term uses a variable beyond the declared count");
    }
    if (!R.contains(t.coeff)) fail(ErrorKind::InvalidArgument, "coefficient out of range");
    auto [it, inserted] = merged.emplace(t.exps, t.coeff);
    if (!inserted) it->second = R.add(it->second, t.coeff);
  }
  MultiPoly out;
  out.vars = T.vars;
  for (const auto& [e, c] : merged) {
    if (c != 0) out.terms.push_back({e, c});
  }
  return out;
}

}  // namespace

RootCountResult root_count_bound_check(const Ring& R, const MultiPoly& T0, const Limits& limits) {
  if (T0.vars < 1 || T0.vars > 3) fail(ErrorKind::InvalidArgument, "root count supports 1 to 3 variables");
  const MultiPoly T = combine_terms(R, T0);
  if (T.is_zero()) fail(ErrorKind::ZeroPolynomial, "root count of the zero polynomial");
  const std::uint64_t n = R.order();
  std::uint64_t tuples = 1;
  for (unsigned i = 0; i < T.vars; ++i) {
    if (tuples > limits.work_budget / n) fail(ErrorKind::WorkGuardExceeded, "root count: |R|^l exceeds work budget");
    tuples *= n;
  }
  require_work(tuples * T.terms.size(), limits, "root count");

  const auto deg = T.degrees();
  unsigned max_deg = 0;
  RootCountResult res;
  for (unsigned i = 0; i < T.vars; ++i) {
    res.degree_sum += deg[i];
    max_deg = std::max(max_deg, deg[i]);
  }
  // pw[x * (max_deg+1) + e] = x^e
  std::vector<Elem> pw(n * (max_deg + 1));
  for (std::uint64_t x = 0; x < n; ++x) {
    Elem p = R.one();
    for (unsigned e = 0; e <= max_deg; ++e) {
      pw[x * (max_deg + 1) + e] = p;
      p = R.mul(p, static_cast<Elem>(x));
    }
  }
  std::array<std::uint64_t, 3> x{};
  for (std::uint64_t t = 0; t < tuples; ++t) {
    std::uint64_t rest = t;
    for (unsigned i = 0; i < T.vars; ++i) {
      x[i] = rest % n;
      rest /= n;
    }
    Elem acc = 0;
    for (const auto& term : T.terms) {
      Elem v = term.coeff;
      for (unsigned i = 0; i < T.vars; ++i) v = R.mul(v, pw[x[i] * (max_deg + 1) + term.exps[i]]);
      acc = R.add(acc, v);
    }
    if (acc == 0) ++res.count;
  }
  res.bound = static_cast<double>(res.degree_sum) * static_cast<double>(tuples) / static_cast<double>(R.lpf());
  res.holds = static_cast<double>(res.count) <= res.bound + kBoundTolerance;
  return res;
}

}  // namespace fpir
