#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "fpir/additive.hpp"
#include "fpir/combinatorics.hpp"
#include "fpir/harmonics.hpp"
#include "fpir/paley.hpp"
#include "fpir/poly.hpp"
#include "fpir/subgroup.hpp"

namespace fpir::cli {

using nlohmann::json;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::WorkGuardExceeded:
    case ErrorKind::OrderTooLarge:
      return kGuard;
    default:
      return kUsage;
  }
}

json error_json(ErrorKind kind, const std::string& message) {
  return {{"error", std::string(to_string(kind))}, {"message", message}};
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    const auto v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorKind::ParseError, std::string("bad ") + what + " '" + s + "'");
  }
}

std::int64_t parse_i64(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    const auto v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorKind::ParseError, std::string("bad ") + what + " '" + s + "'");
  }
}

std::vector<Elem> parse_elements(const Ring& R, const std::string& s) {
  std::vector<Elem> out;
  if (s.empty()) return out;
  for (const auto& tok : split(s, ',')) {
    const auto v = parse_u64(tok.size() > 1 && tok[0] == '#' ? tok.substr(1) : tok, "element index");
    if (!R.contains(v)) fail(ErrorKind::ParseError, "element " + tok + " out of range for " + R.spec());
    out.push_back(static_cast<Elem>(v));
  }
  return out;
}

// Set sources: explicit index lists, `all`, `empty`, `squares`,
// `coset:<shift>:<g1>,<g2>,...` and `random:<k>:<seed>`.
std::vector<Elem> parse_set(const Ring& R, const std::string& s) {
  std::vector<Elem> out;
  if (s == "empty") return out;
  if (s == "all") {
    for (std::uint64_t x = 0; x < R.order(); ++x) out.push_back(static_cast<Elem>(x));
    return out;
  }
  if (s == "squares") {
    for (std::uint64_t x = 0; x < R.order(); ++x) out.push_back(R.mul(static_cast<Elem>(x), static_cast<Elem>(x)));
  } else if (s.rfind("coset:", 0) == 0) {
    const auto parts = split(s.substr(6), ':');
    if (parts.size() != 2) fail(ErrorKind::ParseError, "coset set needs coset:<shift>:<generators>");
    const Elem shift = parse_elements(R, parts[0]).at(0);
    const auto H = SubgroupSet::generated_by(R, parse_elements(R, parts[1]));
    for (Elem z : H.elements()) out.push_back(R.add(shift, z));
  } else if (s.rfind("random:", 0) == 0) {
    const auto parts = split(s.substr(7), ':');
    if (parts.size() != 2) fail(ErrorKind::ParseError, "random set needs random:<k>:<seed>");
    const auto k = parse_u64(parts[0], "set size");
    if (k > R.order()) fail(ErrorKind::InvalidArgument, "random set larger than the ring");
    std::vector<Elem> all(R.order());
    for (std::uint64_t x = 0; x < R.order(); ++x) all[x] = static_cast<Elem>(x);
    std::mt19937_64 rng(parse_u64(parts[1], "seed"));
    std::shuffle(all.begin(), all.end(), rng);
    out.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
  } else {
    out = parse_elements(R, s);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

json ring_json(const Ring& R) {
  json profile = json::array();
  for (const auto& [size, mult] : R.prime_ideal_profile()) profile.push_back({size, mult});
  json inv = json::array();
  for (const auto& c : R.coordinates()) inv.push_back(c.modulus);
  return {{"spec", R.spec()},
          {"order", R.order()},
          {"characteristic", R.characteristic().value()},
          {"lpf", R.lpf()},
          {"units", R.units_count()},
          {"prime_profile", profile},
          {"additive_invariants", inv}};
}

std::string join_coeffs(const std::vector<std::uint32_t>& c, char sep = ' ') {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(c[i]);
  }
  return s;
}

std::string flat_csv(const json& j) {
  std::string s = "key,value\n";
  for (const auto& [k, v] : j.items()) {
    if (v.is_structured()) continue;
    s += k + "," + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
  }
  return s;
}

json sample(const std::vector<Elem>& v, std::size_t limit = 16) {
  json a = json::array();
  for (std::size_t i = 0; i < v.size() && i < limit; ++i) a.push_back(v[i]);
  return a;
}

struct Context {
  Limits limits;
  bool csv = false;
  std::uint64_t seed = 0;
  bool seed_given = false;
};

CommandResult finish(json j, std::string csv, const Context& ctx, int code = kOk) {
  CommandResult r;
  r.exit_code = code;
  if (csv.empty()) csv = flat_csv(j);
  r.json = std::move(j);
  r.csv = std::move(csv);
  r.want_csv = ctx.csv;
  return r;
}

// ---- ring info -------------------------------------------------------------

CommandResult cmd_ring_info(const Context& ctx, const std::string& spec, bool characters) {
  const auto R = make_ring(spec, ctx.limits);
  json j = ring_json(*R);
  j["command"] = "ring_info";
  std::string csv;
  if (characters) {
    AdditiveBasis basis(R);
    require_work(basis.character_count() * basis.rank(), ctx.limits, "character table");
    csv = "index,coeffs,angle_lcm\n";
    for (std::uint64_t i = 0; i < basis.character_count(); ++i) {
      const auto chi = basis.character(i);
      csv += std::to_string(i) + "," + join_coeffs(chi.coeffs) + "," + std::to_string(basis.angle_lcm()) + "\n";
    }
    j["characters"] = basis.character_count();
    j["angle_lcm"] = basis.angle_lcm();
  }
  return finish(std::move(j), std::move(csv), ctx);
}

// ---- poly ddeg -------------------------------------------------------------

CommandResult cmd_ddeg(const Context& ctx, const std::string& spec, const std::string& lit, const std::string& mode) {
  const auto R = make_ring(spec, ctx.limits);
  const auto P = parse_polynomial(*R, lit);
  if (P.is_constant()) fail(ErrorKind::InvalidArgument, "derivational degree requires a nonconstant polynomial");
  json j = {{"command", "ddeg"}, {"ring", R->spec()}, {"poly", to_literal(P)}, {"degree", P.degree()}};
  if (mode != "bound") {
    try {
      const auto k = derivational_degree(*R, P, DerivationMode::Exact, ctx.limits);
      j["exact"] = k.value;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::WorkGuardExceeded || mode == "exact") throw;
      j["exact"] = nullptr;
    }
  }
  if (mode != "exact") {
    const auto kb = derivational_degree(*R, P, DerivationMode::DigitSumBound, ctx.limits);
    j["digit_sum_bound"] = {{"value", kb.value}, {"flag", kb.is_bound ? "BOUND" : "EXACT"}};
  }
  j["b_constant"] = b_constant(static_cast<std::uint64_t>(P.degree()), R->characteristic());
  return finish(std::move(j), {}, ctx);
}

// ---- subgroup --------------------------------------------------------------

CommandResult cmd_subgroup(const Context& ctx, const std::string& spec, const std::string& lit, bool raw) {
  const auto R = make_ring(spec, ctx.limits);
  const auto P = parse_polynomial(*R, lit);
  const auto H = value_subgroup(*R, P, !raw);
  json j = {{"command", "subgroup"},
            {"ring", R->spec()},
            {"poly", to_literal(P)},
            {"subtract_constant", !raw},
            {"size", H.size()},
            {"index", H.index()},
            {"is_full", H.is_full()},
            {"contains_constant", constant_in_subgroup(*R, P)},
            {"generators_sample", sample(H.basis())}};
  return finish(std::move(j), {}, ctx);
}

// ---- expsum ----------------------------------------------------------------

CommandResult cmd_expsum(const Context& ctx, const std::string& spec, const std::string& lit) {
  const auto R = make_ring(spec, ctx.limits);
  const auto P = parse_polynomial(*R, lit);
  AdditiveBasis basis(R);
  const auto rep = character_bound_check(basis, P, ctx.limits);
  json rows = json::array();
  std::string csv = "index,coeffs,modulus,lhs,in_annihilator,satisfied\n";
  for (const auto& row : rep.rows) {
    rows.push_back({{"index", row.index},
                    {"coeffs", row.coeffs},
                    {"modulus", row.modulus},
                    {"lhs", row.lhs},
                    {"in_annihilator", row.in_annihilator},
                    {"satisfied", row.satisfied}});
    std::ostringstream line;
    line.precision(17);
    line << row.index << "," << join_coeffs(row.coeffs) << "," << row.modulus << "," << row.lhs << ","
         << row.in_annihilator << "," << row.satisfied << "\n";
    csv += line.str();
  }
  json j = {{"command", "expsum"},
            {"ring", rep.ring},
            {"poly", rep.poly},
            {"degree", rep.degree},
            {"k", rep.k},
            {"conservative", rep.conservative},
            {"b_constant", rep.b},
            {"lpf", rep.lpf},
            {"rhs", rep.rhs},
            {"subgroup_size", rep.subgroup_size},
            {"max_nontrivial_modulus", rep.max_nontrivial_modulus},
            {"max_outside_modulus", rep.max_outside_modulus},
            {"violations", rep.violations},
            {"bound_satisfied", rep.bound_satisfied},
            {"rows", rows}};
  return finish(std::move(j), std::move(csv), ctx, rep.bound_satisfied ? kOk : kBoundFailed);
}

// ---- tebound ---------------------------------------------------------------

CommandResult cmd_tebound(const Context& ctx, const std::string& spec, const std::string& lit, std::size_t count) {
  const auto R = make_ring(spec, ctx.limits);
  const auto P = parse_polynomial(*R, lit);
  AdditiveBasis basis(R);
  TEContext te(basis, P, ctx.limits);
  json reports = json::array();
  std::string csv = "sample,seed,lhs,lhs_fourier,rhs,ratio,satisfied\n";
  bool all = true;
  double max_ratio = 0.0, max_gap = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t s = ctx.seed + i;
    const auto f = random_function(R->order(), s);
    auto rep = te_estimate(te, f);
    all = all && rep.satisfied;
    max_ratio = std::max(max_ratio, rep.ratio);
    max_gap = std::max(max_gap, std::abs(rep.lhs - rep.lhs_fourier));
    reports.push_back({{"sample", i},
                       {"seed", s},
                       {"lhs", rep.lhs},
                       {"lhs_fourier", rep.lhs_fourier},
                       {"rhs", rep.rhs},
                       {"norm", rep.norm},
                       {"ratio", rep.ratio},
                       {"satisfied", rep.satisfied}});
    std::ostringstream line;
    line.precision(17);
    line << i << "," << s << "," << rep.lhs << "," << rep.lhs_fourier << "," << rep.rhs << "," << rep.ratio << ","
         << rep.satisfied << "\n";
    csv += line.str();
  }
  json j = {{"command", "tebound"},
            {"ring", R->spec()},
            {"poly", to_literal(P)},
            {"seed", ctx.seed},
            {"k", te.k()},
            {"conservative", te.conservative()},
            {"bound_factor", te.bound_factor()},
            {"coset", P.constant_term()},
            {"subgroup_size", te.subgroup().size()},
            {"f_descriptor", "uniform real and imaginary parts on [-1,1], mt19937_64, seed + sample"},
            {"all_satisfied", all},
            {"max_ratio", max_ratio},
            {"max_direct_fourier_gap", max_gap},
            {"reports", reports}};
  return finish(std::move(j), std::move(csv), ctx, all ? kOk : kBoundFailed);
}

// ---- vdc -------------------------------------------------------------------

CommandResult cmd_vdc(const Context& ctx, const std::string& spec, const std::string& gens, const std::string& lit,
                      unsigned k, std::size_t count) {
  const auto R = make_ring(spec, ctx.limits);
  SubgroupSet H = !lit.empty() ? value_subgroup(*R, parse_polynomial(*R, lit), true)
                               : SubgroupSet::generated_by(*R, parse_elements(*R, gens));
  bool all = true, imag = true;
  double worst_gap = -1e300, max_imag = 0.0;
  json rows = json::array();
  std::string csv = "sample,seed,lhs,rhs,rhs_imag,holds\n";
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t s = ctx.seed + i;
    const auto f = random_function(R->order(), s);
    const auto v = vdc_check(*R, H, f, k, ctx.limits);
    all = all && v.holds;
    imag = imag && v.imag_ok;
    worst_gap = std::max(worst_gap, v.lhs - v.rhs);
    max_imag = std::max(max_imag, std::abs(v.rhs_imag));
    rows.push_back({{"sample", i}, {"seed", s}, {"lhs", v.lhs}, {"rhs", v.rhs}, {"rhs_imag", v.rhs_imag}, {"holds", v.holds}});
    std::ostringstream line;
    line.precision(17);
    line << i << "," << s << "," << v.lhs << "," << v.rhs << "," << v.rhs_imag << "," << v.holds << "\n";
    csv += line.str();
  }
  json j = {{"command", "vdc"},
            {"ring", R->spec()},
            {"k", k},
            {"seed", ctx.seed},
            {"subgroup_size", H.size()},
            {"subgroup_generators", sample(H.basis())},
            {"all_hold", all},
            {"imag_ok", imag},
            {"max_imag", max_imag},
            {"worst_lhs_minus_rhs", count ? json(worst_gap) : json(nullptr)},
            {"samples", rows}};
  return finish(std::move(j), std::move(csv), ctx, all && imag ? kOk : kBoundFailed);
}

// ---- rootcount -------------------------------------------------------------

void collect_terms(const Ring& R, const json& node, unsigned depth, unsigned vars, std::array<unsigned, 3>& exps,
                   MultiPoly& T) {
  if (!node.is_array()) fail(ErrorKind::ParseError, "nested coefficient lists expected");
  for (std::size_t i = 0; i < node.size(); ++i) {
    exps[depth] = static_cast<unsigned>(i);
    const auto& c = node[i];
    if (depth + 1 < vars) {
      collect_terms(R, c, depth + 1, vars, exps, T);
    } else {
      Elem v = 0;
      if (c.is_number_integer()) {
        v = R.from_int(c.get<std::int64_t>());
      } else if (c.is_string() && c.get<std::string>().rfind('#', 0) == 0) {
        const auto idx = parse_u64(c.get<std::string>().substr(1), "element index");
        if (!R.contains(idx)) fail(ErrorKind::ParseError, "coefficient index out of range");
        v = static_cast<Elem>(idx);
      } else {
        fail(ErrorKind::ParseError, "coefficients must be integers or \"#<index>\" strings");
      }
      if (v != 0) T.terms.push_back({exps, v});
    }
  }
  exps[depth] = 0;
}

unsigned nesting_depth(const json& node) {
  unsigned d = 0;
  const json* cur = &node;
  while (cur->is_array()) {
    ++d;
    if (cur->empty()) break;
    cur = &(*cur)[0];
  }
  return d;
}

CommandResult cmd_rootcount(const Context& ctx, const std::string& spec, const std::string& poly, std::size_t random,
                            unsigned vars, unsigned max_degree) {
  const auto R = make_ring(spec, ctx.limits);
  if (!poly.empty()) {
    json parsed;
    try {
      parsed = json::parse(poly);
    } catch (const json::exception& e) {
      fail(ErrorKind::ParseError, std::string("polynomial JSON: ") + e.what());
    }
    MultiPoly T;
    T.vars = nesting_depth(parsed);
    if (T.vars < 1 || T.vars > 3) fail(ErrorKind::ParseError, "1 to 3 levels of nesting expected");
    std::array<unsigned, 3> exps{};
    collect_terms(*R, parsed, 0, T.vars, exps, T);
    const auto res = root_count_bound_check(*R, T, ctx.limits);
    json j = {{"command", "rootcount"}, {"ring", R->spec()}, {"vars", T.vars}, {"count", res.count},
              {"bound", res.bound}, {"degree_sum", res.degree_sum}, {"lpf", R->lpf()}, {"holds", res.holds}};
    return finish(std::move(j), {}, ctx, res.holds ? kOk : kBoundFailed);
  }
  if (vars < 1 || vars > 3) fail(ErrorKind::InvalidArgument, "--vars must be 1, 2 or 3");
  std::mt19937_64 rng(ctx.seed);
  std::size_t holds = 0, tight = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < random; ++i) {
    MultiPoly T;
    T.vars = vars;
    do {
      T.terms.clear();
      const std::size_t nterms = 1 + rng() % 4;
      for (std::size_t t = 0; t < nterms; ++t) {
        MultiPoly::Term term;
        for (unsigned v = 0; v < vars; ++v) term.exps[v] = static_cast<unsigned>(rng() % (max_degree + 1));
        term.coeff = static_cast<Elem>(rng() % R->order());
        T.terms.push_back(term);
      }
    } while (T.is_zero());
    RootCountResult res;
    try {
      res = root_count_bound_check(*R, T, ctx.limits);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ZeroPolynomial) throw;
      --i;  // duplicate terms cancelled; draw again
      continue;
    }
    holds += res.holds;
    if (res.bound > 0) worst = std::max(worst, static_cast<double>(res.count) / res.bound);
    if (static_cast<double>(res.count) == res.bound) ++tight;
  }
  json j = {{"command", "rootcount"}, {"ring", R->spec()}, {"vars", vars}, {"seed", ctx.seed},
            {"samples", random}, {"holds", holds == random}, {"held", holds}, {"tight", tight},
            {"max_count_over_bound", worst}};
  return finish(std::move(j), {}, ctx, holds == random ? kOk : kBoundFailed);
}

// ---- sarkozy ---------------------------------------------------------------

CommandResult cmd_sarkozy(const Context& ctx, const std::string& spec, const std::string& lit, const std::string& mode,
                          const std::string& setA, const std::string& setB) {
  const auto R = make_ring(spec, ctx.limits);
  const auto P = parse_polynomial(*R, lit);
  const SearchMode sm = mode == "greedy" ? SearchMode::Greedy
                        : mode == "exact" ? SearchMode::Exact
                        : R->order() <= 64 ? SearchMode::Exact : SearchMode::Greedy;
  const auto df = difference_free_max(*R, P, sm, ctx.seed, ctx.limits);
  const bool verified = is_difference_free(*R, P, df.witness);
  const auto sb = sarkozy_bound_check(*R, P, df.size, ctx.limits);
  json j = {{"command", "sarkozy"},
            {"ring", R->spec()},
            {"poly", to_literal(P)},
            {"difference_free", {{"size", df.size},
                                 {"witness", df.witness},
                                 {"exact", df.exact},
                                 {"seed", df.seed},
                                 {"nodes", df.nodes},
                                 {"verified", verified}}},
            {"bound", {{"value", sb.bound},
                       {"c", sb.c},
                       {"k", sb.k},
                       {"conservative", sb.conservative},
                       {"degree", sb.degree},
                       {"lpf", sb.lpf},
                       {"has_root", sb.has_root},
                       {"constant_in_subgroup", sb.constant_in_subgroup},
                       {"satisfied", sb.satisfied}}}};
  if (!setA.empty() || !setB.empty()) {
    const auto A = parse_set(*R, setA.empty() ? "all" : setA);
    const auto B = parse_set(*R, setB.empty() ? "all" : setB);
    const auto cc = config_count(*R, P, A, B);
    j["config"] = {{"count", cc.count},
                   {"a_size", cc.a_size},
                   {"b_size", cc.b_size},
                   {"expectation", cc.expectation},
                   {"deviation", cc.deviation},
                   {"normalized_deviation", cc.normalized_deviation}};
  }
  const bool ok = verified && sb.satisfied;
  return finish(std::move(j), {}, ctx, ok ? kOk : kBoundFailed);
}

// ---- intersective ----------------------------------------------------------

CommandResult cmd_intersective(const Context& ctx, const std::string& family, std::uint64_t p, const std::string& lit,
                               std::uint64_t bound) {
  IntersectivityVerdict v;
  json j = {{"command", "intersective"}, {"family", family}, {"poly", lit}, {"bound", bound}};
  if (family == "integers") {
    std::vector<std::int64_t> P;
    for (const auto& tok : split(lit, ',')) P.push_back(parse_i64(tok, "coefficient"));
    v = intersectivity_integers(P, bound, ctx.limits);
  } else if (family == "fpt") {
    if (p == 0) fail(ErrorKind::ParseError, "--p is required for the fpt family");
    std::vector<std::vector<std::int64_t>> P;
    for (const auto& tok : split(lit, ',')) {
      std::vector<std::int64_t> c;
      for (const auto& t : split(tok, ':')) c.push_back(parse_i64(t, "coefficient"));
      P.push_back(std::move(c));
    }
    v = intersectivity_fpt(p, P, static_cast<unsigned>(bound), ctx.limits);
    j["p"] = p;
  } else {
    fail(ErrorKind::ParseError, "family must be integers or fpt");
  }
  j["status"] = std::string(to_string(v.status));
  j["bound_checked"] = v.bound_checked;
  j["moduli_checked"] = v.moduli_checked;
  if (v.witness) {
    j["witness"] = {{"modulus", v.witness->modulus},
                    {"prime", v.witness->prime},
                    {"power", v.witness->power},
                    {"quotient_order", v.witness->quotient_order},
                    {"verified", v.witness->verified}};
    if (!v.witness->g.empty()) j["witness"]["g"] = v.witness->g;
  } else {
    j["witness"] = nullptr;
  }
  const bool ok = !v.witness || v.witness->verified;
  return finish(std::move(j), {}, ctx, ok ? kOk : kBoundFailed);
}

// ---- paley -----------------------------------------------------------------

// file:<path> holds a JSON array of {"A": ..., "B": ...}; each side is an index
// array or any set-source string accepted by --A/--B.
std::vector<Elem> json_set(const Ring& R, const json& v) {
  if (v.is_string()) return parse_set(R, v.get<std::string>());
  if (!v.is_array()) fail(ErrorKind::ParseError, "set must be an index array or a set-source string");
  std::vector<Elem> out;
  for (const auto& x : v) {
    if (!x.is_number_unsigned() || !R.contains(x.get<std::uint64_t>())) fail(ErrorKind::ParseError, "bad set element " + x.dump());
    out.push_back(x.get<Elem>());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

UniformityOptions parse_sets(const Ring& R, const std::string& s, std::uint64_t seed) {
  UniformityOptions o;
  o.seed = seed;
  if (s.rfind("file:", 0) == 0) {
    o.source = SetSource::Explicit;
    std::ifstream in(s.substr(5));
    if (!in) fail(ErrorKind::ParseError, "cannot read " + s.substr(5));
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      fail(ErrorKind::ParseError, std::string("set file: ") + e.what());
    }
    if (!doc.is_array()) fail(ErrorKind::ParseError, "set file must hold a JSON array of {A, B} pairs");
    for (const auto& pr : doc) {
      if (!pr.is_object() || !pr.contains("A") || !pr.contains("B")) fail(ErrorKind::ParseError, "each entry needs A and B");
      o.pairs.emplace_back(json_set(R, pr["A"]), json_set(R, pr["B"]));
    }
  } else if (s == "exhaustive") {
    o.source = SetSource::Exhaustive;
  } else if (s == "structured" || s.empty()) {
    o.source = SetSource::Structured;
  } else if (s.rfind("sampled", 0) == 0) {
    o.source = SetSource::Sampled;
    const auto parts = split(s, ':');
    if (parts.size() >= 2) o.samples = parse_u64(parts[1], "sample count");
    if (parts.size() >= 3) o.seed = parse_u64(parts[2], "seed");
    if (parts.size() > 3) fail(ErrorKind::ParseError, "sampled:<n>:<seed>");
  } else {
    fail(ErrorKind::ParseError, "unknown set source '" + s + "'");
  }
  return o;
}

CommandResult cmd_paley(const Context& ctx, const std::string& spec, unsigned d, const std::string& sets,
                        const std::string& edges_path) {
  const auto R = make_ring(spec, ctx.limits);
  AdditiveBasis basis(R);
  const auto g = build_paley(R, d);
  const auto sp = spectrum(basis, g);
  json j = {{"command", "paley"},
            {"ring", R->spec()},
            {"d", d},
            {"r", g.r},
            {"connection_sample", sample(g.connection, 64)},
            {"pm_halving_factor", g.pm_halving},
            {"kernel_size", g.kernel_size},
            {"warning", g.char_divides_degree ? json("characteristic divides d; graph may be disconnected") : json(nullptr)},
            {"lambda2", sp.lambda2},
            {"lambda2_witness", sp.lambda2_coeffs},
            {"epsilon_star", sp.epsilon_star},
            {"trace", sp.trace},
            {"trace_sq", sp.trace_sq},
            {"max_imag", sp.max_imag}};
  std::string csv = "index,eigenvalue\n";
  {
    std::ostringstream out;
    out.precision(17);
    for (std::size_t i = 0; i < sp.eigenvalues.size(); ++i) out << i << "," << sp.eigenvalues[i] << "\n";
    csv += out.str();
  }
  json eig = json::array();
  for (double e : sp.eigenvalues) eig.push_back(e);
  j["eigenvalues"] = eig;

  const double n = static_cast<double>(R->order());
  const bool trace_ok = std::abs(sp.trace) <= 1e-6 && std::abs(sp.trace_sq - static_cast<double>(g.r) * n) <= 1e-6 * std::max(1.0, n);
  j["trace_identities_ok"] = trace_ok;

  bool mixing_ok = true;
  if (g.r > 0) {
    const auto u = uniformity_measure(g, sp, parse_sets(*R, sets, ctx.seed), ctx.limits);
    mixing_ok = u.mixing_violations == 0;
    j["uniformity"] = {{"source", std::string(to_string(u.source))},
                       {"seed", u.seed},
                       {"pairs_examined", u.pairs_examined},
                       {"max_normalized_deviation", u.max_normalized_deviation},
                       {"epsilon_lower_bound", u.epsilon_lower_bound},
                       {"spectral_upper", u.spectral_upper},
                       {"spectral_certificate", u.spectral_certificate},
                       {"best_a_size", u.best_a.size()},
                       {"best_b_size", u.best_b.size()},
                       {"mixing_violations", u.mixing_violations},
                       {"certified", u.certified}};
  } else {
    j["uniformity"] = nullptr;
  }

  try {
    const auto v = quasirandomness_verdict(g, sp, ctx.limits);
    json bad = json::array();
    for (const auto& b : v.bad_primes) {
      bad.push_back({{"residue_size", b.residue_size}, {"covered", b.covered}, {"epsilon_floor", b.epsilon_floor}});
    }
    j["verdict"] = {{"delta", v.delta},
                    {"k", v.k},
                    {"b_constant", v.b},
                    {"sufficient_epsilon", v.sufficient_epsilon},
                    {"bad_primes", bad},
                    {"necessary_epsilon_floor", v.necessary_epsilon_floor ? json(*v.necessary_epsilon_floor) : json(nullptr)},
                    {"spectral_epsilon_floor", v.spectral_epsilon_floor}};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::CharDividesDegree) throw;
    j["verdict"] = nullptr;
    j["verdict_refused"] = error_json(e.kind(), e.what());
  }

  if (!edges_path.empty()) {
    std::ofstream out(edges_path);
    if (!out) fail(ErrorKind::InvalidArgument, "cannot write " + edges_path);
    for (const auto& [u, v] : edge_list(g)) out << u << ' ' << v << '\n';
    j["edges_file"] = edges_path;
  }
  return finish(std::move(j), std::move(csv), ctx, trace_ok && mixing_ok ? kOk : kBoundFailed);
}

}  // namespace

CommandResult dispatch(const std::vector<std::string>& args, const Limits& limits) {
  CLI::App app{"Finite principal ideal rings: character sums, polynomial averages and Paley-type graphs", "fpir"};
  app.require_subcommand(1);
  app.fallthrough();

  Context ctx;
  ctx.limits = limits;
  bool json_flag = false;
  app.add_flag("--json", json_flag, "JSON output (default)");
  app.add_flag("--csv", ctx.csv, "CSV output");
  app.add_option("--seed", ctx.seed, "Seed for every random choice");

  std::function<CommandResult()> job;

  auto* ring = app.add_subcommand("ring", "Ring constructors");
  ring->require_subcommand(1);
  auto* info = ring->add_subcommand("info", "Order, characteristic, lpf, units and prime ideals");
  std::string spec;
  bool characters = false;
  info->add_option("spec", spec, "Ring spec")->required();
  info->add_flag("--characters", characters, "Emit the character table as CSV");
  info->callback([&] { job = [&] { return cmd_ring_info(ctx, spec, characters); }; });

  auto* poly = app.add_subcommand("poly", "Polynomial invariants");
  poly->require_subcommand(1);
  auto* ddeg = poly->add_subcommand("ddeg", "Derivational degree");
  std::string ring_spec, lit, mode = "auto";
  ddeg->add_option("--ring", ring_spec)->required();
  ddeg->add_option("--poly", lit)->required();
  ddeg->add_option("--mode", mode)->check(CLI::IsMember({"auto", "exact", "bound"}));
  ddeg->callback([&] { job = [&] { return cmd_ddeg(ctx, ring_spec, lit, mode); }; });

  auto* sub = app.add_subcommand("subgroup", "Subgroup generated by polynomial values");
  bool raw = false;
  sub->add_option("--ring", ring_spec)->required();
  sub->add_option("--poly", lit)->required();
  sub->add_flag("--raw", raw, "Close {P(x)} instead of {P(x) - P(0)}");
  sub->callback([&] { job = [&] { return cmd_subgroup(ctx, ring_spec, lit, raw); }; });

  auto* expsum = app.add_subcommand("expsum", "Exponential sums against the character bound");
  expsum->add_option("--ring", ring_spec)->required();
  expsum->add_option("--poly", lit)->required();
  expsum->callback([&] { job = [&] { return cmd_expsum(ctx, ring_spec, lit); }; });

  auto* te = app.add_subcommand("tebound", "L2 distance between polynomial and subgroup averages");
  std::size_t random = 1;
  te->add_option("--ring", ring_spec)->required();
  te->add_option("--poly", lit)->required();
  te->add_option("--random", random, "Number of random functions");
  te->callback([&] { job = [&] { return cmd_tebound(ctx, ring_spec, lit, random); }; });

  auto* vdc = app.add_subcommand("vdc", "van der Corput inequality on random functions");
  std::string gens;
  unsigned k = 1;
  vdc->add_option("--ring", ring_spec)->required();
  auto* gen_opt = vdc->add_option("--subgroup", gens, "Generators of H (element indices)");
  vdc->add_option("--poly", lit, "Use the value subgroup of this polynomial")->excludes(gen_opt);
  vdc->add_option("--k", k)->check(CLI::Range(1, 8));
  vdc->add_option("--random", random);
  vdc->callback([&] { job = [&] { return cmd_vdc(ctx, ring_spec, gens, lit, k, random); }; });

  auto* rc = app.add_subcommand("rootcount", "Root counts against the nonzero-polynomial bound");
  std::string nested;
  std::size_t rc_random = 0;
  unsigned vars = 1, max_degree = 4;
  rc->add_option("--ring", ring_spec)->required();
  auto* nested_opt = rc->add_option("--poly", nested, "Nested coefficient lists, e.g. [[0,1],[1]]");
  rc->add_option("--random", rc_random, "Sweep this many random polynomials instead")->excludes(nested_opt);
  rc->add_option("--vars", vars);
  rc->add_option("--max-degree", max_degree);
  rc->callback([&] {
    if (nested.empty() && rc_random == 0) throw CLI::ValidationError("--poly or --random is required");
    job = [&] { return cmd_rootcount(ctx, ring_spec, nested, rc_random, vars, max_degree); };
  });

  auto* sk = app.add_subcommand("sarkozy", "Difference-free sets and the Sarkozy bound");
  std::string search = "auto", setA, setB;
  sk->add_option("--ring", ring_spec)->required();
  sk->add_option("--poly", lit)->required();
  sk->add_option("--mode", search)->check(CLI::IsMember({"auto", "exact", "greedy"}));
  sk->add_option("--A", setA, "Set A for the configuration count");
  sk->add_option("--B", setB, "Set B for the configuration count");
  sk->callback([&] { job = [&] { return cmd_sarkozy(ctx, ring_spec, lit, search, setA, setB); }; });

  auto* inter = app.add_subcommand("intersective", "Bounded search for moduli without roots");
  std::string family = "integers";
  std::uint64_t p = 0, bound = 50;
  inter->add_option("--family", family)->check(CLI::IsMember({"integers", "fpt"}));
  inter->add_option("--p", p, "Characteristic for the fpt family");
  inter->add_option("--poly", lit, "Coefficients c0,c1,...; for fpt each is t-coefficients joined by ':'")->required();
  inter->add_option("--bound", bound);
  inter->callback([&] { job = [&] { return cmd_intersective(ctx, family, p, lit, bound); }; });

  auto* paley = app.add_subcommand("paley", "Paley-type graph spectrum and uniformity");
  unsigned d = 2;
  std::string sets = "structured", edges;
  paley->add_option("--ring", ring_spec)->required();
  paley->add_option("--d", d)->check(CLI::Range(2u, 1u << 20));
  paley->add_option("--sets", sets, "exhaustive | structured | sampled:<n>:<seed> | file:<path>");
  paley->add_option("--edges", edges, "Write the edge list to this file");
  paley->callback([&] { job = [&] { return cmd_paley(ctx, ring_spec, d, sets, edges); }; });

  auto* batch = app.add_subcommand("batch", "Run a JSON manifest of jobs");
  std::string manifest;
  batch->add_option("manifest", manifest)->required();
  batch->callback([&] { job = [&] { return run_batch(manifest, ctx.limits); }; });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    CommandResult r;
    r.text = app.help();
    return r;
  } catch (const CLI::ParseError& e) {
    CommandResult r;
    r.exit_code = kUsage;
    r.error = error_json(ErrorKind::ParseError, e.what());
    return r;
  }
  if (!job) {
    CommandResult r;
    r.exit_code = kUsage;
    r.error = error_json(ErrorKind::ParseError, "no command given");
    return r;
  }
  try {
    return job();
  } catch (const Error& e) {
    CommandResult r;
    r.exit_code = exit_code_for(e.kind());
    r.error = error_json(e.kind(), e.what());
    return r;
  }
}

}  // namespace fpir::cli
