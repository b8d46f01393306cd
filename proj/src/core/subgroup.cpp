#include "fpir/subgroup.hpp"

#include <algorithm>

namespace fpir {

SubgroupSet SubgroupSet::generated_by(const Ring& R, std::span<const Elem> gens) {
  SubgroupSet H;
  H.order_ = R.order();
  H.bits_.assign((H.order_ + 63) / 64, 0);
  H.insert(0);
  H.generators_.assign(gens.begin(), gens.end());
  std::sort(H.generators_.begin(), H.generators_.end());
  H.generators_.erase(std::unique(H.generators_.begin(), H.generators_.end()), H.generators_.end());

  std::vector<Elem> old;
  for (Elem g : H.generators_) {
    if (!R.contains(g)) fail(ErrorKind::InvalidArgument, "generator out of range");
    if (H.contains(g)) continue;
    H.basis_.push_back(g);
    // Add cosets H + j*g until j*g falls back into the subgroup. Since
    // j*g lands in an earlier coset only once it lands in H, checking the
    // growing set is equivalent to checking the old one.
    old = H.elements_;
    for (Elem c = g; !H.contains(c); c = R.add(c, g)) {
      for (Elem h : old) H.insert(R.add(h, c));
    }
    if (H.elements_.size() == H.order_) break;
  }
  std::sort(H.elements_.begin(), H.elements_.end());
  return H;
}

SubgroupSet SubgroupSet::from_elements(const Ring& R, std::span<const Elem> elems) {
  std::vector<Elem> sorted(elems.begin(), elems.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (Elem x : sorted) {
    if (!R.contains(x)) fail(ErrorKind::InvalidArgument, "element out of range");
  }
  if (sorted.empty() || sorted.front() != 0) fail(ErrorKind::NotASubgroup, "set does not contain 0");
  SubgroupSet H = generated_by(R, sorted);
  if (H.elements_ != sorted) fail(ErrorKind::NotASubgroup, "set is not closed under addition");
  return H;
}

SubgroupSet SubgroupSet::whole(const Ring& R) {
  std::vector<Elem> gens;
  for (const auto& c : R.coordinates()) gens.push_back(static_cast<Elem>(c.stride));
  return generated_by(R, gens);
}

SubgroupSet SubgroupSet::trivial(const Ring& R) {
  const Elem zero = 0;
  return generated_by(R, std::span<const Elem>(&zero, 1));
}

SubgroupSet value_subgroup_from_values(const Ring& R, std::span<const Elem> values, Elem constant,
                                       bool subtract_constant) {
  std::vector<Elem> gens(values.begin(), values.end());
  if (subtract_constant) {
    for (Elem& v : gens) v = R.sub(v, constant);
  }
  return SubgroupSet::generated_by(R, gens);
}

SubgroupSet value_subgroup(const Ring& R, const Polynomial& P, bool subtract_constant) {
  const auto values = eval_all(R, P);
  return value_subgroup_from_values(R, values, P.constant_term(), subtract_constant);
}

bool constant_in_subgroup(const Ring& R, const Polynomial& P) {
  return value_subgroup(R, P, true).contains(P.constant_term());
}

std::complex<double> coset_average(const Ring& R, const SubgroupSet& H,
                                   std::span<const std::complex<double>> f, Elem shift, Elem x) {
  if (f.size() != R.order()) fail(ErrorKind::InvalidArgument, "function table size does not match ring order");
  const Elem base = R.add(x, shift);
  std::complex<double> acc = 0.0;
  for (Elem z : H.elements()) acc += f[R.add(base, z)];
  return acc / static_cast<double>(H.size());
}

std::shared_ptr<const SubgroupSet> SubgroupCache::get(const Ring& R, const Polynomial& P,
                                                      bool subtract_constant) {
  std::string key = R.spec() + "|" + to_literal(P) + (subtract_constant ? "|1" : "|0");
  {
    std::lock_guard lock(mu_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  auto H = std::make_shared<const SubgroupSet>(value_subgroup(R, P, subtract_constant));
  std::lock_guard lock(mu_);
  return entries_.emplace(std::move(key), std::move(H)).first->second;
}

std::size_t SubgroupCache::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

}  // namespace fpir
