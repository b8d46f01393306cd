#include "fpir/numtheory.hpp"

#include <cstdlib>
#include <string>

#include "fpir/error.hpp"

namespace fpir {

namespace {

std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0' || v == 0) return fallback;
  return v;
}

}  // namespace

Limits Limits::from_env() {
  Limits l;
  l.max_order = env_u64("FPIR_MAX_ORDER", l.max_order);
  l.work_budget = env_u64("FPIR_WORK_BUDGET", l.work_budget);
  return l;
}

namespace nt {

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::optional<std::pair<u64, unsigned>> prime_power(u64 n) {
  if (n < 2) return std::nullopt;
  auto f = factorize(n);
  if (f.size() != 1) return std::nullopt;
  return f.front();
}

std::optional<u64> checked_pow(u64 base, unsigned exp, u64 cap) {
  u64 r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base) return std::nullopt;
    r *= base;
  }
  if (r > cap) return std::nullopt;
  return r;
}

u64 euler_phi(u64 n) {
  u64 r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

}  // namespace nt
}  // namespace fpir
