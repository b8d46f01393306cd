#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace fpir::nt {

using u64 = std::uint64_t;

constexpr u64 gcd(u64 a, u64 b) {
  while (b != 0) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr u64 lcm(u64 a, u64 b) { return a / gcd(a, b) * b; }

constexpr bool is_prime(u64 n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (u64 d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Prime factorization in ascending prime order.
std::vector<std::pair<u64, unsigned>> factorize(u64 n);

/// (p, e) with n = p^e, or nullopt when n is not a prime power.
std::optional<std::pair<u64, unsigned>> prime_power(u64 n);

/// base^exp, or nullopt on overflow past `cap`.
std::optional<u64> checked_pow(u64 base, unsigned exp, u64 cap = ~u64{0});

u64 euler_phi(u64 n);

/// Digit sum of n in base b.
constexpr unsigned digit_sum(u64 n, u64 b) {
  unsigned s = 0;
  while (n > 0) {
    s += static_cast<unsigned>(n % b);
    n /= b;
  }
  return s;
}

constexpr u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

}  // namespace fpir::nt
