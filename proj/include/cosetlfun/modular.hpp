#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "cosetlfun/error.hpp"

namespace cosetlfun {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

// Moduli above this bound are rejected; products of two residues still fit in 128 bits.
inline constexpr i64 kMaxModulus = i64{1} << 40;

/// Least nonnegative residue of a modulo m (m > 0).
constexpr i64 mod_floor(i64 a, i64 m) noexcept {
  const i64 r = a % m;
  return r < 0 ? r + m : r;
}

constexpr i64 mulmod(i64 a, i64 b, i64 m) noexcept {
  return static_cast<i64>(static_cast<i128>(mod_floor(a, m)) * mod_floor(b, m) % m);
}

constexpr i64 powmod(i64 base, u64 exp, i64 m) noexcept {
  i64 result = 1 % m;
  base = mod_floor(base, m);
  while (exp > 0) {
    if (exp & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

/// Integer power with overflow detection against kMaxModulus.
inline i64 checked_pow(i64 base, int exp) {
  i64 r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > kMaxModulus / base) fail(errc::invalid_modulus, "power exceeds 2^40");
    r *= base;
  }
  return r;
}

/// Exponent of the prime p in n (n != 0).
constexpr int p_valuation(i64 n, i64 p) noexcept {
  if (n == 0) return 64;
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

/// Inverse of a modulo m, in [0, m).
inline i64 mod_inverse(i64 a, i64 m) {
  if (m < 1) fail(errc::invalid_modulus, "modulus must be positive");
  if (m == 1) return 0;
  i64 old_r = mod_floor(a, m), r = m;
  i64 old_s = 1, s = 0;
  while (r != 0) {
    const i64 quot = old_r / r;
    old_r -= quot * r;
    std::swap(old_r, r);
    old_s -= quot * s;
    std::swap(old_s, s);
  }
  if (old_r != 1) {
    fail(errc::not_invertible, std::to_string(a) + " mod " + std::to_string(m));
  }
  return mod_floor(old_s, m);
}

/// Jacobi symbol (a/q) for odd q >= 1, binary algorithm.
inline int jacobi_symbol(i64 a, i64 q) {
  if (q < 1 || q % 2 == 0) fail(errc::invalid_modulus, "Jacobi symbol needs odd q >= 1, got " + std::to_string(q));
  u64 x = static_cast<u64>(mod_floor(a, q));
  u64 n = static_cast<u64>(q);
  int sign = 1;
  while (x != 0) {
    while ((x & 1U) == 0) {
      x >>= 1U;
      const u64 r = n & 7U;
      if (r == 3 || r == 5) sign = -sign;
    }
    std::swap(x, n);
    if ((x & 3U) == 3 && (n & 3U) == 3) sign = -sign;
    x %= n;
  }
  return n == 1 ? sign : 0;
}

/// 1 if q = 1 (mod 4), i if q = 3 (mod 4).
inline std::complex<double> epsilon_q(i64 q) {
  if (q < 1 || q % 2 == 0) fail(errc::invalid_modulus, "epsilon_q needs odd q, got " + std::to_string(q));
  return q % 4 == 1 ? std::complex<double>{1.0, 0.0} : std::complex<double>{0.0, 1.0};
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 sp : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % sp == 0) return n == sp;
  }
  i64 d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (i64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    i64 x = powmod(a, static_cast<u64>(d), n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Distinct prime factors by trial division.
inline std::vector<i64> distinct_prime_factors(i64 n) {
  std::vector<i64> out;
  for (i64 f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Number of positive divisors of n >= 1.
inline i64 divisor_count(i64 n) {
  if (n < 1) fail(errc::precondition_violated, "divisor_count needs n >= 1");
  i64 count = 1;
  for (i64 f = 2; f * f <= n; ++f) {
    int e = 0;
    while (n % f == 0) {
      n /= f;
      ++e;
    }
    count *= e + 1;
  }
  if (n > 1) count *= 2;
  return count;
}

/// Euler phi of p^e for a prime p (phi(p^0) = 1).
inline i64 phi_prime_power(i64 p, int e) {
  return e == 0 ? 1 : checked_pow(p, e - 1) * (p - 1);
}

/// Least primitive root mod p^k. A primitive root mod p^2 is primitive mod every
/// higher power, so the order test runs mod p^min(k,2).
inline i64 least_primitive_root(i64 p, int k) {
  const int test_k = k < 2 ? k : 2;
  const i64 m = checked_pow(p, test_k);
  const i64 order = phi_prime_power(p, test_k);
  const std::vector<i64> primes = distinct_prime_factors(order);
  for (i64 g = 2; g < m; ++g) {
    if (g % p == 0) continue;
    bool primitive = true;
    for (i64 r : primes) {
      if (powmod(g, static_cast<u64>(order / r), m) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) return g;
  }
  fail(errc::invalid_modulus, "no primitive root found");
}

// The unit group modulo p^k for an odd prime p: cyclic of order p^{k-1}(p-1),
// generated by the least primitive root g, with an eager discrete-log table.
class PrimePowerModulus {
 public:
  PrimePowerModulus(i64 p, int k) : p_(p), k_(k) {
    if (p < 3 || !is_prime(p)) fail(errc::invalid_modulus, "p must be an odd prime, got " + std::to_string(p));
    if (k < 1) fail(errc::invalid_modulus, "k must be >= 1");
    q_ = checked_pow(p, k);
    phi_ = phi_prime_power(p, k);
    g_ = least_primitive_root(p, k);
    index_.assign(static_cast<std::size_t>(q_), -1);
    power_.resize(static_cast<std::size_t>(phi_));
    i64 x = 1;
    for (i64 s = 0; s < phi_; ++s) {
      index_[static_cast<std::size_t>(x)] = s;
      power_[static_cast<std::size_t>(s)] = x;
      x = mulmod(x, g_, q_);
    }
  }

  i64 p() const noexcept { return p_; }
  int k() const noexcept { return k_; }
  i64 q() const noexcept { return q_; }
  i64 phi() const noexcept { return phi_; }
  i64 generator() const noexcept { return g_; }

  /// p^e for 0 <= e <= k.
  i64 p_power(int e) const noexcept {
    i64 r = 1;
    for (int i = 0; i < e; ++i) r *= p_;
    return r;
  }

  bool is_unit(i64 n) const noexcept { return mod_floor(n, p_) != 0; }

  /// ind_g(n mod q) in [0, phi), or -1 when p | n.
  i64 dlog(i64 n) const noexcept { return index_[static_cast<std::size_t>(mod_floor(n, q_))]; }

  /// g^s mod q.
  i64 unit_from_index(i64 s) const noexcept { return power_[static_cast<std::size_t>(mod_floor(s, phi_))]; }

  bool operator==(const PrimePowerModulus& o) const noexcept { return p_ == o.p_ && k_ == o.k_; }

 private:
  i64 p_;
  int k_;
  i64 q_ = 0;
  i64 phi_ = 0;
  i64 g_ = 0;
  std::vector<i64> index_;
  std::vector<i64> power_;
};

using ModulusPtr = std::shared_ptr<const PrimePowerModulus>;

inline ModulusPtr make_modulus(i64 p, int k) { return std::make_shared<const PrimePowerModulus>(p, k); }

/// The p-adic logarithm of x = 1 (mod p), divided by p, as a residue mod p^{k-1}.
///
/// log(x) = sum_{i>=1} (-1)^{i+1} (x-1)^i / i always lies in pZ_p for odd p; the
/// returned value L satisfies log(x) = p L (mod p^k). With x - 1 = p z, the i-th
/// term of L is (-1)^{i+1} p^{i-v-1} z^i / u where i = p^v u, so everything stays
/// integral. Terms with i - v - 1 >= k - 1 vanish and the loop stops once
/// i - floor(log_p i) - 1 reaches k - 1.
inline i64 padic_log(i64 x, const PrimePowerModulus& m) {
  const i64 p = m.p();
  const int k = m.k();
  const i64 xr = mod_floor(x, m.q());
  if (xr % p != 1 % p) fail(errc::not_one_unit, std::to_string(x) + " is not 1 mod " + std::to_string(p));
  if (k == 1) return 0;
  const i64 mod = m.p_power(k - 1);
  const i64 z = mod_floor((xr - 1) / p, mod);

  i64 sum = 0;
  i64 z_pow = 1;
  for (i64 i = 1;; ++i) {
    int floor_log = 0;
    for (i64 t = p; t <= i; t *= p) ++floor_log;
    if (i - floor_log - 1 >= k - 1) break;
    z_pow = mulmod(z_pow, z, mod);
    const int v = p_valuation(i, p);
    const i64 e = i - v - 1;
    if (e >= k - 1) continue;
    i64 unit = i;
    for (int s = 0; s < v; ++s) unit /= p;
    i64 term = mulmod(mulmod(m.p_power(static_cast<int>(e)), z_pow, mod), mod_inverse(unit, mod), mod);
    sum = (i % 2 == 1) ? mod_floor(sum + term, mod) : mod_floor(sum - term, mod);
  }
  return sum;
}

}  // namespace cosetlfun
