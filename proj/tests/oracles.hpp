#pragma once

// Slow reference computations for the unit tests. Deliberately independent of
// the library's fast paths: no Hurwitz zeta, no discrete-log tables.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using i64 = std::int64_t;

inline i64 powmod(i64 b, i64 e, i64 m) {
  __int128 r = 1, x = b % m;
  if (x < 0) x += m;
  for (; e > 0; e >>= 1) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
  }
  return static_cast<i64>(r);
}

/// Character values chi(n) for 0 <= n < q, built by walking powers of g.
inline std::vector<cplx> character_table(i64 q, i64 phi, i64 g, i64 exponent) {
  std::vector<cplx> v(static_cast<std::size_t>(q), cplx{0.0, 0.0});
  i64 x = 1;
  for (i64 t = 0; t < phi; ++t) {
    const long double turns = static_cast<long double>((static_cast<__int128>(exponent) * t) % phi) / phi;
    const double theta = static_cast<double>(2.0L * std::numbers::pi_v<long double> * turns);
    v[static_cast<std::size_t>(x)] = {std::cos(theta), std::sin(theta)};
    x = static_cast<i64>(static_cast<__int128>(x) * g % q);
  }
  return v;
}

/// Smooth cutoff: 1 on [0,1], 0 on [2,inf), C-infinity in between.
inline double taper(double x) {
  if (x <= 1.0) return 1.0;
  if (x >= 2.0) return 0.0;
  auto f = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
  const double a = f(2.0 - x);
  const double b = f(x - 1.0);
  return a / (a + b);
}

/// L(1/2, chi) as the smoothed Dirichlet series sum chi(n) n^{-1/2} w(n/X), X = scale * q.
inline cplx smoothed_central_value(const std::vector<cplx>& chi, double scale) {
  const i64 q = static_cast<i64>(chi.size());
  const double X = scale * static_cast<double>(q);
  const i64 top = static_cast<i64>(2.0 * X) + 1;
  cplx sum{0.0, 0.0};
  for (i64 n = 1; n <= top; ++n) {
    const cplx c = chi[static_cast<std::size_t>(n % q)];
    if (c == cplx{0.0, 0.0}) continue;
    sum += c * (taper(static_cast<double>(n) / X) / std::sqrt(static_cast<double>(n)));
  }
  return sum;
}

/// zeta(s) for real s in (0,1) from the alternating eta series, accelerated
/// with the Cohen-Rodriguez Villegas-Zagier weights.
inline double zeta_via_eta(double s, int terms = 60) {
  const double n = terms;
  double d = std::pow(3.0 + std::sqrt(8.0), n);
  d = (d + 1.0 / d) / 2.0;
  double b = -1.0, c = -d, sum = 0.0;
  for (int k = 0; k < terms; ++k) {
    c = b - c;
    sum += c * std::pow(k + 1.0, -s);
    b = b * (k + n) * (k - n) / ((k + 0.5) * (k + 1.0));
  }
  const double eta = sum / d;
  return eta / (1.0 - std::pow(2.0, 1.0 - s));
}

inline int valuation(i64 n, i64 p) {
  int v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline i64 inverse(i64 a, i64 m) {
  // m is a prime power p^k; phi-based inverse keeps this independent of extended gcd.
  i64 p = 2;
  while (m % p != 0) ++p;
  const i64 phi = m / p * (p - 1);
  return powmod(a, phi - 1, m);
}

/// exp(p * y) mod p^k by the exponential series with exact valuation bookkeeping.
inline i64 padic_exp_of_p_times(i64 y, i64 p, int k) {
  i64 q = 1;
  for (int i = 0; i < k; ++i) q *= p;
  __int128 total = 1;
  int fact_val = 0;   // v_p(i!)
  i64 fact_unit = 1;  // i! / p^{v_p(i!)} mod q
  for (i64 i = 1; i < 4 * k * p + 8; ++i) {
    i64 u = i;
    const int v = valuation(u, p);
    for (int t = 0; t < v; ++t) u /= p;
    fact_val += v;
    fact_unit = static_cast<i64>(static_cast<__int128>(fact_unit) * (u % q) % q);
    const i64 shift = i - fact_val;  // exponent of p in p^i / i!
    if (shift >= k) continue;
    i64 term = powmod(y, i, q);
    for (i64 t = 0; t < shift; ++t) term = static_cast<i64>(static_cast<__int128>(term) * p % q);
    term = static_cast<i64>(static_cast<__int128>(term) * inverse(fact_unit, q) % q);
    total = (total + term) % q;
  }
  return static_cast<i64>(total);
}

}  // namespace oracle
