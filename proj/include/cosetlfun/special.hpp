#pragma once

#include <array>
#include <cmath>

#include "cosetlfun/error.hpp"

namespace cosetlfun::special {

inline constexpr int kBernoulliMax = 40;

/// a[n] = B_n / n!, from the generating function x/(e^x - 1):
/// sum_{j=0}^{n} a[j] / (n+1-j)! = 0 for n >= 1.
inline const std::array<long double, kBernoulliMax + 1>& bernoulli_over_factorial() {
  static const auto table = [] {
    std::array<long double, kBernoulliMax + 1> a{};
    std::array<long double, kBernoulliMax + 2> inv_fact{};
    inv_fact[0] = 1.0L;
    for (int i = 1; i <= kBernoulliMax + 1; ++i) inv_fact[i] = inv_fact[i - 1] / i;
    a[0] = 1.0L;
    for (int n = 1; n <= kBernoulliMax; ++n) {
      long double s = 0.0L;
      for (int j = 0; j < n; ++j) s += a[j] * inv_fact[n + 1 - j];
      a[n] = -s;
    }
    // Odd-index entries past B_1 vanish exactly; clear the rounding residue.
    for (int n = 3; n <= kBernoulliMax; n += 2) a[n] = 0.0L;
    return a;
  }();
  return table;
}

/// B_n for 0 <= n <= kBernoulliMax.
inline long double bernoulli(int n) {
  if (n < 0 || n > kBernoulliMax) fail(errc::precondition_violated, "Bernoulli index out of range");
  long double fact = 1.0L;
  for (int i = 2; i <= n; ++i) fact *= i;
  return bernoulli_over_factorial()[n] * fact;
}

/// Euler's constant from Euler-Maclaurin applied to the harmonic numbers:
/// gamma = H_N - log N - 1/(2N) + sum_k B_{2k} / (2k N^{2k}).
inline long double euler_gamma() {
  static const long double value = [] {
    constexpr int n = 32;
    long double h = 0.0L;
    for (int i = 1; i <= n; ++i) h += 1.0L / i;
    long double g = h - std::log(static_cast<long double>(n)) - 1.0L / (2.0L * n);
    long double npow = static_cast<long double>(n) * n;
    long double current = npow;
    for (int k = 1; k <= 8; ++k) {
      g += bernoulli(2 * k) / (2.0L * k * current);
      current *= npow;
    }
    return g;
  }();
  return value;
}

/// psi(x) = Gamma'/Gamma(x) for real x > 0: upward recurrence, then the asymptotic series.
inline long double digamma(long double x) {
  if (!(x > 0.0L)) fail(errc::precondition_violated, "digamma needs x > 0");
  long double shift = 0.0L;
  while (x < 32.0L) {
    shift -= 1.0L / x;
    x += 1.0L;
  }
  const long double inv2 = 1.0L / (x * x);
  long double result = std::log(x) - 0.5L / x;
  long double power = inv2;
  for (int k = 1; k <= 10; ++k) {
    result -= bernoulli(2 * k) / (2.0L * k) * power;
    power *= inv2;
  }
  return result + shift;
}

}  // namespace cosetlfun::special
