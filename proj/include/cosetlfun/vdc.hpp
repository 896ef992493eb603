#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "cosetlfun/characters.hpp"

namespace cosetlfun {

// Coefficients a_n for n in [start, start + size()).
struct FiniteSequence {
  i64 support_start = 1;
  std::vector<cplx> coefficients;

  FiniteSequence() = default;
  FiniteSequence(i64 start, std::vector<cplx> coeffs) : support_start(start), coefficients(std::move(coeffs)) {
    if (coefficients.empty()) fail(errc::precondition_violated, "sequence must have at least one coefficient");
    for (const auto& z : coefficients) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) fail(errc::precondition_violated, "non-finite coefficient");
    }
  }

  i64 size() const noexcept { return static_cast<i64>(coefficients.size()); }
  i64 end() const noexcept { return support_start + size(); }

  /// a_n, zero off the support.
  cplx operator[](i64 n) const noexcept {
    const i64 idx = n - support_start;
    return (idx < 0 || idx >= size()) ? cplx{} : coefficients[static_cast<std::size_t>(idx)];
  }
};

/// Coefficients uniform in the unit square [0,1) x [0,1) from a seeded 64-bit generator.
inline FiniteSequence random_sequence(std::mt19937_64& rng, i64 length, i64 start = 1) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<cplx> c(static_cast<std::size_t>(length));
  for (auto& z : c) {
    const double re = unit(rng);
    z = {re, unit(rng)};
  }
  return {start, std::move(c)};
}

/// sum_n a_{n+h} conj(a_n).
inline cplx autocorrelation(const FiniteSequence& a, i64 h) {
  cplx sum{};
  const auto n = a.size();
  for (i64 i = 0; i < n; ++i) {
    const i64 shifted = i + h;
    if (shifted < 0 || shifted >= n) continue;
    sum += a.coefficients[static_cast<std::size_t>(shifted)] * std::conj(a.coefficients[static_cast<std::size_t>(i)]);
  }
  return sum;
}

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double imag_residue = 0.0;

  double margin() const noexcept { return rhs - lhs; }
  bool holds(double tol = 1e-9) const noexcept { return lhs <= rhs + tol * (1.0 + std::abs(rhs)); }
};

namespace detail {

/// Real part of a conjugate-symmetric h-sum; the imaginary part must vanish.
inline double real_of_symmetric(cplx z, double scale) {
  if (std::abs(z.imag()) > 1e-10 * (1.0 + scale)) {
    fail(errc::precondition_violated, "symmetric shift sum has a nonzero imaginary part");
  }
  return z.real();
}

}  // namespace detail

/// |sum a_n|^2 <= (1 + N/H) sum_{|h|<H} (1 - |h|/H) sum_n a_{n+h} conj(a_n), N the support length.
inline InequalityCheck vdc_inequality_check(const FiniteSequence& a, i64 shifts) {
  if (shifts < 1) fail(errc::bad_shift_bound, "H must be >= 1");
  cplx total{};
  double energy = 0.0;
  for (const auto& z : a.coefficients) {
    total += z;
    energy += std::norm(z);
  }
  const double hd = static_cast<double>(shifts);
  cplx sym{};
  for (i64 h = -(shifts - 1); h < shifts; ++h) {
    sym += (1.0 - std::abs(static_cast<double>(h)) / hd) * autocorrelation(a, h);
  }
  const double inner = detail::real_of_symmetric(sym, hd * energy);
  const double rhs = (1.0 + static_cast<double>(a.size()) / hd) * inner;
  return {std::norm(total), rhs, sym.imag()};
}

/// D_H(x) = sum_{1 <= h <= H} e(h x).
inline cplx dirichlet_kernel(i64 shifts, double x) {
  if (shifts < 1) fail(errc::bad_shift_bound, "H must be >= 1");
  cplx sum{};
  for (i64 h = 1; h <= shifts; ++h) {
    const double turns = static_cast<double>(h) * x;
    const double theta = 2.0 * std::numbers::pi * (turns - std::round(turns));
    sum += cplx{std::cos(theta), std::sin(theta)};
  }
  return sum;
}

struct IdentityCheck {
  double lhs = 0.0;
  double rhs = 0.0;

  double abs_diff() const noexcept { return std::abs(lhs - rhs); }
  bool holds(double rel_tol) const noexcept { return abs_diff() <= rel_tol * (1.0 + std::abs(lhs)); }
};

/// int_0^1 |D_H(x) A(x)|^2 dx two ways: Parseval on the coefficients of D_H A
/// (a convolution with the indicator of [1, H]) versus
/// sum_{|h|<H} (H - |h|) sum_n a_{n+h} conj(a_n).
inline IdentityCheck amplified_l2_identity(const FiniteSequence& a, i64 shifts) {
  if (shifts < 1) fail(errc::bad_shift_bound, "H must be >= 1");
  const i64 n = a.size();
  // Coefficient of e(m x) in D_H A is sum_{1<=h<=H} a_{m-h}; a running window sum.
  std::vector<cplx> product(static_cast<std::size_t>(n + shifts - 1));
  cplx window{};
  for (i64 idx = 0; idx < n + shifts - 1; ++idx) {
    if (idx < n) window += a.coefficients[static_cast<std::size_t>(idx)];
    if (idx - shifts >= 0) window -= a.coefficients[static_cast<std::size_t>(idx - shifts)];
    product[static_cast<std::size_t>(idx)] = window;
  }
  double parseval = 0.0;
  for (const auto& z : product) parseval += std::norm(z);

  cplx sym{};
  double energy = 0.0;
  for (const auto& z : a.coefficients) energy += std::norm(z);
  for (i64 h = -(shifts - 1); h < shifts; ++h) {
    sym += static_cast<double>(shifts - std::abs(h)) * autocorrelation(a, h);
  }
  return {parseval, detail::real_of_symmetric(sym, static_cast<double>(shifts) * energy)};
}

struct CosetShiftCheck {
  double lhs = 0.0;          // sum_{eta in chi H_{q0}} |sum_n a_n eta(n)|^2
  double rhs = 0.0;          // phi(q0) sum_h sum_n a_{n+h q0} conj(a_n) chi(n+h q0) conj(chi)(n)
  double diagonal = 0.0;     // the h = 0 part of rhs
  double base_square = 0.0;  // |sum_n a_n chi(n)|^2
  i64 max_shift = 0;         // largest |h| with overlapping support

  bool holds(double rel_tol) const noexcept { return std::abs(lhs - rhs) <= rel_tol * (1.0 + std::abs(lhs)); }
};

/// Squaring out the coset sum and applying orthogonality over H_{q0}, q0 = p^j.
inline CosetShiftCheck coset_shift_identity(const FiniteSequence& a, const DirichletCharacter& chi, int j) {
  const auto& m = chi.modulus();
  if (!chi.is_primitive()) fail(errc::not_primitive, "coset shift identity needs a primitive character");
  if (j < 0 || j > m.k()) fail(errc::precondition_violated, "need 0 <= j <= k");
  CosetShiftCheck out;

  for (const auto& eta : enumerate_coset(chi, j)) {
    cplx s{};
    for (i64 n = a.support_start; n < a.end(); ++n) s += a[n] * eta(n);
    out.lhs += std::norm(s);
    if (eta == chi) out.base_square = std::norm(s);
  }

  const i64 q0 = m.p_power(j);
  const double phi0 = static_cast<double>(phi_prime_power(m.p(), j));
  out.max_shift = (a.size() - 1) / q0;
  cplx sum{};
  double scale = 0.0;
  for (i64 h = -out.max_shift; h <= out.max_shift; ++h) {
    cplx part{};
    for (i64 n = a.support_start; n < a.end(); ++n) {
      const i64 shifted = n + h * q0;
      if (shifted < a.support_start || shifted >= a.end()) continue;
      part += a[shifted] * std::conj(a[n]) * chi(shifted) * std::conj(chi(n));
    }
    if (h == 0) out.diagonal = phi0 * part.real();
    sum += part;
    scale += std::abs(part);
  }
  out.rhs = phi0 * detail::real_of_symmetric(sum, scale);
  return out;
}

}  // namespace cosetlfun
