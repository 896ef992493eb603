#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>

#include "cosetlfun/characters.hpp"
#include "cosetlfun/gauss.hpp"
#include "cosetlfun/special.hpp"

namespace cosetlfun {

struct HurwitzValue {
  cplx value;
  double tail_bound = 0.0;  // Euler-Maclaurin remainder bound
  double magnitude = 0.0;   // sum of |terms|, drives the rounding estimate
};

// Euler-Maclaurin evaluation of zeta(s, x) for one fixed s, reusable across x.
//
//   zeta(s, x) = sum_{n<N} (n+x)^{-s} + (N+x)^{1-s}/(s-1) + (N+x)^{-s}/2
//              + sum_{k=1}^{M} B_{2k}/(2k)! s(s+1)...(s+2k-2) (N+x)^{-s-2k+1} + R
//
// with |R| <= |T_{M+1}| |s+2M+1| / (Re s + 2M + 1), T_{M+1} the first omitted term.
class HurwitzZeta {
 public:
  static constexpr int kBernoulliTerms = 15;  // through B_30

  explicit HurwitzZeta(cplx s) : s_(s) {
    if (s == cplx{1.0, 0.0}) fail(errc::pole_at_one, "zeta(s, x) has a pole at s = 1");
    if (!(s.real() > 0.0)) fail(errc::precondition_violated, "Hurwitz evaluation needs Re(s) > 0");
    shift_ = static_cast<int>(std::ceil(10.0 + 2.0 * std::abs(s)));
    const auto& a = special::bernoulli_over_factorial();
    cplx poch = s;  // s(s+1)...(s+2k-2)
    for (int k = 1; k <= kBernoulliTerms + 1; ++k) {
      coef_[k - 1] = static_cast<double>(a[2 * k]) * poch;
      poch *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
    }
  }

  cplx s() const noexcept { return s_; }
  int shift() const noexcept { return shift_; }

  HurwitzValue evaluate(double x) const {
    if (!(x > 0.0)) fail(errc::precondition_violated, "Hurwitz evaluation needs x > 0");
    cplx sum{0.0, 0.0};
    double magnitude = 0.0;
    for (int n = 0; n < shift_; ++n) {
      const cplx term = std::exp(-s_ * std::log(n + x));
      sum += term;
      magnitude += std::abs(term);
    }
    const double big = shift_ + x;
    const cplx big_pow = std::exp(-s_ * std::log(big));  // (N+x)^{-s}
    const cplx head = big_pow * big / (s_ - 1.0) + 0.5 * big_pow;
    sum += head;
    magnitude += std::abs(head);
    const double inv2 = 1.0 / (big * big);
    cplx power = big_pow / big;  // (N+x)^{-s-1}
    for (int k = 0; k < kBernoulliTerms; ++k) {
      const cplx term = coef_[k] * power;
      sum += term;
      magnitude += std::abs(term);
      power *= inv2;
    }
    const int m = kBernoulliTerms;
    const double next = std::abs(coef_[m] * power);
    const double tail = next * std::abs(s_ + static_cast<double>(2 * m + 1)) / (s_.real() + 2 * m + 1);
    return {sum, tail, magnitude};
  }

 private:
  cplx s_;
  int shift_ = 0;
  std::array<cplx, kBernoulliTerms + 1> coef_{};
};

/// zeta(s, x) for Re(s) > 0, s != 1, x > 0.
inline cplx hurwitz_zeta(cplx s, double x) { return HurwitzZeta(s).evaluate(x).value; }

struct LValue {
  cplx s;
  i64 p = 0;
  int k = 0;
  i64 c = 0;
  cplx value;
  double abs_error_bound = 0.0;
};

/// L(1/2 + it, chi) = q^{-s} sum_{a=1}^{q} chi(a) zeta(s, a/q).
inline LValue l_value(const DirichletCharacter& chi, double t, const HurwitzZeta* reuse = nullptr) {
  if (chi.is_principal()) fail(errc::principal_character, "L(s, chi) for principal chi has a pole");
  const cplx s{0.5, t};
  std::optional<HurwitzZeta> local;
  if (reuse == nullptr || reuse->s() != s) {
    local.emplace(s);
    reuse = &*local;
  }
  const auto& m = chi.modulus();
  const i64 q = m.q();
  const double qd = static_cast<double>(q);
  cplx sum{0.0, 0.0};
  double tail = 0.0;
  double magnitude = 0.0;
  for (i64 a = 1; a < q; ++a) {
    if (!m.is_unit(a)) continue;
    const HurwitzValue h = reuse->evaluate(static_cast<double>(a) / qd);
    sum += chi(a) * h.value;
    tail += h.tail_bound;
    magnitude += h.magnitude;
  }
  const double scale = std::pow(qd, -0.5);
  const cplx value = std::exp(-s * std::log(qd)) * sum;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double rounding = 8.0 * eps * magnitude * scale;
  return {s, m.p(), m.k(), chi.exponent(), value, scale * tail + rounding};
}

struct FunctionalEquationCheck {
  cplx lhs;       // L(1/2, chi)
  cplx rhs;       // eps(chi) L(1/2, conj chi)
  double residual = 0.0;
  double error_bound = 0.0;
};

/// L(1/2, chi) = eps(chi) L(1/2, conj chi) for primitive chi; the gamma factors
/// coincide at s = 1/2 so the completed-function identity reduces to this.
inline FunctionalEquationCheck functional_equation_check(const DirichletCharacter& chi,
                                                         const HurwitzZeta* reuse = nullptr) {
  if (!chi.is_primitive()) fail(errc::not_primitive, "functional equation needs a primitive character");
  const LValue direct = l_value(chi, 0.0, reuse);
  const LValue dual = l_value(chi.conj(), 0.0, reuse);
  const cplx eps = root_number(chi);
  const cplx rhs = eps * dual.value;
  return {direct.value, rhs, std::abs(direct.value - rhs), direct.abs_error_bound + dual.abs_error_bound};
}

}  // namespace cosetlfun
