#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "cosetlfun/modular.hpp"

namespace cosetlfun {

using cplx = std::complex<double>;

/// e(num/den) = exp(2 pi i num/den). The fraction is reduced exactly before rounding.
inline cplx e_turns(u128 num, u128 den) {
  num %= den;
  double r = static_cast<double>(num) / static_cast<double>(den);
  if (r > 0.5) r -= 1.0;
  const double theta = 2.0 * std::numbers::pi * r;
  return {std::cos(theta), std::sin(theta)};
}

/// e_q(x) = e(x/q) for any integer x.
inline cplx e_mod(i64 x, i64 q) { return e_turns(static_cast<u128>(mod_floor(x, q)), static_cast<u128>(q)); }

/// A rational number of turns num/den with 0 <= num < den, gcd(num, den) = 1.
struct Angle {
  i64 num = 0;
  i64 den = 1;

  static Angle make(i64 num, i64 den) {
    num = mod_floor(num, den);
    const i64 g = std::gcd(num, den);
    return {num / g, den / g};
  }
  cplx value() const { return e_turns(static_cast<u128>(num), static_cast<u128>(den)); }
  bool operator==(const Angle&) const = default;
};

enum class Parity { all, even, odd };

constexpr std::string_view to_string(Parity p) noexcept {
  switch (p) {
    case Parity::all: return "all";
    case Parity::even: return "even";
    case Parity::odd: return "odd";
  }
  return "all";
}

// A Dirichlet character mod p^k, stored as the exponent c with chi(g^t) = e(c t / phi(q)).
class DirichletCharacter {
 public:
  DirichletCharacter(ModulusPtr modulus, i64 exponent)
      : mod_(std::move(modulus)), c_(mod_floor(exponent, mod_->phi())) {}

  const PrimePowerModulus& modulus() const noexcept { return *mod_; }
  const ModulusPtr& modulus_ptr() const noexcept { return mod_; }
  i64 exponent() const noexcept { return c_; }
  i64 q() const noexcept { return mod_->q(); }

  /// Numerator of chi(n) over phi(q), or nullopt when p | n.
  std::optional<i64> angle_numerator(i64 n) const noexcept {
    const i64 s = mod_->dlog(n);
    if (s < 0) return std::nullopt;
    return mulmod(c_, s, mod_->phi());
  }

  std::optional<Angle> angle(i64 n) const {
    const auto a = angle_numerator(n);
    if (!a) return std::nullopt;
    return Angle::make(*a, mod_->phi());
  }

  cplx operator()(i64 n) const {
    const auto a = angle_numerator(n);
    if (!a) return {0.0, 0.0};
    return e_turns(static_cast<u128>(*a), static_cast<u128>(mod_->phi()));
  }

  DirichletCharacter conj() const { return {mod_, -c_}; }
  DirichletCharacter operator*(const DirichletCharacter& o) const { return {mod_, c_ + o.c_}; }

  bool is_principal() const noexcept { return c_ == 0; }
  bool is_even() const noexcept { return c_ % 2 == 0; }
  int parity_sign() const noexcept { return is_even() ? 1 : -1; }

  /// f with conductor p^f: 0 for the principal character, else k - v_p(c).
  int conductor_exponent() const noexcept {
    if (c_ == 0) return 0;
    return mod_->k() - p_valuation(c_, mod_->p());
  }
  i64 conductor() const noexcept { return mod_->p_power(conductor_exponent()); }
  bool is_primitive() const noexcept { return conductor_exponent() == mod_->k(); }

  bool operator==(const DirichletCharacter& o) const noexcept { return *mod_ == *o.mod_ && c_ == o.c_; }

 private:
  ModulusPtr mod_;
  i64 c_;
};

inline cplx evaluate(const DirichletCharacter& chi, i64 n) { return chi(n); }

inline i64 conductor(const DirichletCharacter& chi) { return chi.conductor(); }

/// w with ell_chi = c * w (mod p^{k-1}); a unit.
inline i64 postnikov_multiplier(const PrimePowerModulus& m) {
  if (m.k() < 2) fail(errc::degenerate_conductor, "ell is defined only for k >= 2");
  const i64 mod = m.p_power(m.k() - 1);
  const i64 log_unit = padic_log(1 + m.p(), m);
  const i64 ind_scaled = m.dlog(1 + m.p()) / (m.p() - 1);
  return mulmod(ind_scaled, mod_inverse(log_unit, mod), mod);
}

/// ell_chi in [0, p^{k-1}): chi(1 + p x) = e_{p^k}(ell_chi log(1 + p x)).
///
/// chi(1+p) = e_{p^{k-1}}(c ind(1+p)/(p-1)) and log(1+p) = p u with u a unit, so
/// ell_chi = c ind(1+p)/(p-1) u^{-1} (mod p^{k-1}).
inline i64 postnikov_ell(const DirichletCharacter& chi) {
  const auto& m = chi.modulus();
  const i64 w = postnikov_multiplier(m);
  return mulmod(chi.exponent(), w, m.p_power(m.k() - 1));
}

/// The least exponent in [0, phi) whose character has the given ell and parity.
inline DirichletCharacter character_with_ell(const ModulusPtr& m, i64 ell, Parity parity = Parity::all) {
  const i64 mod = m->p_power(m->k() - 1);
  const i64 c0 = mulmod(ell, mod_inverse(postnikov_multiplier(*m), mod), mod);
  for (i64 c = c0; c < m->phi(); c += mod) {
    if (parity == Parity::all || (parity == Parity::even) == (c % 2 == 0)) return {m, c};
  }
  fail(errc::precondition_violated, "no character with requested ell and parity");
}

/// {base * psi : psi of conductor dividing p^j}, filtered by parity, ascending exponent.
inline std::vector<DirichletCharacter> enumerate_coset(const DirichletCharacter& base, int j, Parity parity = Parity::all) {
  const auto& m = base.modulus();
  if (j < 0 || j > m.k()) fail(errc::precondition_violated, "coset level j out of [0, k]");
  const i64 step = m.p_power(m.k() - j);
  std::vector<DirichletCharacter> out;
  for (i64 s = 0; s < m.phi(); s += step) {
    DirichletCharacter eta(base.modulus_ptr(), base.exponent() + s);
    if (parity == Parity::all || (parity == Parity::even) == eta.is_even()) out.push_back(eta);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.exponent() < b.exponent(); });
  return out;
}

// chi H_{p^j} (or its parity slice) for a primitive base character and 0 <= j < k.
struct CosetSpec {
  DirichletCharacter base;
  int j = 0;
  Parity parity = Parity::all;

  void validate() const {
    if (!base.is_primitive()) fail(errc::not_primitive, "coset base must be primitive mod p^k");
    if (j < 0 || j >= base.modulus().k()) fail(errc::precondition_violated, "coset level must satisfy 0 <= j < k");
  }

  /// Smallest member exponent; identifies the coset.
  i64 canonical_exponent() const {
    const i64 step = base.modulus().p_power(base.modulus().k() - j);
    return base.exponent() % step;
  }
};

inline std::vector<DirichletCharacter> enumerate_coset(const CosetSpec& spec) {
  spec.validate();
  return enumerate_coset(spec.base, spec.j, spec.parity);
}

inline std::vector<DirichletCharacter> all_characters(const ModulusPtr& m) {
  std::vector<DirichletCharacter> out;
  out.reserve(static_cast<std::size_t>(m->phi()));
  for (i64 c = 0; c < m->phi(); ++c) out.emplace_back(m, c);
  return out;
}

inline std::vector<DirichletCharacter> primitive_characters(const ModulusPtr& m, Parity parity = Parity::all) {
  std::vector<DirichletCharacter> out;
  for (i64 c = 0; c < m->phi(); ++c) {
    DirichletCharacter chi(m, c);
    if (!chi.is_primitive()) continue;
    if (parity != Parity::all && (parity == Parity::even) != chi.is_even()) continue;
    out.push_back(chi);
  }
  return out;
}

}  // namespace cosetlfun
