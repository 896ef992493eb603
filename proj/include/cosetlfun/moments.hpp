#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "cosetlfun/characters.hpp"
#include "cosetlfun/lcentral.hpp"
#include "cosetlfun/report.hpp"
#include "cosetlfun/special.hpp"

namespace cosetlfun {

// Which asymptotic applies to the even-slice coset moment at level j:
// thm11 for j < k <= 2j, thm12 for 2j <= k <= 3j, both at k = 2j.
enum class RecipeRegime { thm11, thm12, both, none };

constexpr std::string_view to_string(RecipeRegime r) noexcept {
  switch (r) {
    case RecipeRegime::thm11: return "thm11";
    case RecipeRegime::thm12: return "thm12";
    case RecipeRegime::both: return "both";
    case RecipeRegime::none: return "none";
  }
  return "none";
}

constexpr RecipeRegime classify_regime(int k, int j) noexcept {
  if (j < 1 || j >= k) return RecipeRegime::none;
  if (k == 2 * j) return RecipeRegime::both;
  if (k < 2 * j) return RecipeRegime::thm11;
  if (k <= 3 * j) return RecipeRegime::thm12;
  return RecipeRegime::none;
}

/// Representative of x mod m in (-m/2, m/2); m odd so there are no ties.
constexpr i64 signed_minimal_lift(i64 x, i64 m) noexcept {
  const i64 r = mod_floor(x, m);
  return 2 * r > m ? r - m : r;
}

struct RecipeParams {
  i64 ell = 0;
  i64 a_chi = 0;  // a = ell (mod p^{k-j}), |a| < p^{k-j}/2
  i64 b_chi = 0;  // b = a (mod p^j), |b| < p^j/2
  RecipeRegime regime = RecipeRegime::none;
};

inline RecipeParams recipe_params(const DirichletCharacter& chi, int j) {
  const auto& m = chi.modulus();
  if (!chi.is_even()) fail(errc::odd_character, "recipe parameters need an even character");
  if (!chi.is_primitive()) fail(errc::not_primitive, "recipe parameters need a primitive character");
  if (m.k() < 2 || j < 1 || j >= m.k()) fail(errc::precondition_violated, "need k >= 2 and 1 <= j < k");
  RecipeParams out;
  out.ell = postnikov_ell(chi);
  out.a_chi = signed_minimal_lift(out.ell, m.p_power(m.k() - j));
  out.b_chi = signed_minimal_lift(out.a_chi, m.p_power(j));
  out.regime = classify_regime(m.k(), j);
  return out;
}

/// Diagonal main term
///   (phi(q0)/2)(phi(q)/q)(log q + 2 gamma + psi(1/4) - log pi + 2 log p/(p-1)).
inline double predict_D(const PrimePowerModulus& m, int j) {
  if (j < 1 || j > m.k()) fail(errc::precondition_violated, "predict_D needs 1 <= j <= k");
  const long double p = static_cast<long double>(m.p());
  const long double q = static_cast<long double>(m.q());
  const long double bracket = std::log(q) + 2.0L * special::euler_gamma() + special::digamma(0.25L) -
                              std::log(std::numbers::pi_v<long double>) + 2.0L * std::log(p) / (p - 1.0L);
  const long double prefactor = static_cast<long double>(phi_prime_power(m.p(), j)) / 2.0L *
                                static_cast<long double>(m.phi()) / q;
  return static_cast<double>(prefactor * bracket);
}

/// d(n)/sqrt(n).
inline double divisor_weight(i64 n) {
  return static_cast<double>(divisor_count(n)) / std::sqrt(static_cast<double>(n));
}

namespace detail {

/// sqrt(q)/q0 evaluated from exact integers; an exact integer whenever k >= 2j is even.
inline double sqrt_q_over_q0(const PrimePowerModulus& m, int j) {
  const int half = m.k() / 2;
  const double odd_part = m.k() % 2 == 1 ? std::sqrt(static_cast<double>(m.p())) : 1.0;
  const double ratio = half >= j ? static_cast<double>(m.p_power(half - j))
                                 : 1.0 / static_cast<double>(m.p_power(j - half));
  return ratio * odd_part;
}

}  // namespace detail

/// A = (phi(q0)/q0) sqrt(q) d(|a|)/sqrt(|a|), for j < k <= 2j.
inline double predict_A(const DirichletCharacter& chi, int j) {
  const RecipeParams rp = recipe_params(chi, j);
  if (rp.regime != RecipeRegime::thm11 && rp.regime != RecipeRegime::both) {
    fail(errc::regime_mismatch, "A needs j < k <= 2j");
  }
  const auto& m = chi.modulus();
  const double phi0 = static_cast<double>(phi_prime_power(m.p(), j));
  return phi0 * detail::sqrt_q_over_q0(m, j) * divisor_weight(std::abs(rp.a_chi));
}

/// A' = (2a/q) phi(q0) d(|b|)/sqrt(|b|) times cos (q = 1 mod 4) or sin (q = 3 mod 4)
/// of 2 pi conj(2a) (a - b)^2 / q, for p >= 5 and 2j <= k <= 3j.
inline double predict_A_prime(const DirichletCharacter& chi, int j) {
  const RecipeParams rp = recipe_params(chi, j);
  const auto& m = chi.modulus();
  if ((rp.regime != RecipeRegime::thm12 && rp.regime != RecipeRegime::both) || m.p() < 5) {
    fail(errc::regime_mismatch, "A' needs p >= 5 and 2j <= k <= 3j");
  }
  const i64 q = m.q();
  const double phi0 = static_cast<double>(phi_prime_power(m.p(), j));
  const double jac = static_cast<double>(jacobi_symbol(2 * rp.a_chi, q));
  const i64 diff = rp.a_chi - rp.b_chi;
  const i64 phase = mulmod(mod_inverse(2 * rp.a_chi, q), mulmod(diff, diff, q), q);
  const cplx rot = e_mod(phase, q);
  const double trig = q % 4 == 1 ? rot.real() : rot.imag();
  return jac * phi0 * divisor_weight(std::abs(rp.b_chi)) * trig;
}

struct MomentPrediction {
  double D = 0.0;
  double secondary = 0.0;  // A for thm11/both, A' for thm12
  bool uses_prime = false;
  RecipeParams params;
  double digamma_quarter = 0.0;
};

inline MomentPrediction predict_moment(const DirichletCharacter& chi, int j) {
  MomentPrediction out;
  out.params = recipe_params(chi, j);
  out.D = predict_D(chi.modulus(), j);
  out.digamma_quarter = static_cast<double>(special::digamma(0.25L));
  switch (out.params.regime) {
    case RecipeRegime::thm11:
    case RecipeRegime::both: out.secondary = predict_A(chi, j); break;
    case RecipeRegime::thm12:
      out.secondary = predict_A_prime(chi, j);
      out.uses_prime = true;
      break;
    case RecipeRegime::none: fail(errc::regime_mismatch, "no asymptotic covers this (k, j)");
  }
  return out;
}

struct EmpiricalMoment {
  double value = 0.0;
  double error_bound = 0.0;
  std::size_t members = 0;
};

/// sum over eta in chi H_{p^j}^+ of |L(1/2, eta)|^2.
inline EmpiricalMoment empirical_coset_moment(const CosetSpec& spec) {
  spec.validate();
  if (spec.parity != Parity::even || !spec.base.is_even()) {
    fail(errc::odd_base, "empirical moment runs over the even slice of an even coset");
  }
  if (spec.j < 1) fail(errc::precondition_violated, "empirical moment needs j >= 1");
  const HurwitzZeta zeta(cplx{0.5, 0.0});
  EmpiricalMoment out;
  for (const auto& eta : enumerate_coset(spec)) {
    const LValue l = l_value(eta, 0.0, &zeta);
    const double mag = std::abs(l.value);
    out.value += mag * mag;
    out.error_bound += 2.0 * mag * l.abs_error_bound + l.abs_error_bound * l.abs_error_bound;
    ++out.members;
  }
  return out;
}

struct MomentReport {
  i64 q = 0;
  i64 q0 = 0;
  i64 chi_exponent = 0;
  RecipeParams params;
  double empirical = 0.0;
  double D = 0.0;
  double A = 0.0;  // A or A' per regime
  double residual = 0.0;
  double baseline_residual = 0.0;
  double error_scale = 0.0;
};

/// Error-term size of the governing theorem: q^{-1/8} q0, or q0^{-1/4} q^{1/2}; the smaller at k = 2j.
inline double moment_error_scale(const PrimePowerModulus& m, int j, RecipeRegime regime) {
  const double q = static_cast<double>(m.q());
  const double q0 = static_cast<double>(m.p_power(j));
  const double s11 = std::pow(q, -0.125) * q0;
  const double s12 = std::pow(q0, -0.25) * std::sqrt(q);
  switch (regime) {
    case RecipeRegime::thm11: return s11;
    case RecipeRegime::thm12: return s12;
    case RecipeRegime::both: return std::min(s11, s12);
    case RecipeRegime::none: break;
  }
  fail(errc::regime_mismatch, "no error scale outside the theorem windows");
}

/// Report for a coset whose empirical moment is already known.
inline MomentReport moment_report(const CosetSpec& spec, double empirical) {
  spec.validate();
  const auto& m = spec.base.modulus();
  const MomentPrediction pred = predict_moment(spec.base, spec.j);
  MomentReport r;
  r.q = m.q();
  r.q0 = m.p_power(spec.j);
  r.chi_exponent = spec.base.exponent();
  r.params = pred.params;
  r.empirical = empirical;
  r.D = pred.D;
  r.A = pred.secondary;
  r.residual = empirical - pred.D - pred.secondary;
  r.baseline_residual = empirical - pred.D;
  r.error_scale = moment_error_scale(m, spec.j, pred.params.regime);
  return r;
}

inline MomentReport moment_report(const CosetSpec& spec) {
  const MomentPrediction pred = predict_moment(spec.base, spec.j);  // regime check before the expensive part
  (void)pred;
  return moment_report(spec, empirical_coset_moment(spec).value);
}

inline Table moment_table(const std::vector<MomentReport>& rows) {
  Table t({"q", "q0", "chi_exponent", "ell", "a_chi", "b_chi", "regime", "empirical", "D", "A", "residual",
           "baseline_residual", "error_scale"});
  for (const auto& r : rows) {
    t.add_row({int_cell(r.q), int_cell(r.q0), int_cell(r.chi_exponent), int_cell(r.params.ell),
               int_cell(r.params.a_chi), int_cell(r.params.b_chi), text_cell(std::string(to_string(r.params.regime))),
               num_cell(r.empirical), num_cell(r.D), num_cell(r.A), num_cell(r.residual),
               num_cell(r.baseline_residual), num_cell(r.error_scale)});
  }
  return t;
}

}  // namespace cosetlfun
