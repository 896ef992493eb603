#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "cosetlfun/characters.hpp"
#include "cosetlfun/report.hpp"

namespace cosetlfun {

enum class GaussMethod { brute, quadratic_closed, odoni_even, odoni_odd, coset_linear, coset_quadratic };

struct GaussSumResult {
  cplx value;
  GaussMethod method = GaussMethod::brute;
  i64 modulus = 0;
  i64 twist = 1;
};

/// tau(chi, n) = sum_{t mod q} chi(t) e_q(n t), each term's angle reduced exactly.
inline cplx gauss_sum_brute(const DirichletCharacter& chi, i64 n = 1) {
  const auto& m = chi.modulus();
  const i64 q = m.q();
  const i64 phi = m.phi();
  const i64 p = m.p();
  // chi(t) e_q(nt) = e((c ind(t) p + n t (p - 1)) / (q (p - 1))).
  const u128 den = static_cast<u128>(q) * static_cast<u128>(p - 1);
  const i64 nr = mod_floor(n, q);
  cplx sum{0.0, 0.0};
  for (i64 t = 1; t < q; ++t) {
    const i64 s = m.dlog(t);
    if (s < 0) continue;
    const u128 num = static_cast<u128>(mulmod(chi.exponent(), s, phi)) * static_cast<u128>(p) +
                     static_cast<u128>(mulmod(nr, t, q)) * static_cast<u128>(p - 1);
    sum += e_turns(num, den);
  }
  return sum;
}

/// sum_{x mod q} e_q(a x^2 + b x) by direct summation.
inline cplx quadratic_exp_sum_brute(i64 a, i64 b, i64 q) {
  cplx sum{0.0, 0.0};
  for (i64 x = 0; x < q; ++x) {
    sum += e_mod(mulmod(mulmod(a, x, q), x, q) + mulmod(b, x, q), q);
  }
  return sum;
}

/// q^{1/2} eps_q (a/q) e_q(-conj(4a) b^2) for odd q and gcd(a, q) = 1.
inline cplx quadratic_gauss_closed(i64 a, i64 b, i64 q) {
  if (q < 1 || q % 2 == 0) fail(errc::invalid_modulus, "quadratic sum needs odd q >= 1");
  if (std::gcd(mod_floor(a, q), q) != 1) fail(errc::shared_factor, "gcd(a, q) > 1");
  const i64 inv4a = mod_inverse(mulmod(4, a, q), q);
  const i64 phase = mod_floor(-mulmod(inv4a, mulmod(b, b, q), q), q);
  return std::sqrt(static_cast<double>(q)) * epsilon_q(q) * static_cast<double>(jacobi_symbol(a, q)) *
         e_mod(phase, q);
}

namespace detail {

inline void require_odoni_regime(const DirichletCharacter& chi) {
  const auto& m = chi.modulus();
  if (!chi.is_primitive()) fail(errc::not_primitive, "closed Gauss sum needs a primitive character");
  if (m.k() < 2) fail(errc::unsupported_regime, "closed Gauss sum needs k >= 2");
  if (m.k() % 2 == 1 && m.p() == 3) fail(errc::unsupported_regime, "odd k needs p >= 5");
}

}  // namespace detail

/// The single summand of the collapsed Odoni evaluation at representative t0,
/// where t0 = -ell_chi (mod p^n), n = floor(k/2). Independent of the choice of t0.
inline cplx odoni_summand(const DirichletCharacter& chi, i64 t0) {
  detail::require_odoni_regime(chi);
  const auto& m = chi.modulus();
  const i64 p = m.p();
  const int k = m.k();
  const int n = k / 2;
  const i64 pn = m.p_power(n);
  const i64 ell = postnikov_ell(chi);
  if (mod_floor(t0 + ell, pn) != 0) fail(errc::precondition_violated, "t0 must satisfy t0 = -ell (mod p^n)");
  const cplx base = static_cast<double>(pn) * chi(t0) * e_mod(t0, m.q());
  if (k % 2 == 0) return base;
  const i64 w = mod_floor((ell + t0) / pn, p);
  const i64 phase = mulmod(mod_inverse(2 * ell, p), mulmod(w, w, p), p);
  return base * std::sqrt(static_cast<double>(p)) * epsilon_q(p) *
         static_cast<double>(jacobi_symbol(-2 * ell, p)) * e_mod(phase, p);
}

/// tau(chi) for primitive chi mod p^k, k >= 2 (odd k needs p >= 5), from the
/// collapsed closed form. representative_shift moves t0 by multiples of p^n.
inline GaussSumResult gauss_sum_odoni(const DirichletCharacter& chi, i64 representative_shift = 0) {
  detail::require_odoni_regime(chi);
  const auto& m = chi.modulus();
  const i64 pn = m.p_power(m.k() / 2);
  const i64 t0 = mod_floor(-postnikov_ell(chi), pn) + representative_shift * pn;
  return {odoni_summand(chi, t0), m.k() % 2 == 0 ? GaussMethod::odoni_even : GaussMethod::odoni_odd, m.q(), 1};
}

/// Root number eps(chi) = tau(chi) / (i^a q^{1/2}), a = 0 for even chi and 1 for odd.
inline cplx root_number(const DirichletCharacter& chi) {
  if (!chi.is_primitive()) fail(errc::not_primitive, "root number needs a primitive character");
  const cplx tau = gauss_sum_brute(chi, 1) / std::sqrt(static_cast<double>(chi.q()));
  return chi.is_even() ? tau : tau / cplx{0.0, 1.0};
}

/// Largest deviation of the Odoni summand over every representative t0 mod q.
inline double odoni_representative_spread(const DirichletCharacter& chi) {
  const auto& m = chi.modulus();
  const i64 pn = m.p_power(m.k() / 2);
  const cplx ref = gauss_sum_odoni(chi).value;
  double worst = 0.0;
  for (i64 r = 0; r < m.q() / pn; ++r) worst = std::max(worst, std::abs(gauss_sum_odoni(chi, r).value - ref));
  // Negative representatives too.
  worst = std::max(worst, std::abs(gauss_sum_odoni(chi, -3).value - ref));
  return worst;
}

/// Lazily memoized brute tau(chi, 1) for every character of one modulus.
/// Not thread-safe; give each worker its own cache.
class GaussSumCache {
 public:
  explicit GaussSumCache(ModulusPtr m) : mod_(std::move(m)), values_(static_cast<std::size_t>(mod_->phi())) {}

  const cplx& tau(const DirichletCharacter& chi) {
    auto& slot = values_[static_cast<std::size_t>(chi.exponent())];
    if (!slot) slot = gauss_sum_brute(chi, 1);
    return *slot;
  }

  /// tau(chi, n) = conj(chi)(n) tau(chi) when gcd(n, q) = 1.
  cplx tau(const DirichletCharacter& chi, i64 n) {
    if (!chi.modulus().is_unit(n)) return gauss_sum_brute(chi, n);
    return std::conj(chi(n)) * tau(chi);
  }

 private:
  ModulusPtr mod_;
  std::vector<std::optional<cplx>> values_;
};

inline std::string describe(const DirichletCharacter& chi) {
  return "p=" + std::to_string(chi.modulus().p()) + " k=" + std::to_string(chi.modulus().k()) +
         " c=" + std::to_string(chi.exponent());
}

/// Brute ratio tau(chi1, m)/tau(chi2, m) against (chi1 conj(chi2))(-ell_{chi1}/m).
inline VerificationReport gauss_ratio_check(const DirichletCharacter& chi1, const DirichletCharacter& chi2, i64 m,
                                            GaussSumCache* cache = nullptr) {
  const auto& mod = chi1.modulus();
  if (!(mod == chi2.modulus())) fail(errc::precondition_violated, "characters must share a modulus");
  if (!chi1.is_primitive() || !chi2.is_primitive()) fail(errc::not_primitive, "ratio check needs primitive characters");
  if (mod.k() < 2) fail(errc::precondition_violated, "ratio check needs k >= 2");
  if (!mod.is_unit(m)) fail(errc::precondition_violated, "gcd(m, p) must be 1");
  const DirichletCharacter diff = chi1 * chi2.conj();
  const int half = (mod.k() + 1) / 2;
  if (diff.conductor_exponent() > half) {
    fail(errc::precondition_violated, "conductor of chi1 conj(chi2) must divide p^ceil(k/2)");
  }
  Stopwatch clock;
  const cplx t1 = cache ? cache->tau(chi1, m) : gauss_sum_brute(chi1, m);
  const cplx t2 = cache ? cache->tau(chi2, m) : gauss_sum_brute(chi2, m);
  const i64 lift = mod.p_power(mod.k() - 1);
  const i64 arg = mulmod(-postnikov_ell(chi1), mod_inverse(m, lift), lift);
  const cplx closed = diff(arg);
  return VerificationReport::compare("ratio " + describe(chi1) + " c2=" + std::to_string(chi2.exponent()) +
                                         " m=" + std::to_string(m),
                                     t1 / t2, closed, clock.micros());
}

/// For k = 2n: builds chi with ell_chi = -1 (mod p^n) and checks
/// tau(psi) = p^n e_{p^k}(1) for every psi in chi H_{p^n}, one report per member.
inline std::vector<VerificationReport> near_one_root_number_check(const ModulusPtr& m) {
  if (m->k() < 2 || m->k() % 2 != 0) fail(errc::precondition_violated, "near-one check needs even k >= 2");
  const int n = m->k() / 2;
  const i64 lift = m->p_power(m->k() - 1);
  const DirichletCharacter chi = character_with_ell(m, lift - 1);
  const cplx expected = static_cast<double>(m->p_power(n)) * e_mod(1, m->q());
  std::vector<VerificationReport> out;
  for (const auto& psi : enumerate_coset(chi, n)) {
    Stopwatch clock;
    const cplx tau = gauss_sum_brute(psi, 1);
    out.push_back(VerificationReport::compare("near-one " + describe(psi), tau, expected, clock.micros()));
  }
  return out;
}

enum class EpsRegime { linear, quadratic };

constexpr std::string_view to_string(EpsRegime r) noexcept { return r == EpsRegime::linear ? "linear" : "quadratic"; }

/// Whether (j, k, p) lies in the window where the closed coset average applies.
inline bool eps_regime_valid(EpsRegime regime, i64 p, int k, int j) {
  if (k < 2 || j < 1 || j >= k) return false;
  if (regime == EpsRegime::linear) return 2 * j >= k;
  return p >= 5 && 3 * j >= k && 2 * j <= k;
}

namespace detail {

inline void require_even_coset(const CosetSpec& spec, i64 m) {
  spec.validate();
  if (!spec.base.is_even()) fail(errc::odd_base, "coset average needs an even base character");
  if (spec.parity != Parity::even) fail(errc::precondition_violated, "coset average runs over the even slice");
  if (spec.base.modulus().k() < 2) fail(errc::precondition_violated, "coset average needs k >= 2");
  if (!spec.base.modulus().is_unit(m)) fail(errc::precondition_violated, "gcd(m, p) must be 1");
}

}  // namespace detail

/// sum_{eta in chi H_{p^j}^+} eps(eta) conj(eta)(m), eps(eta) = q^{-1/2} tau(eta) by brute force.
inline cplx coset_epsilon_average(const CosetSpec& spec, i64 m, GaussSumCache* cache = nullptr) {
  detail::require_even_coset(spec, m);
  const double inv_sqrt_q = 1.0 / std::sqrt(static_cast<double>(spec.base.q()));
  cplx sum{0.0, 0.0};
  for (const auto& eta : enumerate_coset(spec)) {
    const cplx tau = cache ? cache->tau(eta) : gauss_sum_brute(eta, 1);
    sum += tau * inv_sqrt_q * std::conj(eta(m));
  }
  return sum;
}

/// Closed forms for the even-slice coset average of eps(eta) conj(eta)(m).
///
/// linear (k/2 <= j < k):
///   q^{1/2} phi(p^j)/(2 p^j) sum_{+-} e_{p^k}(+-m) [ell = -+m mod p^{k-j}]
/// quadratic (k/3 <= j <= k/2, p >= 5):
///   phi(p^j) sum_{+-} 1/2 e_{p^k}(+-m) [ell = -+m mod p^j] (-2 ell/q) eps_q
///     e_{p^{k-2j}}(conj(2 ell) ((ell +- m)/p^j)^2)
inline cplx coset_epsilon_average_closed(const CosetSpec& spec, i64 m, EpsRegime regime) {
  detail::require_even_coset(spec, m);
  const auto& mod = spec.base.modulus();
  const i64 p = mod.p();
  const int k = mod.k();
  const int j = spec.j;
  if (!eps_regime_valid(regime, p, k, j)) {
    fail(errc::regime_mismatch, "j=" + std::to_string(j) + " k=" + std::to_string(k) + " p=" + std::to_string(p) +
                                    " outside the " + std::string(to_string(regime)) + " window");
  }
  const i64 q = mod.q();
  const i64 pj = mod.p_power(j);
  const i64 ell = postnikov_ell(spec.base);
  const i64 mr = mod_floor(m, q);
  const double phi_pj = static_cast<double>(phi_prime_power(p, j));
  cplx sum{0.0, 0.0};

  if (regime == EpsRegime::linear) {
    const i64 window = mod.p_power(k - j);
    const double scale = std::sqrt(static_cast<double>(q)) * phi_pj / (2.0 * static_cast<double>(pj));
    for (int sign : {+1, -1}) {
      if (mod_floor(ell + sign * mr, window) == 0) sum += scale * e_mod(sign * mr, q);
    }
    return sum;
  }

  const i64 inner = mod.p_power(k - 2 * j);
  const cplx unit = static_cast<double>(jacobi_symbol(-2 * ell, q)) * epsilon_q(q);
  for (int sign : {+1, -1}) {
    if (mod_floor(ell + sign * mr, pj) != 0) continue;
    const i64 w = mod_floor((ell + sign * mr) / pj, inner);
    const i64 phase = inner == 1 ? 0 : mulmod(mod_inverse(2 * ell, inner), mulmod(w, w, inner), inner);
    sum += 0.5 * phi_pj * e_mod(sign * mr, q) * unit * e_mod(phase, inner);
  }
  return sum;
}

}  // namespace cosetlfun
