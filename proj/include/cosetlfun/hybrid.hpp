#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "cosetlfun/characters.hpp"
#include "cosetlfun/lcentral.hpp"
#include "cosetlfun/report.hpp"

namespace cosetlfun {

/// S(chi, h q0, n) = sum_{alpha mod q} chi(alpha + h q0) conj(chi)(alpha) e_q(alpha n), q0 = p^j.
inline cplx char_sum_S(const DirichletCharacter& chi, i64 h, int j, i64 n) {
  const auto& m = chi.modulus();
  if (j < 0 || j > m.k()) fail(errc::precondition_violated, "q0 = p^j must divide q");
  const i64 q = m.q();
  const i64 phi = m.phi();
  const i64 p = m.p();
  const i64 shift = mulmod(h, m.p_power(j), q);
  const i64 nr = mod_floor(n, q);
  const u128 den = static_cast<u128>(q) * static_cast<u128>(p - 1);
  cplx sum{};
  for (i64 alpha = 1; alpha < q; ++alpha) {
    const i64 s0 = m.dlog(alpha);
    if (s0 < 0) continue;
    const i64 s1 = m.dlog(alpha + shift);
    if (s1 < 0) continue;
    const i64 chi_num = mulmod(chi.exponent(), s1 - s0, phi);
    const u128 num = static_cast<u128>(chi_num) * static_cast<u128>(p) +
                     static_cast<u128>(mulmod(nr, alpha, q)) * static_cast<u128>(p - 1);
    sum += e_turns(num, den);
  }
  return sum;
}

// Parameters shared by the character-sum scan and the hybrid moment quadrature.
struct ScanGrid {
  ModulusPtr modulus;
  int j = 1;
  i64 A = 1;
  i64 B = 1;
  double T = 10.0;
  double T0 = 2.0;
  double t_step = 0.05;

  void validate() const {
    if (!modulus) fail(errc::precondition_violated, "scan grid needs a modulus");
    if (j < 0 || j > modulus->k()) fail(errc::precondition_violated, "need 0 <= j <= k");
    if (A < 1 || B < 1) fail(errc::precondition_violated, "A and B must be >= 1");
    if (!(T0 > 0.0) || !(t_step > 0.0)) fail(errc::precondition_violated, "T0 and t_step must be positive");
  }
};

struct Lemma9Row {
  i64 q = 0;
  i64 q0 = 0;
  i64 A = 0;
  i64 B = 0;  // 0 marks the n = 0 line
  double sum_S = 0.0;
  double envelope = 0.0;
  double ratio = 0.0;
};

struct Lemma9Scan {
  std::vector<Lemma9Row> rows;
  // Baselines sit at the smallest grid point (by A*B, then A) whose sum is nonzero;
  // S vanishes identically at many small (h, n), so the A = B = 1 point is often empty.
  double base_ratio = 0.0;  // n != 0 part
  double max_ratio = 0.0;
  double base_ratio_zero = 0.0;  // n = 0 line
  double max_ratio_zero = 0.0;

  /// Soft regression guard: the fitted constant may not grow by more than `factor`.
  /// A scan whose sums all vanish passes vacuously.
  bool guard_ok(double factor = 3.0) const noexcept { return max_ratio <= factor * base_ratio; }
  bool guard_zero_ok(double factor = 3.0) const noexcept { return max_ratio_zero <= factor * base_ratio_zero; }
};

namespace detail {

inline std::vector<i64> dyadic_points(i64 limit) {
  std::vector<i64> out;
  for (i64 v = 1; v <= limit; v *= 2) out.push_back(v);
  if (out.back() != limit) out.push_back(limit);
  return out;
}

/// |S| below this is rounding noise around an exact zero.
inline double structural_zero_floor(i64 q) { return 1e-9 * static_cast<double>(q); }

/// Ratio at the first row with a nonzero sum, rows ordered by (A*B, A).
inline double smallest_supported_ratio(std::vector<const Lemma9Row*> rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const Lemma9Row* x, const Lemma9Row* y) {
    const i64 bx = std::max<i64>(x->B, 1), by = std::max<i64>(y->B, 1);
    return x->A * bx != y->A * by ? x->A * bx < y->A * by : x->A < y->A;
  });
  for (const auto* r : rows) {
    if (r->sum_S > 0.0) return r->ratio;
  }
  return 0.0;
}

}  // namespace detail

/// sum_{1<=|h|<=A} sum_{1<=|n|<=B} |S(chi, h q0, n)| against q^{1/2}(A B q0^{-1/2} + (q q0 A)^{1/4}),
/// and sum_{1<=|h|<=A} |S(chi, h q0, 0)| against q0 A, at every dyadic (A', B') up to (A, B).
inline Lemma9Scan lemma9_scan(const ScanGrid& grid, const DirichletCharacter& chi) {
  grid.validate();
  if (!(chi.modulus() == *grid.modulus)) fail(errc::precondition_violated, "character and grid moduli differ");
  if (!chi.is_primitive()) fail(errc::not_primitive, "lemma9 scan needs a primitive character");
  const auto& m = *grid.modulus;
  const double q = static_cast<double>(m.q());
  const double q0 = static_cast<double>(m.p_power(grid.j));

  // mag[h][n] = |S(h)| + |S(-h)| summed over +-n, h and n in 1..A, 0..B.
  std::vector<std::vector<double>> mag(static_cast<std::size_t>(grid.A + 1),
                                       std::vector<double>(static_cast<std::size_t>(grid.B + 1), 0.0));
  for (i64 h = 1; h <= grid.A; ++h) {
    for (i64 n = 0; n <= grid.B; ++n) {
      double v = 0.0;
      const double noise = detail::structural_zero_floor(m.q());
      auto add = [&](i64 sh, i64 nn) {
        const double a = std::abs(char_sum_S(chi, sh, grid.j, nn));
        if (a > noise) v += a;
      };
      for (i64 sh : {h, -h}) {
        add(sh, n);
        if (n != 0) add(sh, -n);
      }
      mag[static_cast<std::size_t>(h)][static_cast<std::size_t>(n)] = v;
    }
  }

  Lemma9Scan out;
  for (i64 a : detail::dyadic_points(grid.A)) {
    double zero_line = 0.0;
    for (i64 h = 1; h <= a; ++h) zero_line += mag[static_cast<std::size_t>(h)][0];
    const double zero_env = q0 * static_cast<double>(a);
    out.rows.push_back({m.q(), m.p_power(grid.j), a, 0, zero_line, zero_env, zero_line / zero_env});
    out.max_ratio_zero = std::max(out.max_ratio_zero, zero_line / zero_env);

    for (i64 b : detail::dyadic_points(grid.B)) {
      double total = 0.0;
      for (i64 h = 1; h <= a; ++h) {
        for (i64 n = 1; n <= b; ++n) total += mag[static_cast<std::size_t>(h)][static_cast<std::size_t>(n)];
      }
      const double env = std::sqrt(q) * (static_cast<double>(a * b) / std::sqrt(q0) +
                                         std::pow(q * q0 * static_cast<double>(a), 0.25));
      const double ratio = total / env;
      out.rows.push_back({m.q(), m.p_power(grid.j), a, b, total, env, ratio});
      out.max_ratio = std::max(out.max_ratio, ratio);
    }
  }
  std::vector<const Lemma9Row*> line, zero;
  for (const auto& r : out.rows) (r.B == 0 ? zero : line).push_back(&r);
  out.base_ratio = detail::smallest_supported_ratio(line);
  out.base_ratio_zero = detail::smallest_supported_ratio(zero);
  return out;
}

inline Table lemma9_table(const std::vector<Lemma9Row>& rows) {
  Table t({"q", "q0", "A", "B", "sum_S", "envelope", "ratio"});
  for (const auto& r : rows) {
    t.add_row({int_cell(r.q), int_cell(r.q0), int_cell(r.A), int_cell(r.B), num_cell(r.sum_S), num_cell(r.envelope),
               num_cell(r.ratio)});
  }
  return t;
}

struct HybridMoment {
  i64 q = 0;
  i64 q0 = 0;
  double T = 0.0;
  double T0 = 0.0;
  double t_step = 0.0;  // step actually used (T0 / intervals)
  double lhs = 0.0;
  double envelope = 0.0;
  double ratio = 0.0;
};

/// Trapezoid rule over [T, T + T0] of sum_{psi in H_{q0}} |L(1/2 + it, chi psi)|^2,
/// against (T0 + T0^{-1/2} T^{1/2})(q0 + q0^{-1/2} q^{1/2}).
inline HybridMoment hybrid_moment_quadrature(const ScanGrid& grid, const DirichletCharacter& chi) {
  grid.validate();
  if (grid.t_step > grid.T0 / 8.0) fail(errc::quadrature_too_coarse, "t_step must be <= T0/8");
  if (grid.T0 > grid.T) fail(errc::precondition_violated, "need T0 <= T");
  if (!chi.is_primitive()) fail(errc::not_primitive, "hybrid moment needs a primitive character");
  const auto& m = *grid.modulus;
  const auto members = enumerate_coset(chi, grid.j);
  const i64 intervals = static_cast<i64>(std::ceil(grid.T0 / grid.t_step - 1e-9));
  const double step = grid.T0 / static_cast<double>(intervals);

  double integral = 0.0;
  for (i64 i = 0; i <= intervals; ++i) {
    const double t = grid.T + step * static_cast<double>(i);
    const HurwitzZeta zeta(cplx{0.5, t});
    double f = 0.0;
    for (const auto& eta : members) f += std::norm(l_value(eta, t, &zeta).value);
    integral += (i == 0 || i == intervals) ? 0.5 * f : f;
  }
  integral *= step;

  const double q = static_cast<double>(m.q());
  const double q0 = static_cast<double>(m.p_power(grid.j));
  const double env = (grid.T0 + std::sqrt(grid.T) / std::sqrt(grid.T0)) * (q0 + std::sqrt(q) / std::sqrt(q0));
  return {m.q(), m.p_power(grid.j), grid.T, grid.T0, step, integral, env, integral / env};
}

/// Relative change of the quadrature when the step is halved.
inline double quadrature_step_halving_change(const ScanGrid& grid, const DirichletCharacter& chi) {
  ScanGrid fine = grid;
  fine.t_step = grid.t_step / 2.0;
  const double coarse_lhs = hybrid_moment_quadrature(grid, chi).lhs;
  const double fine_lhs = hybrid_moment_quadrature(fine, chi).lhs;
  return std::abs(coarse_lhs - fine_lhs) / std::abs(fine_lhs);
}

inline Table hybrid_table(const std::vector<HybridMoment>& rows) {
  Table t({"q", "q0", "T", "T0", "lhs", "envelope", "ratio"});
  for (const auto& r : rows) {
    t.add_row({int_cell(r.q), int_cell(r.q0), num_cell(r.T), num_cell(r.T0), num_cell(r.lhs), num_cell(r.envelope),
               num_cell(r.ratio)});
  }
  return t;
}

}  // namespace cosetlfun
