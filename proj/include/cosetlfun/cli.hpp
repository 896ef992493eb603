#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cosetlfun/gauss.hpp"
#include "cosetlfun/hybrid.hpp"
#include "cosetlfun/lcentral.hpp"
#include "cosetlfun/moments.hpp"
#include "cosetlfun/parallel.hpp"
#include "cosetlfun/report.hpp"
#include "cosetlfun/vdc.hpp"

namespace cosetlfun {

inline constexpr std::array<std::string_view, 10> kSubcommands = {
    "gauss-verify", "coset-eps", "ratio", "near-one", "moment", "recipe", "vdc", "shift-identity", "lemma9", "hybrid"};

struct RunConfig {
  std::string subcommand;
  std::vector<i64> p_list{3};
  std::vector<int> k_list{4};
  std::vector<int> j_list{2};
  int m_samples = 5;
  std::uint64_t seed = 0;
  std::optional<double> tolerance;
  std::string out;  // empty: the caller's stream
  Format format = Format::csv;
  unsigned workers = 1;
  bool strict = false;
  bool timing = false;
  double T = 10.0;
  double T0 = 2.0;
  double t_step = 0.05;
  i64 A = 16;
  i64 B = 16;
  int trials = 100;

  void validate() const {
    bool known = false;
    for (auto s : kSubcommands) known = known || s == subcommand;
    if (!known) fail(errc::config_error, "unknown subcommand '" + subcommand + "'");
    if (p_list.empty() || k_list.empty() || j_list.empty()) fail(errc::config_error, "grids must be nonempty");
    for (i64 p : p_list) {
      if (p < 3 || !is_prime(p)) fail(errc::config_error, "--p entries must be odd primes");
    }
    for (int k : k_list) {
      if (k < 1) fail(errc::config_error, "--k entries must be >= 1");
    }
    for (int j : j_list) {
      if (j < 0) fail(errc::config_error, "--j entries must be >= 0");
    }
    if (tolerance && !(*tolerance > 0.0)) fail(errc::config_error, "--tolerance must be positive");
    if (m_samples < 1 || trials < 1) fail(errc::config_error, "--m-samples and --trials must be >= 1");
    if (workers < 1) fail(errc::config_error, "--workers must be >= 1");
    if (A < 1 || B < 1) fail(errc::config_error, "--A and --B must be >= 1");
    if (!(T0 > 0.0) || !(t_step > 0.0) || !(T > 0.0)) fail(errc::config_error, "--T, --T0, --t-step must be positive");
  }
};

// Output of one subcommand: the report table plus assertion tallies.
struct CommandResult {
  Table table{std::vector<std::string>{}};
  int hard_failures = 0;
  std::vector<std::string> warnings;  // soft checks
};

namespace detail {

inline double tol_or(const RunConfig& c, double fallback) { return c.tolerance.value_or(fallback); }

inline ModulusPtr checked_modulus(i64 p, int k) {
  const i64 q = checked_pow(p, k);
  if (q > 5'000'000) fail(errc::config_error, "modulus " + std::to_string(q) + " is too large for brute verification");
  return make_modulus(p, k);
}

/// Units mod q drawn uniformly from [1, q).
inline std::vector<i64> sample_units(std::mt19937_64& rng, const PrimePowerModulus& m, int count) {
  std::uniform_int_distribution<i64> pick(1, m.q() - 1);
  std::vector<i64> out;
  while (static_cast<int>(out.size()) < count) {
    const i64 x = pick(rng);
    if (m.is_unit(x)) out.push_back(x);
  }
  return out;
}

inline void tally(CommandResult& r, const std::vector<VerificationReport>& reports, double tol, bool relative) {
  for (const auto& rep : reports) {
    const double err = relative ? rep.rel_err : rep.abs_err;
    if (!(err <= tol)) ++r.hard_failures;
  }
}

inline CommandResult run_gauss_verify(const RunConfig& c) {
  const double tol = tol_or(c, 1e-9);
  CommandResult r;
  std::vector<VerificationReport> reports;
  for (i64 p : c.p_list) {
    for (int k : c.k_list) {
      if (k < 2) fail(errc::config_error, "gauss-verify needs k >= 2 (explicit evaluation regime)");
      if (p == 3 && k % 2 == 1) fail(errc::config_error, "gauss-verify: odd k with p = 3 is outside the explicit regime");
      const auto m = checked_modulus(p, k);
      const auto chars = primitive_characters(m);
      std::vector<VerificationReport> local(chars.size());
      parallel_for(chars.size(), c.workers, [&](std::size_t i) {
        Stopwatch clock;
        const cplx brute = gauss_sum_brute(chars[i]);
        const cplx closed = gauss_sum_odoni(chars[i]).value;
        local[i] = VerificationReport::compare("odoni " + describe(chars[i]), brute, closed, clock.micros());
      });
      reports.insert(reports.end(), local.begin(), local.end());
    }
  }
  tally(r, reports, tol, true);
  r.table = verification_table(reports, c.timing);
  return r;
}

inline CommandResult run_coset_eps(const RunConfig& c) {
  const double tol = tol_or(c, 1e-9);
  std::mt19937_64 rng(c.seed);
  CommandResult r;
  r.table = Table({"q", "j", "regime", "chi_exponent", "m", "brute", "closed", "abs_err"});
  for (i64 p : c.p_list) {
    for (int k : c.k_list) {
      const auto m = checked_modulus(p, k);
      const auto even = primitive_characters(m, Parity::even);
      if (even.empty()) continue;
      GaussSumCache cache(m);
      for (int j : c.j_list) {
        for (EpsRegime regime : {EpsRegime::linear, EpsRegime::quadratic}) {
          if (!eps_regime_valid(regime, p, k, j)) continue;
          std::uniform_int_distribution<std::size_t> pick(0, even.size() - 1);
          const auto& chi = even[pick(rng)];
          const CosetSpec spec{chi, j, Parity::even};
          auto ms = sample_units(rng, *m, c.m_samples);
          const i64 ell = postnikov_ell(chi);
          ms.push_back(mod_floor(-ell, m->q()));  // targeted: the delta condition fires
          ms.push_back(mod_floor(ell, m->q()));
          for (i64 mm : ms) {
            const cplx brute = coset_epsilon_average(spec, mm, &cache);
            const cplx closed = coset_epsilon_average_closed(spec, mm, regime);
            const double err = std::abs(brute - closed);
            if (!(err <= tol)) ++r.hard_failures;
            r.table.add_row({int_cell(m->q()), int_cell(j), text_cell(std::string(to_string(regime))),
                             int_cell(chi.exponent()), int_cell(mm), complex_cell(brute), complex_cell(closed),
                             num_cell(err)});
          }
        }
      }
    }
  }
  if (r.table.size() == 0) fail(errc::config_error, "coset-eps: no (p, k, j) in the grid lies in a closed-form window");
  return r;
}

inline CommandResult run_ratio(const RunConfig& c) {
  const double tol = tol_or(c, 1e-9);
  std::mt19937_64 rng(c.seed);
  CommandResult r;
  std::vector<VerificationReport> reports;
  for (i64 p : c.p_list) {
    for (int k : c.k_list) {
      if (k < 2) fail(errc::config_error, "ratio needs k >= 2");
      const auto m = checked_modulus(p, k);
      const auto chars = primitive_characters(m);
      const auto ms = sample_units(rng, *m, c.m_samples);
      const int half = (k + 1) / 2;
      GaussSumCache cache(m);
      for (const auto& c1 : chars) {
        for (const auto& c2 : chars) {
          if ((c1 * c2.conj()).conductor_exponent() > half) continue;
          for (i64 mm : ms) reports.push_back(gauss_ratio_check(c1, c2, mm, &cache));
        }
      }
    }
  }
  tally(r, reports, tol, false);
  r.table = verification_table(reports, c.timing);
  return r;
}

inline CommandResult run_near_one(const RunConfig& c) {
  const double tol = tol_or(c, 1e-9);
  CommandResult r;
  std::vector<VerificationReport> reports;
  for (i64 p : c.p_list) {
    for (int k : c.k_list) {
      if (k < 2 || k % 2 != 0) fail(errc::config_error, "near-one needs even k >= 2");
      const auto rows = near_one_root_number_check(checked_modulus(p, k));
      reports.insert(reports.end(), rows.begin(), rows.end());
    }
  }
  tally(r, reports, tol, false);
  r.table = verification_table(reports, c.timing);
  return r;
}

/// One row per even primitive character; the L-value sums run once per coset.
inline std::vector<MomentReport> moment_rows(const ModulusPtr& m, int j, unsigned workers,
                                             std::vector<double>* error_bounds = nullptr) {
  std::map<i64, CosetSpec> cosets;
  const auto chars = primitive_characters(m, Parity::even);
  for (const auto& chi : chars) {
    const CosetSpec spec{chi, j, Parity::even};
    cosets.emplace(spec.canonical_exponent(), spec);
  }
  std::vector<std::pair<i64, CosetSpec>> work(cosets.begin(), cosets.end());
  std::vector<EmpiricalMoment> values(work.size());
  parallel_for(work.size(), workers, [&](std::size_t i) { values[i] = empirical_coset_moment(work[i].second); });
  std::map<i64, EmpiricalMoment> by_coset;
  for (std::size_t i = 0; i < work.size(); ++i) by_coset.emplace(work[i].first, values[i]);

  std::vector<MomentReport> out;
  for (const auto& chi : chars) {
    const CosetSpec spec{chi, j, Parity::even};
    const auto& em = by_coset.at(spec.canonical_exponent());
    out.push_back(moment_report(spec, em.value));
    if (error_bounds) error_bounds->push_back(em.error_bound);
  }
  return out;
}

inline CommandResult run_moment(const RunConfig& c) {
  const double tol = tol_or(c, 1e-8);
  CommandResult r;
  std::vector<MomentReport> rows;
  for (i64 p : c.p_list) {
    for (int k : c.k_list) {
      for (int j : c.j_list) {
        if (classify_regime(k, j) == RecipeRegime::none) {
          fail(errc::config_error, "moment: (k=" + std::to_string(k) + ", j=" + std::to_string(j) +
                                       ") outside j < k <= 3j");
        }
        if (classify_regime(k, j) == RecipeRegime::thm12 && p < 5) {
          fail(errc::config_error, "moment: 2j < k <= 3j needs p >= 5");
        }
        std::vector<double> bounds;
        const auto part = moment_rows(checked_modulus(p, k), j, c.workers, &bounds);
        for (std::size_t i = 0; i < part.size(); ++i) {
          if (!std::isfinite(part[i].empirical) || !(bounds[i] <= tol * (1.0 + part[i].empirical))) ++r.hard_failures;
          if (std::abs(part[i].params.a_chi) <= 2 && !(std::abs(part[i].residual) < std::abs(part[i].baseline_residual))) {
            r.warnings.push_back("moment q=" + std::to_string(part[i].q) + " c=" + std::to_string(part[i].chi_exponent) +
                                 ": |empirical - D - A| >= |empirical - D| with |a_chi| <= 2");
          }
        }
        rows.insert(rows.end(), part.begin(), part.end());
      }
    }
  }
  r.table = moment_table(rows);
  return r;
}

inline CommandResult run_recipe(const RunConfig& c) {
  CommandResult r;
  r.table = Table({"q", "q0", "chi_exponent", "ell", "a_chi", "b_chi", "regime", "D", "A", "A_prime"});
  for (i64 p : c.p_list) {
    for (int k : c.k_list) {
      for (int j : c.j_list) {
        const RecipeRegime regime = classify_regime(k, j);
        if (regime == RecipeRegime::none) fail(errc::config_error, "recipe: (k, j) outside j < k <= 3j");
        const auto m = checked_modulus(p, k);
        const double D = predict_D(*m, j);
        for (const auto& chi : primitive_characters(m, Parity::even)) {
          const RecipeParams rp = recipe_params(chi, j);
          const bool has_a = regime == RecipeRegime::thm11 || regime == RecipeRegime::both;
          const bool has_a_prime = (regime == RecipeRegime::thm12 || regime == RecipeRegime::both) && p >= 5;
          const double a = has_a ? predict_A(chi, j) : std::nan("");
          const double a_prime = has_a_prime ? predict_A_prime(chi, j) : std::nan("");
          if (has_a && has_a_prime && a != a_prime) ++r.hard_failures;
          if (regime == RecipeRegime::both && rp.a_chi != rp.b_chi) ++r.hard_failures;
          r.table.add_row({int_cell(m->q()), int_cell(m->p_power(j)), int_cell(chi.exponent()), int_cell(rp.ell),
                           int_cell(rp.a_chi), int_cell(rp.b_chi), text_cell(std::string(to_string(regime))),
                           num_cell(D), num_cell(a), num_cell(a_prime)});
        }
      }
    }
  }
  return r;
}

inline CommandResult run_vdc(const RunConfig& c) {
  const double tol = tol_or(c, 1e-9);
  std::mt19937_64 rng(c.seed);
  std::uniform_int_distribution<i64> length(1, 200);
  CommandResult r;
  r.table = Table({"trial", "N", "H", "lhs", "rhs", "margin", "parseval", "autocorrelation"});
  for (int t = 0; t < c.trials; ++t) {
    const i64 n = length(rng);
    const i64 h = std::uniform_int_distribution<i64>(1, n)(rng);
    const auto a = random_sequence(rng, n);
    const auto ineq = vdc_inequality_check(a, h);
    const auto ident = amplified_l2_identity(a, h);
    if (!ineq.holds()) ++r.hard_failures;
    if (!ident.holds(tol)) ++r.hard_failures;
    r.table.add_row({int_cell(t), int_cell(n), int_cell(h), num_cell(ineq.lhs), num_cell(ineq.rhs),
                     num_cell(ineq.margin()), num_cell(ident.lhs), num_cell(ident.rhs)});
  }
  return r;
}

inline CommandResult run_shift_identity(const RunConfig& c) {
  const double tol = tol_or(c, 1e-8);
  std::mt19937_64 rng(c.seed);
  CommandResult r;
  r.table = Table({"q", "j", "trial", "chi_exponent", "N", "lhs", "rhs", "diagonal", "base_square"});
  for (i64 p : c.p_list) {
    for (int k : c.k_list) {
      const auto m = checked_modulus(p, k);
      const auto chars = primitive_characters(m);
      if (chars.empty()) continue;
      for (int j : c.j_list) {
        if (j > k) fail(errc::config_error, "shift-identity needs j <= k");
        for (int t = 0; t < c.trials; ++t) {
          const auto& chi = chars[std::uniform_int_distribution<std::size_t>(0, chars.size() - 1)(rng)];
          const i64 n = std::uniform_int_distribution<i64>(1, 3 * m->q())(rng);
          const auto a = random_sequence(rng, n);
          const auto check = coset_shift_identity(a, chi, j);
          if (!check.holds(tol)) ++r.hard_failures;
          r.table.add_row({int_cell(m->q()), int_cell(j), int_cell(t), int_cell(chi.exponent()), int_cell(n),
                           num_cell(check.lhs), num_cell(check.rhs), num_cell(check.diagonal),
                           num_cell(check.base_square)});
        }
      }
    }
  }
  return r;
}

/// Base character for the scans: the primitive character with exponent 1.
inline DirichletCharacter scan_character(const ModulusPtr& m) {
  DirichletCharacter chi(m, 1);
  if (!chi.is_primitive()) fail(errc::config_error, "scan needs k >= 1 with a primitive exponent-1 character");
  return chi;
}

inline CommandResult run_lemma9(const RunConfig& c) {
  CommandResult r;
  std::vector<Lemma9Row> rows;
  for (i64 p : c.p_list) {
    for (int k : c.k_list) {
      const auto m = checked_modulus(p, k);
      for (int j : c.j_list) {
        if (j > k) fail(errc::config_error, "lemma9 needs j <= k");
        const ScanGrid grid{m, j, c.A, c.B, c.T, c.T0, c.t_step};
        const auto scan = lemma9_scan(grid, scan_character(m));
        if (!scan.guard_ok()) {
          r.warnings.push_back("lemma9 q=" + std::to_string(m->q()) + " j=" + std::to_string(j) +
                               ": max ratio exceeds 3x the smallest-grid ratio");
        }
        rows.insert(rows.end(), scan.rows.begin(), scan.rows.end());
      }
    }
  }
  for (const auto& row : rows) {
    if (!std::isfinite(row.ratio)) ++r.hard_failures;
  }
  r.table = lemma9_table(rows);
  return r;
}

inline CommandResult run_hybrid(const RunConfig& c) {
  CommandResult r;
  std::vector<HybridMoment> rows;
  for (i64 p : c.p_list) {
    for (int k : c.k_list) {
      const auto m = checked_modulus(p, k);
      for (int j : c.j_list) {
        if (j > k) fail(errc::config_error, "hybrid needs j <= k");
        ScanGrid grid{m, j, c.A, c.B, c.T, c.T0, c.t_step};
        try {
          grid.validate();
          const auto chi = scan_character(m);
          const auto row = hybrid_moment_quadrature(grid, chi);
          if (!std::isfinite(row.ratio)) ++r.hard_failures;
          const double change = quadrature_step_halving_change(grid, chi);
          if (!(change < 0.01)) {
            r.warnings.push_back("hybrid q=" + std::to_string(m->q()) + ": step halving moves the integral by " +
                                 text::num(change));
          }
          rows.push_back(row);
        } catch (const error& e) {
          if (e.code() == errc::quadrature_too_coarse || e.code() == errc::precondition_violated) {
            fail(errc::config_error, std::string("hybrid: ") + e.what());
          }
          throw;
        }
      }
    }
  }
  r.table = hybrid_table(rows);
  return r;
}

}  // namespace detail

inline CommandResult execute(const RunConfig& c) {
  c.validate();
  const std::string& s = c.subcommand;
  if (s == "gauss-verify") return detail::run_gauss_verify(c);
  if (s == "coset-eps") return detail::run_coset_eps(c);
  if (s == "ratio") return detail::run_ratio(c);
  if (s == "near-one") return detail::run_near_one(c);
  if (s == "moment") return detail::run_moment(c);
  if (s == "recipe") return detail::run_recipe(c);
  if (s == "vdc") return detail::run_vdc(c);
  if (s == "shift-identity") return detail::run_shift_identity(c);
  if (s == "lemma9") return detail::run_lemma9(c);
  return detail::run_hybrid(c);
}

/// Runs one subcommand and writes its table to c.out (or `out`). Exit status:
/// 0 clean, 1 hard-assertion failure (or soft warning under --strict), 2 configuration error.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  CommandResult result;
  try {
    result = execute(c);
  } catch (const error& e) {
    err << e.what() << '\n';
    return e.code() == errc::config_error ? 2 : 1;
  }
  if (c.out.empty()) {
    result.table.write(out, c.format);
  } else {
    std::ofstream file(c.out, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "ConfigError: cannot open " << c.out << " for writing\n";
      return 2;
    }
    result.table.write(file, c.format);
    if (!file) {
      err << "ConfigError: write to " << c.out << " failed\n";
      return 2;
    }
  }
  for (const auto& w : result.warnings) err << "warning: " << w << '\n';
  if (result.hard_failures > 0) {
    err << result.hard_failures << " hard assertion(s) failed\n";
    return 1;
  }
  if (c.strict && !result.warnings.empty()) return 1;
  return 0;
}

}  // namespace cosetlfun
