// End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "cosetlfun/cosetlfun.hpp"

using namespace cosetlfun;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

template <class T>
std::vector<T> sample(std::mt19937_64& rng, const std::vector<T>& pool, std::size_t count) {
  if (pool.size() <= count) return pool;
  std::vector<T> out;
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (std::size_t i = 0; i < count; ++i) out.push_back(pool[pick(rng)]);
  return out;
}

std::vector<i64> units(std::mt19937_64& rng, const PrimePowerModulus& m, int count) {
  std::uniform_int_distribution<i64> pick(1, m.q() - 1);
  std::vector<i64> out;
  while (static_cast<int>(out.size()) < count) {
    const i64 x = pick(rng);
    if (m.is_unit(x)) out.push_back(x);
  }
  return out;
}

Verdict gauss_magnitude() {
  std::mt19937_64 rng(1);
  double worst = 0.0;
  std::size_t checks = 0;
  for (i64 p : {3, 5, 7, 11}) {
    for (int k = 1; checked_pow(p, k) <= 2500; ++k) {
      const auto m = make_modulus(p, k);
      const double q = static_cast<double>(m->q());
      for (const auto& chi : primitive_characters(m)) {
        for (i64 mm : units(rng, *m, 5)) {
          worst = std::max(worst, std::abs(std::norm(gauss_sum_brute(chi, mm)) - q) / q);
          ++checks;
        }
      }
    }
  }
  return {worst < 1e-6, std::to_string(checks) + " sums, worst ||tau|^2 - q|/q = " + fmt(worst)};
}

Verdict odoni() {
  double worst = 0.0;
  std::size_t checks = 0;
  for (auto [p, k] : {std::pair{3, 2}, {3, 4}, {5, 2}, {5, 3}, {5, 4}, {5, 5}, {7, 2}, {7, 3}}) {
    const auto m = make_modulus(p, k);
    for (const auto& chi : primitive_characters(m)) {
      const auto r = VerificationReport::compare("", gauss_sum_brute(chi), gauss_sum_odoni(chi).value);
      worst = std::max(worst, r.rel_err);
      ++checks;
    }
  }
  bool guard = false;
  try {
    gauss_sum_odoni(DirichletCharacter(make_modulus(3, 3), 1));
  } catch (const error& e) {
    guard = e.code() == errc::unsupported_regime;
  }
  return {worst < 1e-9 && guard, std::to_string(checks) + " characters, worst rel err " + fmt(worst) +
                                     ", 3^3 guard " + (guard ? "UnsupportedRegime" : "missing")};
}

Verdict ratio() {
  const auto m = make_modulus(3, 4);
  std::mt19937_64 rng(3);
  const auto ms = units(rng, *m, 10);
  GaussSumCache cache(m);
  const auto chars = primitive_characters(m);
  double worst = 0.0;
  std::size_t checks = 0;
  for (const auto& a : chars) {
    for (const auto& b : chars) {
      if ((a * b.conj()).conductor_exponent() > 2) continue;
      for (i64 mm : ms) {
        worst = std::max(worst, gauss_ratio_check(a, b, mm, &cache).abs_err);
        ++checks;
      }
    }
  }
  return {worst < 1e-9, std::to_string(checks) + " (chi1, chi2, m) at q=81, worst residual " + fmt(worst)};
}

Verdict coset_eps() {
  std::mt19937_64 rng(4);
  double worst = 0.0;
  std::size_t checks = 0, supported = 0;
  for (i64 p : {3, 5, 7}) {
    for (int k = 2; k <= 5; ++k) {
      const auto m = make_modulus(p, k);
      const auto even = primitive_characters(m, Parity::even);
      GaussSumCache cache(m);
      for (int j = 1; j < k; ++j) {
        for (EpsRegime regime : {EpsRegime::linear, EpsRegime::quadratic}) {
          if (!eps_regime_valid(regime, p, k, j)) continue;
          for (const auto& chi : sample(rng, even, 2)) {
            const CosetSpec spec{chi, j, Parity::even};
            const i64 ell = postnikov_ell(chi);
            const i64 window = regime == EpsRegime::linear ? m->p_power(k - j) : m->p_power(j);
            // Half uniform, half on the support of the delta condition.
            auto ms = units(rng, *m, 10);
            std::uniform_int_distribution<i64> lift(0, m->q() / window - 1);
            for (int i = 0; i < 10; ++i) {
              const i64 base = i % 2 == 0 ? -ell : ell;
              ms.push_back(mod_floor(base + window * lift(rng), m->q()));
            }
            for (i64 mm : ms) {
              const cplx closed = coset_epsilon_average_closed(spec, mm, regime);
              worst = std::max(worst, std::abs(coset_epsilon_average(spec, mm, &cache) - closed));
              supported += closed != cplx{};
              ++checks;
            }
          }
        }
      }
    }
  }
  return {worst < 1e-9, std::to_string(checks) + " averages (" + std::to_string(supported) +
                            " on the delta support), worst abs err " + fmt(worst)};
}

Verdict near_one() {
  double worst = 0.0;
  std::size_t checks = 0;
  for (auto [p, k] : {std::pair{3, 4}, {5, 4}}) {
    for (const auto& r : near_one_root_number_check(make_modulus(p, k))) {
      worst = std::max(worst, r.abs_err);
      ++checks;
    }
  }
  return {worst < 1e-9, std::to_string(checks) + " coset members, worst |tau - p^n e(1/q)| " + fmt(worst)};
}

Verdict functional_equation() {
  const HurwitzZeta half(0.5);
  double worst = 0.0, worst_bound = 0.0;
  std::size_t checks = 0;
  auto check = [&](const DirichletCharacter& chi) {
    const auto r = functional_equation_check(chi, &half);
    worst = std::max(worst, r.residual);
    worst_bound = std::max(worst_bound, r.error_bound);
    ++checks;
  };
  for (i64 p = 3; p <= 243; p += 2) {
    if (!is_prime(p)) continue;
    for (int k = 1; checked_pow(p, k) <= 243; ++k) {
      for (const auto& chi : primitive_characters(make_modulus(p, k), Parity::even)) check(chi);
    }
  }
  std::mt19937_64 rng(6);
  for (const auto& chi : sample(rng, primitive_characters(make_modulus(5, 6), Parity::even), 50)) check(chi);
  return {worst < 1e-8, std::to_string(checks) + " characters, worst residual " + fmt(worst) + " (error bound " +
                            fmt(worst_bound) + ")"};
}

Verdict moment_improvement() {
  Verdict v;
  std::map<i64, double> mean_ratio;
  for (auto [p, k, j] : {std::tuple{3, 4, 2}, {3, 5, 3}, {5, 4, 2}, {5, 6, 3}}) {
    const auto m = make_modulus(p, k);
    std::map<i64, double> moment_by_coset;
    int total = 0, improved = 0;
    double ratio_sum = 0.0;
    for (const auto& chi : primitive_characters(m, Parity::even)) {
      const CosetSpec spec{chi, j, Parity::even};
      if (std::abs(recipe_params(chi, j).a_chi) > 2) continue;
      auto it = moment_by_coset.find(spec.canonical_exponent());
      if (it == moment_by_coset.end()) {
        it = moment_by_coset.emplace(spec.canonical_exponent(), empirical_coset_moment(spec).value).first;
      }
      const auto r = moment_report(spec, it->second);
      ++total;
      improved += std::abs(r.residual) < std::abs(r.baseline_residual);
      ratio_sum += std::abs(r.residual) / r.A;
    }
    mean_ratio[m->q()] = ratio_sum / total;
    if (improved != total) v.pass = false;
    v.detail += std::to_string(m->q()) + " j=" + std::to_string(j) + ": " + std::to_string(improved) + "/" +
                std::to_string(total) + " improved, mean |r|/A " + fmt(ratio_sum / total) + "; ";
  }
  const bool trend = mean_ratio.at(15625) < mean_ratio.at(81);
  if (!trend) v.pass = false;
  v.detail += std::string("trend 5^6 < 3^4: ") + (trend ? "yes" : "no");
  return v;
}

Verdict half_level_consistency() {
  const auto m = make_modulus(5, 4);
  std::size_t checks = 0, equal = 0;
  for (const auto& chi : primitive_characters(m, Parity::even)) {
    equal += predict_A(chi, 2) == predict_A_prime(chi, 2);
    ++checks;
  }
  return {equal == checks, std::to_string(equal) + "/" + std::to_string(checks) + " bit-identical"};
}

Verdict van_der_corput() {
  std::mt19937_64 rng(0);
  std::size_t ineq_fail = 0, parseval_fail = 0, shift_fail = 0, shift_checks = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const i64 n = std::uniform_int_distribution<i64>(1, 200)(rng);
    const i64 h = std::uniform_int_distribution<i64>(1, n)(rng);
    ineq_fail += !vdc_inequality_check(random_sequence(rng, n), h).holds();
  }
  auto phases = [](i64 n, auto&& turns) {
    std::vector<cplx> c;
    for (i64 i = 1; i <= n; ++i) c.push_back(std::polar(1.0, 2.0 * std::numbers::pi * turns(static_cast<double>(i))));
    return FiniteSequence{1, std::move(c)};
  };
  const std::vector<FiniteSequence> adversarial = {
      FiniteSequence{1, std::vector<cplx>(150, cplx{1.0, 0.0})},
      phases(150, [](double n) { return 0.5 * n; }),
      phases(150, [](double n) { return n * n / 150.0; }),
  };
  for (const auto& a : adversarial) {
    for (i64 h = 1; h <= a.size(); ++h) ineq_fail += !vdc_inequality_check(a, h).holds();
  }
  for (int trial = 0; trial < 500; ++trial) {
    const i64 n = std::uniform_int_distribution<i64>(1, 200)(rng);
    const i64 h = std::uniform_int_distribution<i64>(1, n)(rng);
    parseval_fail += !amplified_l2_identity(random_sequence(rng, n), h).holds(1e-9);
  }
  for (auto [p, k] : {std::pair{3, 3}, {5, 2}}) {
    const auto m = make_modulus(p, k);
    const auto chars = primitive_characters(m);
    for (int trial = 0; trial < 100; ++trial) {
      const auto& chi = chars[std::uniform_int_distribution<std::size_t>(0, chars.size() - 1)(rng)];
      const auto a = random_sequence(rng, std::uniform_int_distribution<i64>(1, 3 * m->q())(rng));
      for (int j = 0; j <= 2; ++j) {
        shift_fail += !coset_shift_identity(a, chi, j).holds(1e-8);
        ++shift_checks;
      }
    }
  }
  return {ineq_fail + parseval_fail + shift_fail == 0,
          "inequality failures " + std::to_string(ineq_fail) + " (1000 random + 3 families over all H), Parseval " +
              std::to_string(parseval_fail) + "/500, coset shift " + std::to_string(shift_fail) + "/" +
              std::to_string(shift_checks)};
}

Verdict hybrid_scans() {
  Verdict v;
  std::string failing;
  int scans = 0;
  for (int k = 2; k <= 6; ++k) {
    for (int j = 1; j < k; ++j) {
      ScanGrid g;
      g.modulus = make_modulus(3, k);
      g.j = j;
      g.A = 16;
      g.B = 16;
      const auto scan = lemma9_scan(g, DirichletCharacter(g.modulus, 1));
      ++scans;
      if (!scan.guard_ok() || !scan.guard_zero_ok()) {
        v.pass = false;
        failing += " 3^" + std::to_string(k) + " j=" + std::to_string(j) + " (max " + fmt(scan.max_ratio) + " vs base " +
                   fmt(scan.base_ratio) + ", zero line " + fmt(scan.max_ratio_zero) + " vs " +
                   fmt(scan.base_ratio_zero) + ")";
      }
    }
  }
  ScanGrid g;
  g.modulus = make_modulus(3, 4);
  g.j = 1;
  g.T = 10.0;
  g.T0 = 2.0;
  g.t_step = 0.05;
  const DirichletCharacter chi(g.modulus, 1);
  const auto h = hybrid_moment_quadrature(g, chi);
  const double change = quadrature_step_halving_change(g, chi);
  const bool quad_ok = std::isfinite(h.ratio) && change < 0.01;
  if (!quad_ok) v.pass = false;
  v.detail = std::to_string(scans) + " lemma9 scans, guard failures:" + (failing.empty() ? " none" : failing) +
             "; hybrid ratio " + fmt(h.ratio) + ", step-halving change " + fmt(change);
  return v;
}

Verdict determinism() {
  const auto dir = std::filesystem::temp_directory_path();
  std::vector<std::string> contents;
  for (int i = 0; i < 2; ++i) {
    RunConfig c;
    c.subcommand = "moment";
    c.p_list = {5};
    c.k_list = {4};
    c.j_list = {2};
    c.seed = 7;
    c.out = (dir / ("cosetlfun_acceptance_" + std::to_string(i) + ".csv")).string();
    std::ostringstream sink, err;
    const int code = run(c, sink, err);
    if (code != 0) return {false, "run exited " + std::to_string(code) + ": " + err.str()};
    std::ifstream in(c.out, std::ios::binary);
    contents.emplace_back(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    std::filesystem::remove(c.out);
  }
  const bool same = !contents[0].empty() && contents[0] == contents[1];
  return {same, std::to_string(contents[0].size()) + " bytes, " + (same ? "identical" : "different")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"Gauss magnitude", gauss_magnitude},
      {"explicit Gauss sums", odoni},
      {"Gauss sum ratio", ratio},
      {"coset root-number averages", coset_eps},
      {"root number near one", near_one},
      {"functional equation", functional_equation},
      {"moment secondary term improvement", moment_improvement},
      {"k = 2j secondary term consistency", half_level_consistency},
      {"van der Corput", van_der_corput},
      {"hybrid scans", hybrid_scans},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": " << v.detail << " ("
              << fmt(secs) << " s)" << std::endl;
  }
  std::cout << criteria.size() - failures << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
