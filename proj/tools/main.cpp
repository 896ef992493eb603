#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cosetlfun/cli.hpp"

namespace {

constexpr const char* kColumns = R"(CSV columns per subcommand (JSONL mirrors them):
  gauss-verify, ratio, near-one: instance, brute, closed, abs_err, rel_err, micros
  coset-eps:       q, j, regime, chi_exponent, m, brute, closed, abs_err
  moment:          q, q0, chi_exponent, ell, a_chi, b_chi, regime, empirical, D, A,
                   residual, baseline_residual, error_scale
  recipe:          q, q0, chi_exponent, ell, a_chi, b_chi, regime, D, A, A_prime
  vdc:             trial, N, H, lhs, rhs, margin, parseval, autocorrelation
  shift-identity:  q, j, trial, chi_exponent, N, lhs, rhs, diagonal, base_square
  lemma9:          q, q0, A, B, sum_S, envelope, ratio   (B = 0 is the n = 0 line)
  hybrid:          q, q0, T, T0, lhs, envelope, ratio
Exit status: 0 ok, 1 hard assertion failed (or warning with --strict), 2 bad configuration.)";

std::string describe_subcommand(std::string_view name) {
  if (name == "gauss-verify") return "explicit Gauss sums against direct summation";
  if (name == "coset-eps") return "coset averages of root numbers, closed form vs direct";
  if (name == "ratio") return "Gauss sum ratios within a coset";
  if (name == "near-one") return "root numbers pinned near 1 on a coset (even k)";
  if (name == "moment") return "second moment of L(1/2) over even coset slices vs prediction";
  if (name == "recipe") return "predicted main and secondary terms only";
  if (name == "vdc") return "shifting inequality and Parseval identity on random sequences";
  if (name == "shift-identity") return "coset shift identity for twisted sums";
  if (name == "lemma9") return "dyadic scan of the shifted character sums";
  return "quadrature of the hybrid second moment on [T, T+T0]";
}

}  // namespace

int main(int argc, char** argv) {
  cosetlfun::RunConfig config;
  CLI::App app{"Gauss sums, root numbers and central L-values along cosets mod p^k"};
  app.footer(kColumns);
  app.require_subcommand(1);

  std::string format = "csv";
  std::optional<unsigned> workers;

  for (auto name : cosetlfun::kSubcommands) {
    auto* sub = app.add_subcommand(std::string(name), describe_subcommand(name));
    sub->add_option("--p", config.p_list, "primes")->delimiter(',');
    sub->add_option("--k", config.k_list, "exponents")->delimiter(',');
    sub->add_option("--j", config.j_list, "coset levels")->delimiter(',');
    sub->add_option("--m-samples", config.m_samples, "sampled units per instance");
    sub->add_option("--seed", config.seed, "64-bit seed");
    sub->add_option("--tolerance", config.tolerance, "override the hard-assertion tolerance");
    sub->add_option("--out", config.out, "report path (default stdout)");
    sub->add_option("--format", format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
    sub->add_option("--workers", workers, "worker threads (env COSETLFUN_WORKERS)");
    sub->add_flag("--strict", config.strict, "treat soft warnings as failures");
    sub->add_flag("--timing", config.timing, "record wall-clock micros in verification tables");
    sub->add_option("--T", config.T, "height of the t-window");
    sub->add_option("--T0", config.T0, "length of the t-window");
    sub->add_option("--t-step", config.t_step, "quadrature step");
    sub->add_option("--A", config.A, "shift range");
    sub->add_option("--B", config.B, "frequency range");
    sub->add_option("--trials", config.trials, "random instances");
  }

  CLI11_PARSE(app, argc, argv);

  config.subcommand = app.get_subcommands().front()->get_name();
  config.format = format == "jsonl" ? cosetlfun::Format::jsonl : cosetlfun::Format::csv;
  try {
    config.workers = workers ? *workers : cosetlfun::default_workers();
  } catch (const cosetlfun::error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  return cosetlfun::run(config, std::cout, std::cerr);
}
