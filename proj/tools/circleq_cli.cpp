#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "circleq/experiments.hpp"
#include "circleq/format.hpp"
#include "circleq/state.hpp"
#include "circleq/uncertainty.hpp"

namespace {

int run_scan(const circleq::RunConfig& cfg) {
  const auto res = circleq::scan_squeeze(cfg);
  const std::string path = cfg.out.empty() ? "scan.csv" : cfg.out;
  std::ofstream os(path);
  if (!os) {
    std::cerr << "error: cannot open " << path << " for writing\n";
    return 1;
  }
  os << circleq::scan_csv(res, cfg);
  std::cout << "wrote " << path << " (" << res.rows.size() << " rows)\n"
            << "minimum: s = " << circleq::g17(res.s_at_min)
            << ", sum = " << circleq::g17(res.min_sum) << "\n";
  return 0;
}

int run_identities(const circleq::RunConfig& cfg) {
  const auto rep = circleq::verify_identities(cfg);
  for (const auto& c : rep.checks)
    std::printf("%s  %-58s worst residual %.3e (tol %.0e)\n",
                c.pass ? "PASS" : "FAIL", c.name.c_str(), c.worst, c.tol);
  std::cout << (rep.all_pass ? "all identities hold\n" : "identity check FAILED\n");
  return rep.all_pass ? 0 : 1;
}

int run_classical(const circleq::RunConfig& cfg) {
  const auto rep = circleq::verify_classical_limits(cfg);
  std::cout << "max |<J> - l| over the grid:        " << circleq::g17(rep.max_j_dev)
            << "\n"
            << "max |U-ratio - e^{i phi}|:          " << circleq::g17(rep.max_ratio_dev)
            << "\n"
            << "worst residual at exactness points: " << circleq::g17(rep.max_exact_dev)
            << "\n"
            << (rep.pass ? "classical limits hold\n" : "classical limit check FAILED\n");
  return rep.pass ? 0 : 1;
}

int run_sweep(const circleq::RunConfig& cfg) {
  const auto res = circleq::sweep_inequalities(cfg);
  for (const auto& s : res.stats) {
    std::printf("min slack %+.6e", s.min_slack);
    if (s.argmin_trial >= 0)
      std::printf(" (trial %6d)", s.argmin_trial);
    else
      std::printf("               ");
    std::printf("  %s\n", s.name.c_str());
  }
  if (res.counterexample_csv) {
    const std::string path = cfg.out.empty() ? "counterexample_state.csv" : cfg.out;
    std::ofstream os(path);
    if (os) os << *res.counterexample_csv;
    std::cout << "counterexample to the sum relation at trial "
              << res.counterexample_trial << "; state written to " << path << "\n";
    return 2;
  }
  if (res.numerical_failure) {
    std::cout << "numerical FAILURE: a theorem-backed inequality fell below its floor\n";
    return 1;
  }
  std::cout << "all inequalities held over " << cfg.trials << " trials\n";
  return 0;
}

int run_figures(const circleq::RunConfig& cfg) {
  const std::string dir = cfg.out.empty() ? "." : cfg.out;
  circleq::emit_figure_data(cfg, dir);
  std::cout << "wrote fig1_s0=0.5.csv, fig1_s0=1.csv, fig1_s0=1.5.csv, fig2.csv in "
            << dir << "\n";
  return 0;
}

int run_state(const circleq::RunConfig& cfg) {
  circleq::validate(cfg);  // bad command-line values are usage errors, not faults
  const auto st =
      circleq::squeezed_state(circleq::PhasePoint(cfg.l, cfg.phi), cfg.s, cfg.n_trunc);
  if (cfg.out.empty()) {
    circleq::dump_state_csv(st, std::cout);
    return 0;
  }
  std::ofstream os(cfg.out);
  if (!os) {
    std::cerr << "error: cannot open " << cfg.out << " for writing\n";
    return 1;
  }
  circleq::dump_state_csv(st, os);
  std::cout << "wrote " << cfg.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uncertainty toolkit for coherent and squeezed states on the circle"};
  app.require_subcommand(1);
  circleq::RunConfig cfg;

  auto* scan =
      app.add_subcommand("scan", "sweep squeezing strength, report the uncertainty sum");
  scan->add_option("--l", cfg.l, "family center: momentum offset");
  scan->add_option("--phi", cfg.phi, "family center: angle");
  scan->add_option("--s0", cfg.s0, "reference strength of the generalized measure");
  scan->add_option("--s-min", cfg.s_min, "grid lower edge");
  scan->add_option("--s-max", cfg.s_max, "grid upper edge");
  scan->add_option("--steps", cfg.steps, "number of grid points");
  scan->add_option("--n-trunc", cfg.n_trunc, "basis half-width (0 = auto)");
  scan->add_option("--tol", cfg.tol, "series tolerance");
  scan->add_option("--out", cfg.out, "output CSV path (default scan.csv)");

  auto* identities = app.add_subcommand(
      "identities", "check the closed-form identities of the state families");
  identities->add_option("--n-trunc", cfg.n_trunc, "basis half-width (0 = auto)");
  identities->add_option("--tol", cfg.tol, "series tolerance");

  auto* classical =
      app.add_subcommand("classical", "check the classical limits on coherent states");
  classical->add_option("--phi", cfg.phi, "family center: angle");
  classical->add_option("--n-trunc", cfg.n_trunc, "basis half-width (0 = auto)");
  classical->add_option("--tol", cfg.tol, "series tolerance");

  auto* sweep =
      app.add_subcommand("sweep", "stress-test every inequality on random states");
  sweep->add_option("--s0", cfg.s0, "reference strength of the generalized measure");
  sweep->add_option("--seed", cfg.seed, "RNG seed");
  sweep->add_option("--trials", cfg.trials, "number of random states");
  sweep->add_option("--n-trunc", cfg.n_trunc, "basis half-width of the samples");
  sweep->add_option("--tol", cfg.tol, "series tolerance");
  sweep->add_option("--out", cfg.out, "counterexample output path");

  auto* figures = app.add_subcommand("figures", "emit the figure data sets");
  figures->add_option("--l", cfg.l, "family center: momentum offset");
  figures->add_option("--phi", cfg.phi, "family center: angle");
  figures->add_option("--n-trunc", cfg.n_trunc, "basis half-width (0 = auto)");
  figures->add_option("--tol", cfg.tol, "series tolerance");
  figures->add_option("--out", cfg.out, "output directory (default .)");

  auto* state = app.add_subcommand("state", "dump a squeezed state as CSV");
  state->add_option("--l", cfg.l, "state center: momentum offset");
  state->add_option("--phi", cfg.phi, "state center: angle");
  state->add_option("--s", cfg.s, "squeezing strength");
  state->add_option("--n-trunc", cfg.n_trunc, "basis half-width (0 = auto)");
  state->add_option("--out", cfg.out, "output path (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 64;
  }

  try {
    if (scan->parsed()) return run_scan(cfg);
    if (identities->parsed()) return run_identities(cfg);
    if (classical->parsed()) return run_classical(cfg);
    if (sweep->parsed()) return run_sweep(cfg);
    if (figures->parsed()) return run_figures(cfg);
    if (state->parsed()) return run_state(cfg);
  } catch (const circleq::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 64;
}
