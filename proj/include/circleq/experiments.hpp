#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "circleq/state.hpp"
#include "circleq/uncertainty.hpp"

namespace circleq {

/// Bad run configuration or command-line input. The CLI maps this to exit
/// code 64.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shared knobs for the experiment drivers; each driver reads the subset it
/// needs. Defaults reproduce the canonical runs.
struct RunConfig {
  double l = 1.0;       // state center (momentum offset)
  double phi = 0.0;     // state center (angle)
  double s = 1.0;       // squeezing strength for single-state commands
  double s0 = 1.0;      // reference strength of the generalized measure
  double s_min = 0.1;   // scan grid lower edge
  double s_max = 4.0;   // scan grid upper edge
  int steps = 400;      // scan grid points (rows), endpoints included
  int n_trunc = 0;      // basis half-width; 0 = auto-size per state
  double tol = 1e-12;   // series tolerance passed through to the evaluators
  std::uint64_t seed = 12345;  // RNG seed for the sweep
  int trials = 10000;   // random states per sweep
  std::string out;      // output path (meaning varies per command)
};

/// Validates ranges (positive strengths, s_min < s_max, steps >= 2,
/// trials >= 1, tol > 0, n_trunc >= 0); throws UsageError with a message
/// naming the offending field.
void validate(const RunConfig& cfg);

struct ScanRow {
  double s = 0.0;
  double d2j_gen = 0.0;
  double d2phi = 0.0;
  double sum = 0.0;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  double s_at_min = 0.0;  // argmin of the sum, refined off-grid
  double min_sum = 0.0;
};

/// Closed form of the scan ordinate on the squeezed family at center l:
/// the generalized momentum uncertainty via log_theta3 plus the exact s/2
/// angle part. Used for the off-grid minimum refinement and as the second
/// route in two-route consistency checks.
double squeeze_scan_ordinate(double l, double s, double s0);

/// Sweeps squeezing s over [s_min, s_max] for the state family centered at
/// (l, phi), recording the generalized momentum uncertainty (reference s0),
/// the angle uncertainty, and their sum per grid point; then refines the
/// discrete argmin by golden-section search on the closed form to ~1e-8.
ScanResult scan_squeeze(const RunConfig& cfg);

/// CSV for the scan: config-echo comment lines, a column header comment, the
/// refined minimum as a comment, then "s,d2J_gen,d2phi,sum" rows. Identical
/// configs produce byte-identical output.
std::string scan_csv(const ScanResult& res, const RunConfig& cfg);

struct IdentityCheck {
  std::string name;
  double worst = 0.0;  // largest absolute residual over the built-in grid
  double tol = 0.0;
  bool pass = false;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool all_pass = false;
};

/// Evaluates the closed-form identities of the coherent and squeezed families
/// (exponential moments, squared-ladder expectation, their product relation,
/// and the matched uncertainty values) over a fixed grid of centers and
/// strengths, reporting the worst residual per identity against a pinned
/// 1e-9 tolerance.
IdentityReport verify_identities(const RunConfig& cfg);

struct ClassicalLimitReport {
  double max_j_dev = 0.0;      // max |<J> - l| over the l grid
  double max_ratio_dev = 0.0;  // max |<U>_xi / <U>_base - e^{i phi}|
  double max_exact_dev = 0.0;  // worst residual at the exactness points
  bool pass = false;
};

/// Classical-limit check on coherent states over 201 points of l in [0, 2]:
/// <J> tracks l and the <U> ratio against the l = 0 base state tracks
/// e^{i phi}, both within 2e-3; additionally <J> is exact (1e-12) at integer
/// and half-integer l, and the ratio is exact at integer l, where the
/// respective lattice corrections vanish identically.
ClassicalLimitReport verify_classical_limits(const RunConfig& cfg);

struct InequalityStat {
  std::string name;
  double min_slack = 0.0;  // most negative observed left - right
  int argmin_trial = -1;   // trial index of the minimum (-1: grid-based)
};

struct SweepResult {
  std::vector<InequalityStat> stats;
  /// A theorem-backed inequality (uncertainty products, Schwarz bound,
  /// exponential-moment product, legacy window) dipped below its floor —
  /// a numerical failure, CLI exit 1.
  bool numerical_failure = false;
  /// The conjectured sum relation delta2_j + delta2_phi >= 1 failed by more
  /// than 1e-9: the offending state, serialized, plus its trial index.
  /// CLI exit 2.
  std::optional<std::string> counterexample_csv;
  int counterexample_trial = -1;
};

/// Random-state stress test: `trials` envelope states from EnvelopeSampler
/// (deterministic in `seed`), tracking the minimum slack of every inequality
/// the library asserts, plus the legacy-measure window check on a coherent
/// grid.
SweepResult sweep_inequalities(const RunConfig& cfg);

/// Writes the figure data sets into out_dir: fig1_s0=<v>.csv for
/// s0 in {0.5, 1, 1.5} (columns s,d2J_gen,d2phi,sum over 391 points of
/// s in [0.1, 4], spacing 0.01 so each s0 lies on the grid) and fig2.csv
/// (columns s0,s_min,f_min for s0 in [0.2, 2] step 0.05, minima refined
/// off-grid).
void emit_figure_data(const RunConfig& cfg, const std::filesystem::path& out_dir);

}  // namespace circleq
