#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace circleq {

/// Point (l, phi) on the cylinder that labels a coherent state; the complex
/// label is xi = e^{-l + i phi}. phi is stored reduced to [0, 2 pi).
struct PhasePoint {
  double l = 0.0;
  double phi = 0.0;

  PhasePoint() = default;
  PhasePoint(double l_in, double phi_in);

  std::complex<double> xi() const;
  static PhasePoint from_xi(std::complex<double> xi);
};

/// Squeezing strength s paired with the reference strength s0 that the
/// generalized momentum uncertainty is measured against. Both must be
/// positive and finite.
struct SqueezeParams {
  double s = 1.0;
  double s0 = 1.0;

  SqueezeParams() = default;
  SqueezeParams(double s_in, double s0_in);
};

/// A state on the circle in the integer angular-momentum basis: coefficients
/// c_j = <j|psi> for j in [-n_trunc, n_trunc]. Value type; every operation on
/// it is a pure function. States are held UNNORMALIZED — all expectation
/// values divide by the squared norm — so the analytic coefficient formulas
/// can be used verbatim.
class CircleState {
 public:
  CircleState(int n_trunc, std::vector<std::complex<double>> coeffs);

  int n_trunc() const { return n_trunc_; }

  /// c_j; returns 0 outside the truncation window.
  std::complex<double> coeff(int j) const {
    if (j < -n_trunc_ || j > n_trunc_) return {0.0, 0.0};
    return coeffs_[static_cast<std::size_t>(j + n_trunc_)];
  }

  const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }

 private:
  int n_trunc_;
  std::vector<std::complex<double>> coeffs_;
};

/// Truncation size large enough that the Gaussian envelope e^{l j - s j^2/2}
/// has decayed to ~1e-16 of its peak at the window edge.
int auto_n_trunc(double l, double s);

/// Coherent state: c_j = e^{l j - i phi j} e^{-j^2/2}. n_trunc = 0 auto-sizes.
CircleState coherent_state(const PhasePoint& p, int n_trunc = 0);

/// Squeezed state: c_j = e^{l j - i phi j} e^{-s j^2/2}, s > 0. s = 1
/// reproduces coherent_state bit-for-bit. n_trunc = 0 auto-sizes.
CircleState squeezed_state(const PhasePoint& p, double s, int n_trunc = 0);

/// Circular (von Mises style) squeezed state centered at integer momentum l
/// and angle alpha: c_j proportional to I_{j-l}(s) e^{-i (j - l) alpha},
/// returned normalized. n_trunc = 0 auto-sizes.
CircleState circular_squeezed_state(double alpha, int l, double s, int n_trunc = 0);

/// Basis vector |j0>. Requires |j0| <= n_trunc (n_trunc >= 1 must be given
/// explicitly; there is no natural auto size for a delta spike).
CircleState momentum_eigenstate(int j0, int n_trunc);

/// Ladder operator U = e^{i phi_op}: shifts every coefficient up one slot,
/// c'_{j+1} = c_j. The top coefficient falls off the window; if
/// truncation_loss is non-null it receives the lost probability weight
/// |c_N|^2 / norm^2 (0 for the zero state). Losses above ~1e-10 mean the
/// window is too tight for repeated laddering.
CircleState apply_u(const CircleState& st, double* truncation_loss = nullptr);

/// Inverse ladder U^dagger: c'_{j-1} = c_j, reporting the weight of the
/// bottom coefficient that falls off.
CircleState apply_u_dagger(const CircleState& st, double* truncation_loss = nullptr);

/// Angular momentum operator: c'_j = j c_j. Exact on the window (no loss).
CircleState apply_j(const CircleState& st);

/// <a|b> over the common window (coefficients beyond either window are zero).
std::complex<double> inner_product(const CircleState& a, const CircleState& b);

/// <psi|psi> = sum |c_j|^2.
double norm2(const CircleState& st);

/// State scaled to unit norm; throws std::domain_error on the zero state.
CircleState normalize(const CircleState& st);

/// Multiplies c_j by e^{-ds j^2 / 2}, mapping the squeezed family s -> s + ds
/// without rebuilding the state. ds < 0 widens the envelope: if the result no
/// longer decays at the window edge, throws TruncationError; individual
/// coefficient overflow throws std::range_error.
CircleState resqueeze(const CircleState& st, double ds);

/// State CSV: one header line "# circleq-state v1 N=<n>", then 2N+1 rows
/// "j,re,im" for j = -N..N in order, full 17-digit precision.
void dump_state_csv(const CircleState& st, std::ostream& os);
std::string dump_state_csv(const CircleState& st);

/// Parses the dump format back; throws std::runtime_error on malformed input
/// (bad header, out-of-order rows, wrong row count, non-numeric fields).
CircleState load_state_csv(std::istream& is);
CircleState load_state_csv(const std::string& text);

}  // namespace circleq
