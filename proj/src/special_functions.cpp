#include "circleq/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "circleq/errors.hpp"

namespace circleq {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
// exp() overflows a little above this; used as the "switch to logs" threshold
constexpr double kMaxExp = 700.0;

// Direct nome series 1 + 2 sum_{n>=1} e^{-t n^2} cos(2 pi v n), for t >= 1.
// Along n the summand is a Gaussian displaced by the imaginary part of v:
// its magnitude peaks near n0 = pi |Im v| / t at height e^{pi^2 (Im v)^2 / t},
// so the truncation index must clear the peak plus the decay distance.
// Range and precision guards live in theta3(), which knows the composed
// floor of the branch it dispatches to.
std::complex<double> theta3_series(std::complex<double> v, double t, double tol) {
  const double b = std::abs(v.imag());
  const double log_peak = kPi * kPi * b * b / t;
  const double n0 = kPi * b / t;
  const double decay = log_peak - std::log(tol / 4.0);
  const int m =
      static_cast<int>(std::ceil(n0 + std::sqrt(std::max(0.0, decay) / t))) + 2;
  // summed smallest-to-largest (n = m down to the n = 0 term last)
  std::complex<double> sum{0.0, 0.0};
  for (int n = m; n >= 1; --n) {
    const double nn = static_cast<double>(n);
    sum += 2.0 * std::exp(-t * nn * nn) * std::cos(2.0 * kPi * nn * v);
  }
  return sum + 1.0;
}

}  // namespace

std::complex<double> theta3(std::complex<double> v, double t, double tol) {
  if (!std::isfinite(t) || t <= 0.0)
    throw std::domain_error("theta3: t must be positive and finite");
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw std::domain_error("theta3: v must be finite");
  if (!std::isfinite(tol) || tol <= 0.0)
    throw std::domain_error("theta3: tol must be positive");

  // The function has period 1 in the real direction; reducing first keeps the
  // cosine arguments small and the modular prefactor below overflow for any
  // input, and makes the periodicity exact in floating point.
  v.real(v.real() - std::round(v.real()));

  const double b = std::abs(v.imag());
  const double log_peak = kPi * kPi * b * b / t;  // largest direct-series term

  if (t >= 1.0) {
    if (log_peak > kMaxExp)
      throw std::range_error("theta3: series peak overflows double; use log_theta3");
    if (std::log(tol) < log_peak + std::log(8.0 * kEps))
      throw PrecisionError(
          "theta3: tolerance below the double-precision floor for this argument; "
          "use log_theta3 or a looser tol");
    return theta3_series(v, t, tol);
  }

  // Slow-nome regime: apply the imaginary transformation once. With
  // tau = i t / pi it reads
  //   theta3(v | tau) = (-i tau)^{-1/2} e^{-i pi v^2 / tau} theta3(v/tau | -1/tau),
  // i.e. prefactor sqrt(pi/t) e^{-pi^2 v^2 / t} and a dual series at
  // t' = pi^2 / t > pi^2, argument v' = -i pi v / t.
  const std::complex<double> log_pref =
      0.5 * std::log(kPi / t) - kPi * kPi * v * v / t;
  const std::complex<double> dual_v{v.imag() * kPi / t, -v.real() * kPi / t};
  const double dual_t = kPi * kPi / t;
  // peak of the dual series, pi^2 Re(v)^2 / t; its rounding error times the
  // prefactor magnitude is the achievable absolute floor of this branch, and
  // that product collapses to sqrt(pi/t) e^{pi^2 Im(v)^2 / t} independent of
  // Re(v)
  const double dual_peak =
      kPi * kPi * dual_v.imag() * dual_v.imag() / dual_t;
  const double floor_log = 0.5 * std::log(kPi / t) + log_peak;
  if (dual_peak > kMaxExp || floor_log > kMaxExp)
    throw std::range_error("theta3: value overflows double; use log_theta3");
  if (std::log(tol) < floor_log + std::log(8.0 * kEps))
    throw PrecisionError(
        "theta3: tolerance below the double-precision floor for this argument; "
        "use log_theta3 or a looser tol");
  const std::complex<double> pref = std::exp(log_pref);
  // the dual series must be accurate to tol relative to the prefactor scale;
  // the cap only ever tightens the request, never loosens it
  const double scale = std::abs(pref);
  const double dual_tol = scale > 0.0 ? std::min(tol / scale, 0.25) : 0.25;
  return pref * theta3_series(dual_v, dual_t, dual_tol);
}

double log_theta3(double a, double t, double tol) {
  if (!std::isfinite(t) || t <= 0.0)
    throw std::domain_error("log_theta3: t must be positive and finite");
  if (!std::isfinite(a))
    throw std::domain_error("log_theta3: a must be finite");
  if (!std::isfinite(tol) || tol <= 0.0)
    throw std::domain_error("log_theta3: tol must be positive");

  if (t < 1.0) {
    // Modular route: sum_n e^{2an - tn^2} = sqrt(pi/t) e^{a^2/t} Theta(a/t, pi^2/t)
    // where Theta(mu, T) = 1 + 2 sum_{k>=1} e^{-T k^2} cos(2 pi k mu).
    // T >= pi^2 here, so a handful of correction terms reach any sensible tol,
    // and log1p keeps full precision when the corrections are tiny.
    const double big_t = kPi * kPi / t;
    const double mu = a / t;
    const int m = static_cast<int>(std::ceil(std::sqrt(
                      -std::log(std::min(tol, 0.1) / 4.0) / big_t))) + 1;
    double corr = 0.0;
    for (int k = m; k >= 1; --k) {
      const double kk = static_cast<double>(k);
      corr += 2.0 * std::exp(-big_t * kk * kk) * std::cos(2.0 * kPi * kk * mu);
    }
    return 0.5 * std::log(kPi / t) + a * a / t + std::log1p(corr);
  }

  // Lattice route: factor out the largest term, at n = round(a/t); the
  // remaining series is a sum of e^{-t (k -+ frac)^2}-type terms bounded by 1.
  const double m0 = std::nearbyint(a / t);
  const double e0 = 2.0 * a * m0 - t * m0 * m0;
  if (tol < 8.0 * kEps * (std::abs(e0) + 1.0))
    throw PrecisionError(
        "log_theta3: tolerance below the double-precision floor for this argument");
  const int m = static_cast<int>(std::ceil(std::sqrt(
                    -std::log(std::min(tol, 0.1) / 4.0) / t))) + 2;
  double rest = 0.0;
  for (int k = m; k >= 1; --k) {
    const double up = m0 + static_cast<double>(k);
    const double dn = m0 - static_cast<double>(k);
    rest += std::exp(2.0 * a * up - t * up * up - e0) +
            std::exp(2.0 * a * dn - t * dn * dn - e0);
  }
  return e0 + std::log1p(rest);
}

double bessel_i(int n, double x, double tol) {
  if (n < 0)
    throw std::domain_error("bessel_i: order must be nonnegative");
  if (!std::isfinite(x) || x < 0.0)
    throw std::domain_error("bessel_i: argument must be nonnegative and finite");
  if (!std::isfinite(tol) || tol <= 0.0)
    throw std::domain_error("bessel_i: tol must be positive");
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;

  const double h = 0.5 * x;
  double term = 1.0;  // (x/2)^n / n!
  for (int k = 1; k <= n; ++k) term *= h / static_cast<double>(k);
  double sum = term;
  const double h2 = h * h;
  for (int k = 1; k <= 500; ++k) {
    term *= h2 / (static_cast<double>(k) * static_cast<double>(k + n));
    sum += term;
    // Terms grow until k(k+n) catches up with (x/2)^2; only stop once past
    // that ridge AND below tolerance, otherwise small early terms would end
    // the loop prematurely for large x.
    if (term <= tol && h2 <= static_cast<double>(k + 1) * static_cast<double>(k + n + 1))
      return sum;
  }
  throw PrecisionError("bessel_i: series did not reach tolerance (argument too large)");
}

}  // namespace circleq
