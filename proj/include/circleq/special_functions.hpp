#pragma once

#include <complex>

namespace circleq {

/// Default absolute tolerance for the series evaluators below.
inline constexpr double kDefaultTol = 1e-12;

/// Third Jacobi theta function with nome q = e^{-t}:
///
///   theta3(v, t) = sum_n q^{n^2} e^{2 pi i v n} = 1 + 2 sum_{n>=1} e^{-t n^2} cos(2 pi v n)
///
/// for complex v and t > 0. Re(v) is reduced modulo the exact period 1 first.
/// For t < 1 the direct series converges slowly, so the imaginary (modular)
/// transformation is applied first and the fast dual series at t' = pi^2/t is
/// summed instead; term counts stay small everywhere.
///
/// tol is absolute. The achievable floor scales with the largest series term,
/// e^{pi^2 Im(v)^2 / t}: callers probing large |Im v| must loosen tol
/// accordingly (typically by the magnitude of the expected value).
///
/// Errors: std::domain_error for t <= 0, tol <= 0 or non-finite v;
/// PrecisionError when tol is below what double precision can deliver for
/// this argument (large |Im v| inflates the terms); std::range_error when the
/// value itself overflows double — use log_theta3 for those regimes.
std::complex<double> theta3(std::complex<double> v, double t, double tol = kDefaultTol);

/// Logarithm of the Gaussian lattice sum over all integers:
///
///   log_theta3(a, t) = ln sum_n e^{2 a n - t n^2},   t > 0, a real.
///
/// This equals ln theta3(i a / pi, t) and is the form every squared norm and
/// exponential moment in this library reduces to. The dominant lattice term
/// is factored out before summing, so the result stays finite for any a whose
/// square fits in a double, with absolute accuracy ~tol on the log.
double log_theta3(double a, double t, double tol = kDefaultTol);

/// Modified Bessel function of the first kind I_n(x) for integer n >= 0 and
/// x >= 0, via the ascending power series sum_k (x/2)^{n+2k} / (k! (n+k)!).
/// Intended for the moderate arguments used by the circular states (x up to
/// ~60); throws PrecisionError if the series cannot reach tol, and
/// std::domain_error for n < 0 or x < 0.
double bessel_i(int n, double x, double tol = 1e-14);

}  // namespace circleq
