#pragma once

#include <complex>
#include <vector>

#include "circleq/state.hpp"

namespace circleq {

/// <e^{-2 lambda J}> by direct summation over the basis weights. lambda may
/// have either sign. Throws std::range_error if a term overflows double at
/// this truncation (use a smaller |lambda| or the closed form), and
/// std::domain_error on the zero state.
double expect_exp_j(const CircleState& st, double lambda);

/// The same moment on the analytic squeezed family (center l, squeezing s):
/// <e^{-2 lambda J}> = exp(log_theta3(l - lambda, s) - log_theta3(l, s)).
/// Evaluated entirely in the log domain, so it works far beyond where the
/// direct sum overflows.
double expect_exp_j_closed(double l, double s, double lambda);

/// <U^n> for integer n (negative n gives <U^dagger^|n|> = conj(<U^|n|>)).
/// Couples c_{j+n} to c_j; returns exactly 0 when |n| exceeds the window
/// span. Throws std::domain_error on the zero state.
std::complex<double> expect_u_power(const CircleState& st, int n);

/// First and second trigonometric moments of the angle plus the momentum
/// spread, the ingredients of every sharpened uncertainty product:
///   cos_mean = Re<U>, sin_mean = Im<U>,
///   cos_var = <cos^2> - <cos>^2 with <cos^2> = (1 + Re<U^2>)/2,
///   sin_var likewise with <sin^2> = (1 - Re<U^2>)/2,
///   j_std = sqrt(<J^2> - <J>^2).
struct TrigExpectations {
  double cos_mean = 0.0;
  double sin_mean = 0.0;
  double cos_var = 0.0;
  double sin_var = 0.0;
  double j_std = 0.0;
};

TrigExpectations expect_trig(const CircleState& st);

/// Raw moments <J^k> for k = 1..order. order must be in [1, 8]; the higher
/// orders exist to bound truncation remainders of the cumulant series.
std::vector<double> moments_j(const CircleState& st, int order);

/// Cumulants kappa_k for k = 1..order via the standard moment-cumulant
/// recursion. order must be in [1, 6].
std::vector<double> cumulants_j(const CircleState& st, int order);

/// Partial sums of the cumulant expansion of the momentum uncertainty,
///   kappa_2 + kappa_4/3 + (2/45) kappa_6 + ...,
/// truncated after `terms` terms (1..3). Uses cumulants up to order 2*terms.
double cumulant_uncertainty_approx(const CircleState& st, int terms);

namespace detail {

/// Moment -> cumulant recursion at any order (input m[k-1] = <X^k>). The
/// public wrappers bound the order; this is exposed so callers can form
/// higher-order remainder estimates with the same arithmetic.
std::vector<double> cumulants_from_moments(const std::vector<double>& m);

/// Guard for quantities that are nonnegative in exact arithmetic: rounds
/// tiny negative values (>= -1e-12) to zero and throws std::logic_error for
/// anything more negative, which would indicate an internal inconsistency
/// rather than harmless rounding.
double clamp_nonneg(double v);

}  // namespace detail

}  // namespace circleq
