#include "circleq/expectations.hpp"

#include <cmath>
#include <stdexcept>

#include "circleq/special_functions.hpp"

namespace circleq {
namespace detail {

std::vector<double> cumulants_from_moments(const std::vector<double>& m) {
  const int order = static_cast<int>(m.size());
  std::vector<double> kappa(m.size(), 0.0);
  for (int n = 1; n <= order; ++n) {
    // kappa_n = m_n - sum_{i=1}^{n-1} C(n-1, i-1) kappa_i m_{n-i}
    double acc = m[n - 1];
    double binom = 1.0;  // C(n-1, i-1), updated incrementally
    for (int i = 1; i < n; ++i) {
      acc -= binom * kappa[i - 1] * m[n - i - 1];
      binom = binom * static_cast<double>(n - i) / static_cast<double>(i);
    }
    kappa[n - 1] = acc;
  }
  return kappa;
}

double clamp_nonneg(double v) {
  if (v >= 0.0) return v;
  if (v >= -1e-12) return 0.0;
  throw std::logic_error("internal: quantity that must be nonnegative came out " +
                         std::to_string(v));
}

}  // namespace detail

double expect_exp_j(const CircleState& st, double lambda) {
  if (!std::isfinite(lambda))
    throw std::domain_error("expect_exp_j: lambda must be finite");
  const int n = st.n_trunc();
  double num = 0.0;
  double den = 0.0;
  for (int j = -n; j <= n; ++j) {
    const double w = std::norm(st.coeff(j));
    if (w == 0.0) continue;  // skip so an overflowing weight factor cannot make inf * 0
    den += w;
    num += std::exp(-2.0 * lambda * static_cast<double>(j)) * w;
  }
  if (den == 0.0)
    throw std::domain_error("expect_exp_j: zero state");
  if (!std::isfinite(num))
    throw std::range_error(
        "expect_exp_j: moment overflows double at this truncation; "
        "use expect_exp_j_closed");
  return num / den;
}

namespace {

// The log-lattice evaluator cannot beat a rounding floor that scales with its
// leading exponent ~ a^2/t. Request the default tolerance or that floor,
// whichever is looser, so over-range moments surface as range_error below
// instead of a precision failure inside the evaluator.
double log_tol_for(double a, double t) {
  return std::max(kDefaultTol, 1e-14 * (a * a / t + t + 1.0));
}

}  // namespace

double expect_exp_j_closed(double l, double s, double lambda) {
  if (!std::isfinite(s) || s <= 0.0)
    throw std::domain_error("expect_exp_j_closed: s must be positive and finite");
  if (!std::isfinite(l) || !std::isfinite(lambda))
    throw std::domain_error("expect_exp_j_closed: l and lambda must be finite");
  const double a = l - lambda;
  const double log_ratio =
      log_theta3(a, s, log_tol_for(a, s)) - log_theta3(l, s, log_tol_for(l, s));
  if (log_ratio > 700.0)
    throw std::range_error("expect_exp_j_closed: moment overflows double");
  return std::exp(log_ratio);
}

std::complex<double> expect_u_power(const CircleState& st, int n_pow) {
  const double den = norm2(st);
  if (den == 0.0)
    throw std::domain_error("expect_u_power: zero state");
  const int n = st.n_trunc();
  // <U^k> couples c_{j+k} to c_j; clip the range so both indices stay inside
  const int lo = std::max(-n, -n - n_pow);
  const int hi = std::min(n, n - n_pow);
  std::complex<double> acc{0.0, 0.0};
  for (int j = lo; j <= hi; ++j)
    acc += std::conj(st.coeff(j + n_pow)) * st.coeff(j);
  return acc / den;
}

TrigExpectations expect_trig(const CircleState& st) {
  const auto u1 = expect_u_power(st, 1);
  const auto u2 = expect_u_power(st, 2);
  TrigExpectations r;
  r.cos_mean = u1.real();
  r.sin_mean = u1.imag();
  r.cos_var = detail::clamp_nonneg(0.5 * (1.0 + u2.real()) - r.cos_mean * r.cos_mean);
  r.sin_var = detail::clamp_nonneg(0.5 * (1.0 - u2.real()) - r.sin_mean * r.sin_mean);
  const auto m = moments_j(st, 2);
  r.j_std = std::sqrt(detail::clamp_nonneg(m[1] - m[0] * m[0]));
  return r;
}

std::vector<double> moments_j(const CircleState& st, int order) {
  if (order < 1 || order > 8)
    throw std::domain_error("moments_j: order must be in [1, 8]");
  const int n = st.n_trunc();
  std::vector<double> m(order, 0.0);
  double den = 0.0;
  for (int j = -n; j <= n; ++j) {
    const double w = std::norm(st.coeff(j));
    if (w == 0.0) continue;
    den += w;
    double p = 1.0;
    for (int k = 0; k < order; ++k) {
      p *= static_cast<double>(j);
      m[k] += p * w;
    }
  }
  if (den == 0.0)
    throw std::domain_error("moments_j: zero state");
  for (auto& v : m) v /= den;
  return m;
}

std::vector<double> cumulants_j(const CircleState& st, int order) {
  if (order < 1 || order > 6)
    throw std::domain_error("cumulants_j: order must be in [1, 6]");
  return detail::cumulants_from_moments(moments_j(st, order));
}

double cumulant_uncertainty_approx(const CircleState& st, int terms) {
  if (terms < 1 || terms > 3)
    throw std::domain_error("cumulant_uncertainty_approx: terms must be in [1, 3]");
  const auto kappa = detail::cumulants_from_moments(moments_j(st, 2 * terms));
  // even-order slice of the expansion: 2^{n-1} kappa_n / n! for n = 2, 4, 6
  static constexpr double coef[3] = {1.0, 1.0 / 3.0, 2.0 / 45.0};
  double acc = 0.0;
  for (int i = 1; i <= terms; ++i) acc += coef[i - 1] * kappa[2 * i - 1];
  return acc;
}

}  // namespace circleq
