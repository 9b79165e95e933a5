#include "circleq/uncertainty.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "circleq/expectations.hpp"
#include "circleq/format.hpp"

namespace circleq {

double delta2_j(const CircleState& st) { return delta2_j_generalized(st, 1.0); }

double delta2_j_generalized(const CircleState& st, double s0) {
  if (!std::isfinite(s0) || s0 <= 0.0)
    throw std::domain_error("delta2_j_generalized: s0 must be positive and finite");
  const double down = expect_exp_j(st, s0);   // <e^{-2 s0 J}>
  const double up = expect_exp_j(st, -s0);    // <e^{+2 s0 J}>
  // the product is >= 1 (it is 1 exactly on momentum eigenstates)
  return detail::clamp_nonneg(0.25 * (std::log(down) + std::log(up)));
}

double delta2_phi(const CircleState& st) {
  const double mag = std::abs(expect_u_power(st, 2));
  if (mag == 0.0) return std::numeric_limits<double>::infinity();
  // |<U^2>| <= 1, so the log is <= 0
  return detail::clamp_nonneg(-0.5 * std::log(mag));
}

double delta_phi_legacy(const CircleState& st) {
  const double mag2 = std::norm(expect_u_power(st, 1));
  if (mag2 == 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(detail::clamp_nonneg(1.0 - mag2) / mag2);
}

std::array<E2Pair, 3> e2_products(const CircleState& st) {
  const auto tr = expect_trig(st);
  const double dcos = std::sqrt(tr.cos_var);
  const double dsin = std::sqrt(tr.sin_var);
  return {{{tr.j_std * dcos, 0.5 * std::abs(tr.sin_mean)},
           {tr.j_std * dsin, 0.5 * std::abs(tr.cos_mean)},
           {dsin * dcos, 0.0}}};
}

UncertaintyReport full_report(const CircleState& st, double s0) {
  UncertaintyReport r;
  r.d2j = delta2_j(st);
  r.d2phi = delta2_phi(st);
  r.d2j_gen = delta2_j_generalized(st, s0);
  r.d_phi_legacy = delta_phi_legacy(st);
  r.sum = r.d2j_gen + r.d2phi;
  r.e2 = e2_products(st);
  return r;
}

std::string report_csv_header() {
  return "d2J,d2phi,d2J_gen,d_phi_legacy,sum,"
         "e2_j_cos_left,e2_j_cos_right,e2_j_sin_left,e2_j_sin_right,"
         "e2_sin_cos_left,e2_sin_cos_right";
}

std::string report_csv_row(const UncertaintyReport& r) {
  std::string row = g17(r.d2j) + ',' + g17(r.d2phi) + ',' + g17(r.d2j_gen) + ',' +
                    g17(r.d_phi_legacy) + ',' + g17(r.sum);
  for (const auto& pair : r.e2)
    row += ',' + g17(pair.left) + ',' + g17(pair.right);
  return row;
}

EnvelopeSampler::EnvelopeSampler(std::uint64_t seed, int n_trunc)
    : rng_(seed), n_trunc_(n_trunc) {
  if (n_trunc_ < 1)
    throw std::invalid_argument("EnvelopeSampler: n_trunc must be >= 1");
}

double EnvelopeSampler::uniform() {
  // top 53 bits -> [0, 1); avoids distribution classes whose output streams
  // are not pinned down by the standard
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

CircleState EnvelopeSampler::next() {
  const double sigma = 0.5 + 2.5 * uniform();
  const double inv_two_sigma2 = 1.0 / (2.0 * sigma * sigma);
  std::vector<std::complex<double>> c(2 * n_trunc_ + 1);
  for (int j = -n_trunc_; j <= n_trunc_; ++j) {
    // Box-Muller; log1p(-u) keeps the argument strictly positive for u in [0,1)
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log1p(-u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    const double env =
        std::exp(-static_cast<double>(j) * static_cast<double>(j) * inv_two_sigma2);
    c[j + n_trunc_] = {radius * std::cos(angle) * env, radius * std::sin(angle) * env};
  }
  return CircleState(n_trunc_, std::move(c));
}

}  // namespace circleq
