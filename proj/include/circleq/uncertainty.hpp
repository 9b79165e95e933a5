#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>

#include "circleq/state.hpp"

namespace circleq {

/// Exponential-moment momentum uncertainty:
///   delta2_j = (1/4) ln( <e^{-2J}> <e^{2J}> ).
/// Zero exactly on momentum eigenstates, 1/2 on coherent states.
double delta2_j(const CircleState& st);

/// Angle uncertainty delta2_phi = -(1/2) ln |<U^2>|; +infinity when <U^2>
/// vanishes (e.g. momentum eigenstates and other angle-flat states).
double delta2_phi(const CircleState& st);

/// Generalized momentum uncertainty measured against reference strength
/// s0 > 0:  (1/4) ln( <e^{-2 s0 J}> <e^{2 s0 J}> ). s0 = 1 is delta2_j.
double delta2_j_generalized(const CircleState& st, double s0);

/// Dispersion-style angle spread sqrt((1 - |<U>|^2) / |<U>|^2); +infinity
/// when <U> = 0. Kept for comparisons against the log-based measure.
double delta_phi_legacy(const CircleState& st);

/// One uncertainty product: inequality holds when left >= right.
struct E2Pair {
  double left = 0.0;
  double right = 0.0;
};

/// The three uncertainty products native to the Euclidean group of the
/// circle, as (left, right) pairs:
///   [0]  dJ * dcos   vs  |<sin>| / 2
///   [1]  dJ * dsin   vs  |<cos>| / 2
///   [2]  dsin * dcos vs  0        (no central term)
std::array<E2Pair, 3> e2_products(const CircleState& st);

/// Everything the report CSV row carries, computed in one pass.
struct UncertaintyReport {
  double d2j = 0.0;
  double d2phi = 0.0;
  double d2j_gen = 0.0;
  double d_phi_legacy = 0.0;
  double sum = 0.0;  // d2j_gen + d2phi
  std::array<E2Pair, 3> e2{};
};

UncertaintyReport full_report(const CircleState& st, double s0 = 1.0);

/// Fixed CSV column set for uncertainty reports (shared by the CLI and the
/// sweep counterexample dump):
///   d2J,d2phi,d2J_gen,d_phi_legacy,sum,
///   e2_j_cos_left,e2_j_cos_right,e2_j_sin_left,e2_j_sin_right,
///   e2_sin_cos_left,e2_sin_cos_right
std::string report_csv_header();
std::string report_csv_row(const UncertaintyReport& r);

/// Deterministic stream of random test states: c_j = g_j e^{-j^2/(2 sigma^2)}
/// with g_j standard complex Gaussian and sigma drawn uniformly from
/// [0.5, 3] per state. The Gaussians are produced by Box-Muller over raw
/// 53-bit uniforms from mt19937_64, so a given seed yields the same states on
/// every platform (std::normal_distribution would not).
class EnvelopeSampler {
 public:
  explicit EnvelopeSampler(std::uint64_t seed, int n_trunc = 40);

  CircleState next();

 private:
  double uniform();  // [0, 1)

  std::mt19937_64 rng_;
  int n_trunc_;
};

}  // namespace circleq
