#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "circleq/expectations.hpp"
#include "circleq/state.hpp"
#include "circleq/uncertainty.hpp"

using namespace circleq;

TEST_CASE("uncertainties of the reference states") {
  for (const double l : {-0.5, 0.0, 1.7}) {
    for (const double phi : {0.0, 2.4}) {
      const auto coh = coherent_state(PhasePoint(l, phi));
      CAPTURE(l);
      CAPTURE(phi);
      CHECK(delta2_j(coh) == doctest::Approx(0.5).epsilon(1e-11));
      CHECK(delta2_phi(coh) == doctest::Approx(0.5).epsilon(1e-11));
    }
  }

  for (const double s : {0.5, 1.0, 2.2}) {
    const auto sq = squeezed_state(PhasePoint(0.8, 1.1), s);
    CAPTURE(s);
    CHECK(delta2_j_generalized(sq, s) == doctest::Approx(0.5 * s).epsilon(1e-11));
    CHECK(delta2_phi(sq) == doctest::Approx(0.5 * s).epsilon(1e-11));
  }
}

TEST_CASE("two-mode superposition against hand-computed values") {
  // (|0> + |1>)/sqrt(2): <e^{-+2J}> = (1 + e^{-+2})/2, so
  // delta2_j = (1/4) ln((1 + cosh 2)/2) = (1/2) ln cosh 1
  std::vector<std::complex<double>> c(5, {0.0, 0.0});
  c[2] = {1.0, 0.0};  // j = 0
  c[3] = {1.0, 0.0};  // j = 1
  const CircleState st(2, std::move(c));

  CHECK(delta2_j(st) == doctest::Approx(0.21689041524151359).epsilon(1e-13));
  // <U> = 1/2, so the legacy spread is sqrt((1 - 1/4)/(1/4)) = sqrt(3)
  CHECK(delta_phi_legacy(st) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
  // <U^2> couples j = 0 to j = 2 where the state has no support
  CHECK(std::isinf(delta2_phi(st)));
}

TEST_CASE("momentum eigenstates minimize the momentum measure") {
  const auto flat = momentum_eigenstate(0, 5);
  CHECK(delta2_j(flat) == 0.0);
  CHECK(std::isinf(delta2_phi(flat)));
  CHECK(std::isinf(delta_phi_legacy(flat)));

  const auto spike = momentum_eigenstate(3, 6);
  CHECK(std::abs(delta2_j(spike)) <= 1e-14);
  CHECK(delta2_j_generalized(spike, 0.7) <= 1e-14);
}

TEST_CASE("reference-strength validation") {
  const auto st = coherent_state(PhasePoint(0.0, 0.0));
  CHECK_THROWS_AS(delta2_j_generalized(st, 0.0), std::domain_error);
  CHECK_THROWS_AS(delta2_j_generalized(st, -1.0), std::domain_error);
  CHECK_THROWS_AS(delta2_j_generalized(st, std::nan("")), std::domain_error);
}

TEST_CASE("matched squeezed states sit exactly at the bound") {
  // at s = s0 the sum of the two measures equals s0
  for (const double s0 : {0.5, 1.0, 2.2}) {
    const auto st = squeezed_state(PhasePoint(1.3, 0.7), s0);
    const double sum = delta2_j_generalized(st, s0) + delta2_phi(st);
    CAPTURE(s0);
    CHECK(sum == doctest::Approx(s0).epsilon(1e-12));
  }
}

TEST_CASE("circular states saturate the momentum-sine product at alpha = 0") {
  for (const int l : {0, 1, 3}) {
    for (const double s : {0.5, 1.0, 2.0}) {
      const auto st = circular_squeezed_state(0.0, l, s);
      const auto e2 = e2_products(st);
      CAPTURE(l);
      CAPTURE(s);
      // dJ * dsin = |<cos>| / 2 exactly on this family
      CHECK(std::abs(e2[1].left - e2[1].right) <= 1e-10);
      CHECK(e2[1].right > 0.1);  // the bound is not trivially zero
      // dJ * dcos > |<sin>| / 2 = 0 strictly
      CHECK(e2[0].right == 0.0);
      CHECK(e2[0].left > 1e-3);
      // dsin * dcos > 0 strictly
      CHECK(e2[2].left > 1e-3);
    }
  }

  // away from alpha = 0 all three products still respect their bounds
  const auto tilted = circular_squeezed_state(0.9, 1, 1.5);
  for (const auto& pair : e2_products(tilted))
    CHECK(pair.left - pair.right >= -1e-12);
}

TEST_CASE("report aggregates the standalone measures") {
  const auto st = squeezed_state(PhasePoint(0.8, 1.2), 1.4);
  const auto rep = full_report(st, 0.9);
  CHECK(rep.d2j == delta2_j(st));
  CHECK(rep.d2phi == delta2_phi(st));
  CHECK(rep.d2j_gen == delta2_j_generalized(st, 0.9));
  CHECK(rep.d_phi_legacy == delta_phi_legacy(st));
  CHECK(rep.sum == rep.d2j_gen + rep.d2phi);
  const auto e2 = e2_products(st);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(rep.e2[i].left == e2[i].left);
    CHECK(rep.e2[i].right == e2[i].right);
  }
}

TEST_CASE("report CSV layout") {
  CHECK(report_csv_header() ==
        "d2J,d2phi,d2J_gen,d_phi_legacy,sum,"
        "e2_j_cos_left,e2_j_cos_right,e2_j_sin_left,e2_j_sin_right,"
        "e2_sin_cos_left,e2_sin_cos_right");

  const auto row = report_csv_row(full_report(momentum_eigenstate(2, 5)));
  CHECK(row.find("inf") != std::string::npos);
  std::size_t commas = 0;
  for (const char ch : row) commas += (ch == ',');
  CHECK(commas == 10);

  // finite states serialize with round-trip precision and no infinities
  const auto row2 = report_csv_row(full_report(coherent_state(PhasePoint(0.3, 0.2))));
  CHECK(row2.find("inf") == std::string::npos);
  CHECK(std::stod(row2) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("nonnegative clamp") {
  CHECK(detail::clamp_nonneg(5.0) == 5.0);
  CHECK(detail::clamp_nonneg(0.0) == 0.0);
  CHECK(detail::clamp_nonneg(-1e-13) == 0.0);
  CHECK_THROWS_AS(detail::clamp_nonneg(-1e-11), std::logic_error);
}

TEST_CASE("envelope sampler is deterministic in its seed") {
  EnvelopeSampler a(2718), b(2718), c(999);
  bool any_diff = false;
  for (int i = 0; i < 3; ++i) {
    const auto sa = a.next();
    const auto sb = b.next();
    const auto sc = c.next();
    REQUIRE(sa.n_trunc() == 40);
    REQUIRE(sb.n_trunc() == 40);
    CHECK(sa.coeffs() == sb.coeffs());
    if (sa.coeffs() != sc.coeffs()) any_diff = true;
    CHECK(norm2(sa) > 0.0);
  }
  CHECK(any_diff);

  EnvelopeSampler narrow(7, 12);
  CHECK(narrow.next().n_trunc() == 12);
  CHECK_THROWS_AS(EnvelopeSampler(7, 0), std::invalid_argument);
}

TEST_CASE("sum of the measures stays above one on random states") {
  EnvelopeSampler sampler(4242);
  for (int i = 0; i < 300; ++i) {
    const auto st = sampler.next();
    const double sum = delta2_j(st) + delta2_phi(st);
    CAPTURE(i);
    CHECK(sum >= 1.0 - 1e-9);
  }
}
