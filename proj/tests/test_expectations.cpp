#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "circleq/expectations.hpp"
#include "circleq/special_functions.hpp"
#include "circleq/state.hpp"
#include "circleq/uncertainty.hpp"

using namespace circleq;

TEST_CASE("exponential moments match the exact family identities") {
  for (const double l : {-1.0, 0.0, 0.37, 2.0}) {
    for (const double phi : {0.0, 1.1}) {
      const auto coh = coherent_state(PhasePoint(l, phi));
      CAPTURE(l);
      CAPTURE(phi);
      CHECK(std::log(expect_exp_j(coh, 1.0)) ==
            doctest::Approx(1.0 - 2.0 * l).epsilon(1e-11));
      CHECK(std::log(expect_exp_j(coh, -1.0)) ==
            doctest::Approx(1.0 + 2.0 * l).epsilon(1e-11));
    }
  }

  // lambda = 0 is the trivial moment
  const auto st = squeezed_state(PhasePoint(0.4, 0.3), 1.2);
  CHECK(expect_exp_j(st, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("direct and closed-form exponential moments agree") {
  for (const double l : {-1.0, 0.0, 0.37, 1.0, 2.0}) {
    for (const double s : {0.6, 1.0, 1.8}) {
      const auto st = squeezed_state(PhasePoint(l, 0.9), s);
      for (const double lambda : {-1.3, 0.3, 1.0}) {
        const double direct = expect_exp_j(st, lambda);
        const double closed = expect_exp_j_closed(l, s, lambda);
        CAPTURE(l);
        CAPTURE(s);
        CAPTURE(lambda);
        CHECK(direct == doctest::Approx(closed).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("exponential moment failure modes") {
  const auto zero = apply_j(momentum_eigenstate(0, 3));
  CHECK_THROWS_AS(expect_exp_j(zero, 1.0), std::domain_error);
  CHECK_THROWS_AS(expect_exp_j(momentum_eigenstate(0, 3), std::nan("")),
                  std::domain_error);
  // e^{lambda j} overflows double at the window edge while its weight is nonzero
  CHECK_THROWS_AS(expect_exp_j(coherent_state(PhasePoint(0.0, 0.0)), 400.0),
                  std::range_error);
  CHECK_THROWS_AS(expect_exp_j_closed(0.0, 1.0, 30.0), std::range_error);
  CHECK_THROWS_AS(expect_exp_j_closed(0.0, -1.0, 0.5), std::domain_error);
}

TEST_CASE("ladder power expectations") {
  // squared-ladder identity on the squeezed family
  for (const double s : {0.5, 1.0, 2.5}) {
    const PhasePoint p(0.6, 1.9);
    const auto st = squeezed_state(p, s);
    const auto u2 = expect_u_power(st, 2);
    CAPTURE(s);
    CHECK(std::abs(u2 - std::polar(std::exp(-s), 2.0 * p.phi)) <= 1e-12);
  }

  const auto st = squeezed_state(PhasePoint(0.8, 2.4), 1.1);
  // <U^0> is the normalized norm
  CHECK(expect_u_power(st, 0).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(expect_u_power(st, 0).imag()) <= 1e-15);
  // negative powers are conjugates
  for (int n = 1; n <= 5; ++n) {
    const auto fwd = expect_u_power(st, n);
    const auto bwd = expect_u_power(st, -n);
    CAPTURE(n);
    CHECK(std::abs(bwd - std::conj(fwd)) <= 1e-14);
  }
  // powers beyond the window span vanish identically
  CHECK(expect_u_power(momentum_eigenstate(1, 4), 1) ==
        std::complex<double>{0.0, 0.0});
  CHECK(expect_u_power(st, 2 * st.n_trunc() + 1) == std::complex<double>{0.0, 0.0});

  // contraction: |<U^n>| <= 1 on normalized and unnormalized states alike
  EnvelopeSampler sampler(99);
  for (int i = 0; i < 50; ++i) {
    const auto rnd = sampler.next();
    for (const int n : {1, 2, 3})
      CHECK(std::abs(expect_u_power(rnd, n)) <= 1.0 + 1e-14);
  }

  CHECK_THROWS_AS(expect_u_power(apply_j(momentum_eigenstate(0, 2)), 1),
                  std::domain_error);
}

TEST_CASE("circular states have Bessel-ratio ladder moments") {
  // <U^n> = e^{i n alpha} I_n(2s) / I_0(2s)
  for (const double s : {0.5, 2.0}) {
    for (const double alpha : {0.0, 0.9}) {
      const auto st = circular_squeezed_state(alpha, 1, s);
      const double i0 = bessel_i(0, 2.0 * s);
      for (const int n : {1, 2, 3}) {
        const auto expected = std::polar(bessel_i(n, 2.0 * s) / i0, n * alpha);
        CAPTURE(s);
        CAPTURE(alpha);
        CAPTURE(n);
        CHECK(std::abs(expect_u_power(st, n) - expected) <= 1e-12);
      }
    }
  }
}

TEST_CASE("trig moments and variances") {
  const auto spike = momentum_eigenstate(2, 6);
  const auto tr = expect_trig(spike);
  CHECK(tr.cos_mean == 0.0);
  CHECK(tr.sin_mean == 0.0);
  CHECK(tr.cos_var == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(tr.sin_var == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(tr.j_std == 0.0);

  // <cos^2> + <sin^2> = 1 forces var_c + var_s = 1 - |<U>|^2
  EnvelopeSampler sampler(2024);
  for (int i = 0; i < 40; ++i) {
    const auto st = sampler.next();
    const auto t = expect_trig(st);
    const double u1 = std::abs(expect_u_power(st, 1));
    CHECK(t.cos_var + t.sin_var ==
          doctest::Approx(1.0 - u1 * u1).epsilon(1e-12));
    // j_std^2 is the second cumulant
    const double kappa2 = cumulants_j(st, 2)[1];
    CHECK(t.j_std * t.j_std == doctest::Approx(kappa2).epsilon(1e-12));
  }
}

TEST_CASE("moments and cumulants on reference states") {
  const auto spike = momentum_eigenstate(-3, 7);
  const auto m = moments_j(spike, 6);
  for (int k = 1; k <= 6; ++k) {
    CAPTURE(k);
    CHECK(m[k - 1] == std::pow(-3.0, k));
  }
  const auto kap = cumulants_j(spike, 6);
  CHECK(kap[0] == -3.0);
  for (int k = 2; k <= 6; ++k) {
    CAPTURE(k);
    CHECK(kap[k - 1] == 0.0);
  }

  // frozen references on the centered coherent state
  const auto coh = coherent_state(PhasePoint(0.0, 0.0));
  CHECK(std::abs(moments_j(coh, 1)[0]) <= 1e-15);
  CHECK(std::abs(moments_j(coh, 3)[2]) <= 1e-15);
  const auto kc = cumulants_j(coh, 6);
  CHECK(kc[1] == doctest::Approx(0.49897913083282046).epsilon(1e-12));
  CHECK(kc[3] == doctest::Approx(0.0100724483038).epsilon(1e-9));
  CHECK(kc[5] == doctest::Approx(-0.0992876819029).epsilon(1e-9));
  const auto k8 = detail::cumulants_from_moments(moments_j(coh, 8));
  CHECK(k8[7] == doctest::Approx(0.975061410833).epsilon(1e-9));

  CHECK_THROWS_AS(moments_j(coh, 0), std::domain_error);
  CHECK_THROWS_AS(moments_j(coh, 9), std::domain_error);
  CHECK_THROWS_AS(cumulants_j(coh, 7), std::domain_error);
}

TEST_CASE("cumulant recursion agrees with the explicit low-order formulas") {
  EnvelopeSampler sampler(555);
  for (int i = 0; i < 20; ++i) {
    const auto st = sampler.next();
    const auto m = moments_j(st, 4);
    const auto k = cumulants_j(st, 4);
    const double m1 = m[0], m2 = m[1], m3 = m[2], m4 = m[3];
    // tolerance scaled by the largest intermediate product that can cancel
    const double scale4 =
        std::abs(m4) + 4.0 * std::abs(m3 * m1) + 3.0 * m2 * m2 +
        12.0 * m2 * m1 * m1 + 6.0 * m1 * m1 * m1 * m1 + 1.0;
    CAPTURE(i);
    CHECK(k[0] == m1);
    CHECK(std::abs(k[1] - (m2 - m1 * m1)) <= 1e-13 * scale4);
    CHECK(std::abs(k[2] - (m3 - 3.0 * m1 * m2 + 2.0 * m1 * m1 * m1)) <=
          1e-13 * scale4);
    CHECK(std::abs(k[3] - (m4 - 4.0 * m3 * m1 - 3.0 * m2 * m2 +
                           12.0 * m2 * m1 * m1 - 6.0 * m1 * m1 * m1 * m1)) <=
          1e-13 * scale4);
  }
}

TEST_CASE("cumulant partial sums of the momentum uncertainty") {
  const auto coh = coherent_state(PhasePoint(0.0, 0.0));
  CHECK_THROWS_AS(cumulant_uncertainty_approx(coh, 0), std::domain_error);
  CHECK_THROWS_AS(cumulant_uncertainty_approx(coh, 4), std::domain_error);

  // one term is exactly the variance
  CHECK(cumulant_uncertainty_approx(coh, 1) ==
        doctest::Approx(cumulants_j(coh, 2)[1]).epsilon(1e-15));
  // frozen partial sums at l = 0 (variance, then +kappa4/3, then +2 kappa6/45)
  CHECK(cumulant_uncertainty_approx(coh, 1) ==
        doctest::Approx(0.49897913083282046).epsilon(1e-11));
  CHECK(cumulant_uncertainty_approx(coh, 2) ==
        doctest::Approx(0.50233661360074701).epsilon(1e-11));
  CHECK(cumulant_uncertainty_approx(coh, 3) ==
        doctest::Approx(0.49792382773839530).epsilon(1e-11));

  // every partial sum of a momentum eigenstate vanishes
  for (int terms = 1; terms <= 3; ++terms)
    CHECK(cumulant_uncertainty_approx(momentum_eigenstate(4, 6), terms) == 0.0);
}

TEST_CASE("schwarz-type bound for the momentum-ladder pair") {
  // 4 kappa2 (1 - |<U>|^2) >= |<U>|^2, from Cauchy-Schwarz on (J - <J>, U - <U>)
  EnvelopeSampler sampler(31415);
  for (int i = 0; i < 200; ++i) {
    const auto st = sampler.next();
    const double kappa2 = cumulants_j(st, 2)[1];
    const double u1 = std::norm(expect_u_power(st, 1));
    CAPTURE(i);
    CHECK(4.0 * kappa2 * (1.0 - u1) - u1 >= -1e-10);
  }
}
