#include <doctest.h>

#include "qtau/nekrasov.hpp"

using namespace qtau;

TEST_SUITE("nekrasov") {
  const QBase q(0.4);

  TEST_CASE("argument validation") {
    CHECK_THROWS_AS(sigma_of_u(0.0, q), DomainError);
    CHECK_THROWS_AS(instanton_coeffs(0, 0.17, q, -1), DomainError);
    CHECK_THROWS_AS(TauSeries(3, Sector::zero, -0.8, q.pow(0.17), q, {}), DomainError);
    CHECK_THROWS_AS(TauSeries(-2, Sector::zero, 0.0, q.pow(0.17), q, {}), DomainError);
    CHECK_THROWS_AS(TauSeries(-2, Sector::zero, -0.8, q.pow(0.5), q, {}), ResonanceError);
    CHECK_THROWS_AS(g_transcendent_S(0.0, q.pow(0.17), 0.05, q), DomainError);
  }

  TEST_CASE("instanton coefficients") {
    auto c = instanton_coeffs(-2, 0.17, q, 3);
    REQUIRE(c.size() == 4);
    CHECK(c[0] == cplx(1.0));
  }

  TEST_CASE("series value and error estimate") {
    auto m = MonodromyInput::from_s(0.4, 0.17, 1.3, 0.8);
    TauValue v = tau_widom_series(m, 0.05);
    CHECK(std::abs(v.value - 3.75222352564676) < 1e-12);
    CHECK(v.est_error < 1e-12);
    CHECK(v.cutoff_used.max_boxes == 10);
  }

  TEST_CASE("adaptive cutoff reports the boxes used") {
    SeriesCutoff c;
    c.adaptive = true;
    c.max_boxes = 4;
    auto m = MonodromyInput::from_s(0.4, 0.17, 1.3, 0.8);
    TauValue v = tau_widom_series(m, 0.05, c);
    CHECK(v.cutoff_used.max_boxes > 4);
    CHECK(v.est_error < 1e-10);
  }

  TEST_CASE("normalization round trip") {
    cplx tau = 2.5;
    CHECK(std::abs(tau_from_T0(T0_from_tau(tau, 0.17, 0.05, q), 0.17, 0.05, q) - tau) < 1e-14);
  }
}
