#include <doctest.h>

#include "qtau/qspecial.hpp"

using namespace qtau;

TEST_SUITE("qspecial") {
  TEST_CASE("QBase rejects |q| outside (0, 1)") {
    CHECK_THROWS_AS(QBase(1.0), DomainError);
    CHECK_THROWS_AS(QBase(0.0), DomainError);
    CHECK_THROWS_AS(QBase(cplx(0.0, -1.2)), DomainError);
    CHECK_NOTHROW(QBase(cplx(0.3, 0.4)));
  }

  TEST_CASE("resonance guard") {
    QBase q(0.4);
    CHECK_THROWS_AS(q.guard(1.0 + 1e-12, "x"), ResonanceError);
    CHECK_NOTHROW(q.guard(1.1, "x"));
  }

  TEST_CASE("q-Pochhammer symbols") {
    QBase q(0.5);
    CHECK(std::abs(qpoch_finite(0.3, q, 2) - (1.0 - 0.3) * (1.0 - 0.15)) < 1e-15);
    CHECK(std::abs(qpoch_finite(0.3, q, -1) * qpoch_finite(0.3 * 2.0, q, 1) - 1.0) < 1e-15);
    CHECK(qpoch_inf(0.0, q) == cplx(1.0));
    CHECK(std::abs(qpoch_inf(1.0, q)) < 1e-300);
    CHECK(std::abs(qpoch2_inf(0.2, q, q) - qpoch2_inf(0.2, q, q)) == 0.0);
  }

  TEST_CASE("theta functions") {
    QBase q(0.4);
    CHECK_THROWS_AS(theta(0.0, q), DomainError);
    CHECK(theta_partial(0.0, q) == cplx(1.0));
    cplx z(0.3, 0.2);
    CHECK(std::abs(theta1(z, q) - qpoch_inf(q.value(), q) * theta(z, q)) < 1e-14);
    CHECK(std::abs(theta(q.value() / z, q) - theta(z, q)) < 1e-14);
  }

  TEST_CASE("q-Bessel domain") {
    QBase q(0.4);
    CHECK_THROWS_AS(qbessel_j(0, 0.5, 1.5, q), DomainError);
    CHECK_THROWS_AS(qbessel_j(3, 0.5, 0.2, q), DomainError);
    CHECK_NOTHROW(qbessel_j(2, 0.5, 3.0, q));
    CHECK(qbessel_j(1, 0.5, 0.0, q) == cplx(1.0));
  }

  TEST_CASE("elliptic gamma and dilogarithm") {
    CHECK_THROWS_AS(elliptic_gamma(0.0, 0.3, 0.4), DomainError);
    CHECK_THROWS_AS(elliptic_gamma(0.5, 2.0, 3.0), DomainError);
    CHECK_THROWS_AS(elliptic_gamma(0.12, 0.3, 0.4), ResonanceError);
    QBase q(0.3);
    CHECK_THROWS_AS(elliptic_dilog(0.1, q), DomainError);
    CHECK_THROWS_AS(elliptic_dilog(1.5, q), DomainError);
    CHECK(std::abs(elliptic_dilog(std::sqrt(0.3), q)) < 1e-15);
    CHECK_THROWS_AS(elliptic_dilog_cont(0.0, q), DomainError);
    CHECK(elliptic_dilog_cont(0.5, q) == elliptic_dilog(0.5, q));
  }

  TEST_CASE("truncation policy is honored") {
    TruncationPolicy pol;
    pol.max_terms = 2;
    pol.abs_tol = 0.0;
    CHECK_THROWS_AS(theta_partial(0.9, QBase(0.9), pol), NonconvergenceError);
  }
}
