#include <doctest.h>

#include "qtau/connection.hpp"

using namespace qtau;

TEST_SUITE("connection") {
  const QBase q(0.4);

  TEST_CASE("sigma reduction") {
    CHECK(std::abs(reduce_sigma(1.2) - 0.2) < 1e-15);
    CHECK(std::abs(reduce_sigma(0.7) - 0.3) < 1e-15);
    CHECK(std::abs(reduce_sigma(-0.1) - 0.1) < 1e-15);
  }

  TEST_CASE("dual solver") {
    CHECK_THROWS_AS(solve_dual_sigma(0.0, q.pow(0.17), 0.3, q, q.pow(0.3)), DomainError);
    cplx uc = solve_dual_sigma(-0.8, q.pow(0.17), 0.3, q, q.pow(0.3));
    CHECK(std::abs(s2_closed_form(q.pow(0.17), uc, 0.3, q) + 0.8) < 1e-12);
    double sc = (std::log(uc) / q.log()).real();
    CHECK(sc >= 0.0);
    CHECK(sc <= 0.5);
  }

  TEST_CASE("point accessors") {
    DualityPoint p{q.pow(0.17), q.pow(0.23), 0.3, q};
    CHECK(std::abs(p.sigma() - 0.17) < 1e-15);
    CHECK(std::abs(p.sigma_check() - 0.23) < 1e-15);
  }

  TEST_CASE("additive and multiplicative upsilon agree") {
    DualityPoint p{q.pow(0.1), q.pow(0.15), 0.5, q};
    cplx a = std::exp(upsilon_additive(p));
    CHECK(std::isfinite(std::abs(a)));
    CHECK(std::abs(upsilon_tau(p)) > 0.0);
  }
}
