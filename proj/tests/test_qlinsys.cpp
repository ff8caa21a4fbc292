#include <doctest.h>

#include "qtau/qlinsys.hpp"

using namespace qtau;

TEST_SUITE("qlinsys") {
  TEST_CASE("monodromy input") {
    CHECK_THROWS_AS(MonodromyInput::from_s(0.4, 0.17, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(MonodromyInput::from_S2(0.4, 0.17, 0.0), DomainError);
    auto m = MonodromyInput::from_S2(0.4, 0.17, -0.8);
    CHECK(std::abs(m.S2() + 0.8) < 1e-14);
    auto a = MonodromyInput::from_s(0.4, 0.25, 1.0, 1.0);
    CHECK(std::abs(a.S2() + 1.0) < 1e-14);
    CHECK_THROWS_AS(MonodromyInput::from_s(0.4, 0.5, 1.0, 1.0).check_nonresonant(4), ResonanceError);
  }

  TEST_CASE("Lax matrix errors") {
    TranscendentWindow w{0.05, 0.5, 0.0, 0.5};
    CHECK_THROWS_AS(lax_L(w, 0.3), DomainError);
    TranscendentWindow ok{0.05, 0.5, 0.4, 0.3};
    CHECK_THROWS_AS(lax_L(ok, 0.0), DomainError);
    CHECK_THROWS_AS(painleve_step(0.0, 0.4, 0.05), DomainError);
    CHECK_THROWS_AS(painleve_step(0.5, cplx(0.0, 1.0), 0.05), DomainError);
  }

  TEST_CASE("window residual") {
    cplx t = 0.05, gp = 0.7, gc = 0.45;
    TranscendentWindow w{t, gp, gc, painleve_step(gp, gc, t)};
    CHECK(w.painleve_residual() < 1e-14);
  }

  TEST_CASE("parametrix and jump domains") {
    auto m = MonodromyInput::from_s(0.4, 0.17, 1.3, 0.8);
    CHECK_THROWS_AS(parametrix(Side::inf, m, 0.05, 1.5), DomainError);
    CHECK_THROWS_AS(jump_J(m, 0.05, 0.01), DomainError);
    CHECK_THROWS_AS(aux_L0_k(3, 0.17, 0.05, 0.3, QBase(0.4)), DomainError);
    CHECK_THROWS_AS(algebraic_Y(AlgPart::full, 0.05, 0.0, QBase(0.4)), DomainError);
  }

  TEST_CASE("matrix helpers") {
    CHECK(norm_max(sigma3_pow(2.0) - diag2(2.0, 0.5)) == 0.0);
    Mat2 b = backlund_Bb(QBase(0.4), 0.25);
    CHECK(b(0, 0) == cplx(0.0));
    CHECK(std::abs(b.determinant() + 1.0) < 1e-15);
  }
}
