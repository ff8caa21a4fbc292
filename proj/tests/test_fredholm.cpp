#include <doctest.h>

#include "qtau/fredholm.hpp"

using namespace qtau;

TEST_SUITE("fredholm") {
  const auto m = MonodromyInput::from_s(0.4, 0.17, 1.3, 0.8);

  TEST_CASE("mode layout") {
    CHECK(mode_position({HalfInt{1}, 1}) == 0);
    CHECK(mode_position({HalfInt{1}, -1}) == 1);
    CHECK(mode_position({HalfInt{3}, 1}) == 2);
    auto K = build_kernel(m, 0.05, 5);
    CHECK(K.A.rows() == 10);
    CHECK(K.D.cols() == 10);
  }

  TEST_CASE("argument validation") {
    CHECK_THROWS_AS(kernel_coeff(m, 0.05, {HalfInt{2}, 1}, Coeff::fa), DomainError);
    CHECK_THROWS_AS(kernel_coeff(m, 0.05, {HalfInt{1}, 0}, Coeff::fa), DomainError);
    CHECK_THROWS_AS(det_fredholm(m, 0.05, 2, 0), DomainError);
    CHECK_THROWS_AS(minor_expansion_oracle(m, 0.05, 2, 11), DomainError);
    WidomOptions w;
    w.samples = 100;
    CHECK_THROWS_AS(widom_fft_det(m, 0.05, w), DomainError);
    w = {};
    w.radius = 1.5;
    CHECK_THROWS_AS(widom_fft_det(m, 0.05, w), DomainError);
  }

  TEST_CASE("determinant bookkeeping") {
    TauValue v = det_fredholm(m, 0.05, 2, 16);
    CHECK(v.modes == 16);
    CHECK(v.est_error < 1e-12);
    TauValue a = det_fredholm(m, 0.05, 2, 2, true);
    CHECK(a.modes > 2);
    CHECK(std::abs(a.value - v.value) < 1e-10);
  }

  TEST_CASE("Widom bookkeeping") {
    TauValue w = widom_fft_det(m, 0.05);
    CHECK(w.modes == 24);
    CHECK(w.samples == 256);
    CHECK(std::abs(w.value - 3.75222352564676) < 1e-10);
  }

  TEST_CASE("Fourier symbol of a monomial") {
    auto F = fourier_symbol([](cplx z) { return Mat2(z * z * Mat2::Identity()); }, 16, 0.5);
    CHECK(std::abs(F.coeff(2)(0, 0) - 1.0) < 1e-14);
    CHECK(std::abs(F.coeff(0)(0, 0)) < 1e-14);
    CHECK(F.tail_mass() < 1e-14);
  }

  TEST_CASE("empty diagram has unit minor") {
    CHECK(minor_term(m, 0.05, MayaDiagram2{}) == cplx(1.0));
  }
}
