#include <doctest.h>

#include "qtau/maya.hpp"

using namespace qtau;

TEST_SUITE("maya") {
  TEST_CASE("partition validation") {
    CHECK_THROWS_AS(Partition({1, 2}), DomainError);
    CHECK_THROWS_AS(Partition({2, -1}), DomainError);
    CHECK(Partition({2, 0}) == Partition({2}));
    CHECK_THROWS_AS(partitions_of(-1), DomainError);
    CHECK(partitions_of(0).size() == 1);
    CHECK(partitions_of(5).size() == 7);
  }

  TEST_CASE("arm, leg and content") {
    Partition Y({3, 1});
    CHECK(arm(Y, 1, 1) == 2);
    CHECK(leg(Y, 1, 1) == 1);
    CHECK(arm(Y, 2, 2) == -1);
    CHECK(leg(Y, 3, 2) == -1);
    CHECK(content_T(Y) == 2);
    CHECK(size_N(Y) == 4);
    CHECK(Y.transpose() == Partition({2, 1, 1}));
  }

  TEST_CASE("half integers and diagrams") {
    CHECK_THROWS_AS(HalfInt::from_twice(2), DomainError);
    CHECK(HalfInt::from_twice(-3).value() == -1.5);
    MayaDiagram2 M;
    M.I = {{HalfInt{1}, 1}};
    M.J = {{HalfInt{-1}, -1}};
    CHECK(M.valid());
    CHECK(M.charge(1) == 1);
    ChargedPair p = maya_to_young(M);
    CHECK(p.Q == 1);
    CHECK(p.Y_plus.empty());
    CHECK(young_to_maya(p) == M);
    MayaDiagram2 bad;
    bad.I = {{HalfInt{-1}, 1}};
    CHECK_THROWS_AS(maya_to_young(bad), DomainError);
  }

  TEST_CASE("Frobenius data") {
    Frobenius1 f = frobenius_of(Partition({2, 1}), 0);
    CHECK(f.m2.size() == f.n2.size());
    CHECK(young_of(f, 0) == Partition({2, 1}));
    CHECK_THROWS_AS(young_of(f, 1), DomainError);
  }

  TEST_CASE("enumeration sizes") {
    CHECK(enumerate_maya2(1).size() == 6);
    long n = 0;
    for_each_frobenius1(3, [&](const Frobenius1&) { ++n; });
    CHECK(n == 16);
  }

  TEST_CASE("formal characters") {
    auto a = FormalCharacter::monomial({1, 0, 0, 0}, 2);
    auto b = FormalCharacter::monomial({0, 1, 0, 0});
    CHECK((a - a).zero());
    CHECK((a * b).terms().at({1, 1, 0, 0}) == 2);
    CHECK(a.conj().terms().at({-1, 0, 0, 0}) == 2);
    CHECK(a.swap_eps() == FormalCharacter::monomial({0, 1, 0, 0}, 2));
    CHECK(char_ny(Partition({2}), Partition()) == char_nek(Partition({2}), Partition()));
  }
}
