#include <doctest.h>

#include <stdexcept>

#include "checks.hpp"

using namespace qtau::checks;

TEST_SUITE("checks") {
  TEST_CASE("suite registry") {
    CHECK(suite_names().size() == 6);
    CHECK_THROWS_AS(run_suite("nope"), std::invalid_argument);
  }

  TEST_CASE("special suite passes and every check has a criterion tag") {
    Report r = run_suite("special");
    CHECK(all_pass(r));
    for (const auto& c : r) CHECK(c.criterion >= 0);
    CHECK(format_line(r.front()).find("PASS") != std::string::npos);
  }

  TEST_CASE("tolerance below machine precision fails") {
    Options o;
    o.tol_override = 1e-300;
    CHECK_FALSE(all_pass(run_suite("special", o)));
  }
}
