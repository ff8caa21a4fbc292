#pragma once

#include <optional>
#include <string>
#include <vector>

namespace qtau::checks {

enum class Mode {
  below,  // pass iff residual < tol
  above,  // pass iff residual > tol (negative control)
  exact   // pass iff residual == 0 (integer counts)
};

struct Check {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  Mode mode = Mode::below;
  int criterion = 0;  // acceptance criterion this check belongs to, 0 for none
  std::string detail;
  bool pass = false;
};

struct Options {
  std::optional<double> tol_override;  // replaces every non-exact tolerance
};

using Report = std::vector<Check>;

const std::vector<std::string>& suite_names();  // without "all"

// Throws std::invalid_argument on an unknown suite. "all" runs every suite.
Report run_suite(const std::string& name, const Options& opt = {});

bool all_pass(const Report& r);

// name residual tol PASS|FAIL [detail]
std::string format_line(const Check& c);

}  // namespace qtau::checks
