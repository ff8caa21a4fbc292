#include <chrono>
#include <cstdio>
#include <string>

#include "checks.hpp"

using namespace qtau::checks;

int main() {
  auto t0 = std::chrono::steady_clock::now();
  Report r = run_suite("all");
  double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const char* title[10] = {"",
                           "triple pipeline agreement",
                           "exact combinatorics",
                           "per-diagram keystone",
                           "bilinear equations",
                           "transcendent",
                           "algebraic solution",
                           "Szego and k-structure",
                           "connection",
                           "special functions and full suite runtime"};
  bool all = true;
  for (int k = 1; k <= 9; ++k) {
    int n = 0, bad = 0;
    for (const auto& c : r)
      if (c.criterion == k) {
        ++n;
        if (!c.pass) ++bad;
      }
    bool pass = n > 0 && bad == 0;
    std::string extra;
    if (k == 9) {
      bool fast = el < 300.0;
      pass = pass && fast;
      char b[64];
      std::snprintf(b, sizeof b, ", verify all %.1f s < 300 s", el);
      extra = b;
    }
    all = all && pass;
    std::printf("criterion %d %-42s %s (%d checks%s)\n", k, title[k], pass ? "PASS" : "FAIL", n,
                extra.c_str());
    for (const auto& c : r)
      if (c.criterion == k && !c.pass) std::printf("    %s\n", format_line(c).c_str());
  }
  int other = 0, other_bad = 0;
  for (const auto& c : r)
    if (c.criterion == 0) {
      ++other;
      if (!c.pass) {
        ++other_bad;
        std::printf("    %s\n", format_line(c).c_str());
      }
    }
  std::printf("supporting checks: %d of %d pass\n", other - other_bad, other);
  return all && other_bad == 0 ? 0 : 1;
}
