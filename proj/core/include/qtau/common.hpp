#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace qtau {

using cplx = std::complex<double>;

inline constexpr cplx I_UNIT{0.0, 1.0};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Raised when a denominator 1 - q^e comes within the guard of zero.
struct ResonanceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonconvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Series stop after two consecutive terms below abs_tol.
struct TruncationPolicy {
  double abs_tol = 1e-14;
  int max_terms = 10000;
};

class QBase {
 public:
  QBase(cplx q, double resonance_tol = 1e-10);  // NOLINT: implicit by design
  QBase(double q) : QBase(cplx(q, 0.0)) {}      // NOLINT

  cplx value() const { return q_; }
  cplx log() const { return logq_; }
  double resonance_tol() const { return tol_; }

  // q^e on the principal branch of log q.
  cplx pow(cplx e) const { return std::exp(e * logq_); }
  cplx pow(double e) const { return std::exp(e * logq_); }
  cplx powi(int n) const;

  // Throws ResonanceError if |1 - x| <= tol.
  void guard(cplx x, const std::string& what) const;

 private:
  cplx q_;
  cplx logq_;
  double tol_;
};

// Principal-branch power a^b.
inline cplx cpow(cplx a, cplx b) {
  if (a == cplx(0.0)) return b == cplx(0.0) ? cplx(1.0) : cplx(0.0);
  return std::exp(b * std::log(a));
}

inline double rel_diff(cplx a, cplx b) {
  double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace qtau
