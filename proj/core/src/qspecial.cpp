#include "qtau/qspecial.hpp"

#include <cmath>
#include <numbers>

namespace qtau {

QBase::QBase(cplx q, double resonance_tol) : q_(q), tol_(resonance_tol) {
  double a = std::abs(q);
  if (!(a > 0.0 && a < 1.0)) throw DomainError("q must satisfy 0 < |q| < 1");
  logq_ = std::log(q);
}

cplx QBase::powi(int n) const {
  if (n >= 0) return std::pow(q_, n);
  return std::pow(cplx(1.0) / q_, -n);
}

void QBase::guard(cplx x, const std::string& what) const {
  if (std::abs(1.0 - x) <= tol_) throw ResonanceError("resonance: " + what);
}

cplx qpoch_finite(cplx z, const QBase& q, int n) {
  cplx r = 1.0;
  if (n >= 0) {
    cplx zq = z;
    for (int i = 0; i < n; ++i) {
      r *= 1.0 - zq;
      zq *= q.value();
    }
    return r;
  }
  cplx zq = z * q.powi(n);
  for (int i = 0; i < -n; ++i) {
    r *= 1.0 - zq;
    zq *= q.value();
  }
  return 1.0 / r;
}

namespace {

// log (w;q)_inf = -sum_n w^n / (n (1 - q^n)) for |w| < 1.
cplx log_qpoch_tail(cplx w, const QBase& q, const TruncationPolicy& pol) {
  cplx s = 0.0, wn = 1.0, qn = 1.0;
  int small = 0;
  for (int n = 1; n <= pol.max_terms; ++n) {
    wn *= w;
    qn *= q.value();
    cplx term = wn / (double(n) * (1.0 - qn));
    s -= term;
    if (std::abs(term) < pol.abs_tol * 1e-3) {
      if (++small >= 2) return s;
    } else {
      small = 0;
    }
  }
  throw NonconvergenceError("qpoch_inf: tail series exceeded max_terms");
}

}  // namespace

cplx qpoch_inf(cplx z, const QBase& q, const TruncationPolicy& pol) {
  if (z == cplx(0.0)) return 1.0;
  cplx r = 1.0, w = z;
  int i = 0;
  while (std::abs(w) >= 0.5) {
    r *= 1.0 - w;
    w *= q.value();
    if (++i > pol.max_terms) throw NonconvergenceError("qpoch_inf: max_terms");
  }
  return r * std::exp(log_qpoch_tail(w, q, pol));
}

cplx qpoch2_inf(cplx z, const QBase& q1, const QBase& q2,
                const TruncationPolicy& pol) {
  if (z == cplx(0.0)) return 1.0;
  cplx pre = 1.0;
  int i = 0;
  while (std::abs(z) >= 0.5) {
    pre *= qpoch_inf(z, q1, pol);
    z *= q2.value();
    if (++i > pol.max_terms) throw NonconvergenceError("qpoch2_inf: max_terms");
  }
  cplx s = 0.0, zn = 1.0, a = 1.0, b = 1.0;
  int small = 0;
  for (int n = 1; n <= pol.max_terms; ++n) {
    zn *= z;
    a *= q1.value();
    b *= q2.value();
    q1.guard(a, "qpoch2_inf: q1^n");
    q2.guard(b, "qpoch2_inf: q2^n");
    cplx term = zn / (double(n) * (1.0 - a) * (1.0 - b));
    s += term;
    if (std::abs(term) < pol.abs_tol * 1e-3) {
      if (++small >= 2) return pre * std::exp(-s);
    } else {
      small = 0;
    }
  }
  throw NonconvergenceError("qpoch2_inf: exp-sum exceeded max_terms");
}

cplx theta(cplx z, const QBase& q, const TruncationPolicy& pol) {
  if (z == cplx(0.0)) throw DomainError("theta: z = 0");
  return qpoch_inf(z, q, pol) * qpoch_inf(q.value() / z, q, pol);
}

cplx theta1(cplx z, const QBase& q, const TruncationPolicy& pol) {
  return qpoch_inf(q.value(), q, pol) * theta(z, q, pol);
}

cplx theta_partial(cplx u, const QBase& q, const TruncationPolicy& pol) {
  cplx s = 1.0, term = 1.0, qn = 1.0;
  int small = 0;
  for (int n = 1; n <= pol.max_terms; ++n) {
    term *= -qn * u;  // ratio (-1) q^{n-1} u
    qn *= q.value();
    s += term;
    if (std::abs(term) < pol.abs_tol * 1e-3) {
      if (++small >= 2) return s;
    } else {
      small = 0;
    }
  }
  throw NonconvergenceError("theta_partial: max_terms");
}

cplx theta_log_zderiv(cplx z, const QBase& q, const TruncationPolicy& pol) {
  if (z == cplx(0.0)) throw DomainError("theta_log_zderiv: z = 0");
  cplx s = 0.0, a = z, b = q.value() / z;
  int small = 0;
  for (int i = 0; i < pol.max_terms; ++i) {
    cplx term = -a / (1.0 - a) + b / (1.0 - b);
    s += term;
    a *= q.value();
    b *= q.value();
    if (std::abs(term) < pol.abs_tol * 1e-3) {
      if (++small >= 2) return s;
    } else {
      small = 0;
    }
  }
  throw NonconvergenceError("theta_log_zderiv: max_terms");
}

cplx qbessel_j(int k, cplx u, cplx z, const QBase& q, const TruncationPolicy& pol) {
  if (k < 0 || k > 2) throw DomainError("qbessel_j: k must be 0, 1 or 2");
  if (k == 0 && std::abs(z) >= 1.0) throw DomainError("qbessel_j: j_0 needs |z| < 1");
  cplx uk2 = k == 0 ? cplx(1.0) : (k == 1 ? std::sqrt(u) : u);
  cplx s = 1.0, term = 1.0, qn = 1.0, qkn = 1.0;
  cplx qk = std::pow(q.value(), k);
  int small = 0;
  for (int n = 0; n < pol.max_terms; ++n) {
    cplx un = u * qn;
    q.guard(un, "qbessel_j: (u;q)_n");
    qn *= q.value();
    term *= qkn * uk2 * z / ((1.0 - un) * (1.0 - qn));
    qkn *= qk;
    s += term;
    if (std::abs(term) < pol.abs_tol * 1e-3 * std::max(1.0, std::abs(s))) {
      if (++small >= 2) return s;
    } else {
      small = 0;
    }
  }
  throw NonconvergenceError("qbessel_j: max_terms");
}

cplx elliptic_gamma(cplx z, cplx p, cplx q, const TruncationPolicy& pol) {
  double ap = std::abs(p), aq = std::abs(q);
  if (ap == 1.0 || aq == 1.0 || ap == 0.0 || aq == 0.0)
    throw DomainError("elliptic_gamma: |p|, |q| must differ from 0 and 1");
  if (aq > 1.0 && ap > 1.0) throw DomainError("elliptic_gamma: |p|, |q| both > 1");
  if (ap > 1.0) return elliptic_gamma(z, q, p, pol);
  if (aq > 1.0) return 1.0 / elliptic_gamma(z / q, p, 1.0 / q, pol);
  if (z == cplx(0.0)) throw DomainError("elliptic_gamma: z = 0");
  QBase P(p), Q(q);
  cplx den = qpoch2_inf(p * q / z, P, Q, pol);
  if (std::abs(den) < 1e-13) throw ResonanceError("elliptic_gamma: pole");
  return qpoch2_inf(z, P, Q, pol) / den;
}

cplx elliptic_dilog(cplx z, const QBase& q, const TruncationPolicy& pol) {
  double az = std::abs(z);
  if (!(az > std::abs(q.value()) && az < 1.0))
    throw DomainError("elliptic_dilog: need |q| < |z| < 1");
  cplx w = q.value() / z;
  cplx s = 0.0, zn = 1.0, wn = 1.0, qn = 1.0;
  int small = 0;
  for (int n = 1; n <= pol.max_terms * 100; ++n) {
    zn *= z;
    wn *= w;
    qn *= q.value();
    cplx term = (zn - wn) / (double(n) * double(n) * (1.0 - qn));
    s += term;
    if (std::abs(term) < pol.abs_tol * 1e-3) {
      if (++small >= 2) return s;
    } else {
      small = 0;
    }
  }
  throw NonconvergenceError("elliptic_dilog: max_terms");
}

cplx elliptic_dilog_cont(cplx z, const QBase& q, const TruncationPolicy& pol) {
  if (z == cplx(0.0)) throw DomainError("elliptic_dilog_cont: z = 0");
  constexpr double pi = std::numbers::pi;
  const cplx c = pi * pi / 6.0;
  double aq = std::abs(q.value());
  if (std::abs(z) > aq && std::abs(z) < 1.0) return elliptic_dilog(z, q, pol);
  cplx acc = 0.0;
  int guard = 0;
  while (std::abs(z) <= aq) {
    // gamma(z) = gamma(z/q) + pi^2/6 + (log(z/q) + i pi)^2 / 2
    cplx w = z / q.value();
    cplx l = std::log(w) + I_UNIT * pi;
    acc += c + 0.5 * l * l;
    z = w;
    if (++guard > 10000) throw NonconvergenceError("elliptic_dilog_cont: shift");
  }
  while (std::abs(z) >= 1.0) {
    // gamma(z) = gamma(q z) - pi^2/6 - (log z + i pi)^2 / 2
    cplx l = std::log(z) + I_UNIT * pi;
    acc -= c + 0.5 * l * l;
    z = z * q.value();
    if (++guard > 10000) throw NonconvergenceError("elliptic_dilog_cont: shift");
  }
  return acc + elliptic_dilog(z, q, pol);
}

}  // namespace qtau
