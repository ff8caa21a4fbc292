#include "qtau/qlinsys.hpp"

#include <algorithm>

namespace qtau {

double norm_max(const Mat2& m) { return m.cwiseAbs().maxCoeff(); }

Mat2 diag2(cplx a, cplx b) {
  Mat2 d;
  d << a, 0.0, 0.0, b;
  return d;
}

Mat2 sigma3_pow(cplx x) { return diag2(x, 1.0 / x); }

cplx S_from_s(const QBase& q, cplx sigma, cplx s0, cplx sinf) {
  cplx num = qpoch_inf(q.pow(1.0 - 2.0 * sigma), q);
  cplx den = qpoch_inf(q.pow(2.0 * sigma), q);
  return I_UNIT * (sinf / s0) * q.pow(-0.25 + sigma) * num / den;
}

MonodromyInput MonodromyInput::from_s(cplx q, cplx sigma, cplx s0, cplx sinf) {
  if (s0 == cplx(0.0) || sinf == cplx(0.0)) throw DomainError("s0, s_inf must be nonzero");
  QBase qb(q);
  return MonodromyInput{qb, sigma, s0, sinf, S_from_s(qb, sigma, s0, sinf)};
}

MonodromyInput MonodromyInput::from_S2(cplx q, cplx sigma, cplx S2) {
  if (S2 == cplx(0.0)) throw DomainError("S2 must be nonzero");
  QBase qb(q);
  cplx unit = S_from_s(qb, sigma, 1.0, 1.0);
  cplx S = std::sqrt(S2);
  return MonodromyInput{qb, sigma, 1.0, S / unit, S};
}

void MonodromyInput::check_nonresonant(int modes) const {
  cplx u2 = q.pow(2.0 * sigma);
  for (int n = -2 * modes; n <= 2 * modes; ++n)
    q.guard(u2 * q.powi(n), "2 sigma too close to an integer");
}

double TranscendentWindow::painleve_residual() const {
  cplx g2 = g_cur * g_cur;
  return std::abs(g_next * g_prev * (g2 + 1.0) - (g2 + t));
}

namespace {
void check_g(const TranscendentWindow& w) {
  if (w.g_cur == cplx(0.0) || w.g_next == cplx(0.0))
    throw DomainError("Lax matrices need g(t), g(qt) nonzero");
}
}  // namespace

Mat2 lax_L(const TranscendentWindow& w, cplx z) {
  check_g(w);
  if (z == cplx(0.0)) throw DomainError("lax_L: z = 0");
  const cplx g = w.g_cur, gn = w.g_next, t = w.t;
  Mat2 L;
  L << gn / g + gn * g, 1.0 + t / (z * g * g),
       z + g * g, t / (gn * g) + g / gn;
  return L;
}

Mat2 lax_B_inv(const TranscendentWindow& w, const QBase& q, cplx z) {
  check_g(w);
  if (z == cplx(0.0)) throw DomainError("lax_B: z = 0");
  const cplx g = w.g_cur, gn = w.g_next;
  Mat2 B;
  B << 1.0, q.value() * w.t / (z * gn * g),
       gn * g, 1.0;
  return B;
}

Mat2 lax_B(const TranscendentWindow& w, const QBase& q, cplx z) {
  return lax_B_inv(w, q, z).inverse();
}

Mat2 tz_shift(const TranscendentWindow& w, cplx z) {
  Mat2 M;
  M << w.g_next / w.g_cur, 1.0, z, w.g_cur / w.g_next;
  return M;
}

double compatibility_residual(const TranscendentWindow& w, const QBase& q, cplx z) {
  const cplx tp = w.t / q.value();
  TranscendentWindow lower{tp, 0.0, w.g_prev, w.g_cur};
  Mat2 lhs = lax_L(w, z);
  Mat2 rhs = lax_B_inv(lower, q, z) * lax_L(lower, z) * lax_B(lower, q, q.value() * z);
  return norm_max(lhs - rhs);
}

cplx painleve_step(cplx g_prev, cplx g_cur, cplx t) {
  if (g_prev == cplx(0.0)) throw DomainError("painleve_step: g(t/q) = 0");
  cplx g2 = g_cur * g_cur;
  if (std::abs(g2 + 1.0) < 1e-12) throw DomainError("painleve_step: g(t)^2 = -1");
  if (t == cplx(0.0)) throw DomainError("painleve_step: t = 0 is degenerate");
  return (g2 + t) / ((g2 + 1.0) * g_prev);
}

Mat2 backlund_Bb(const QBase& q, cplx z) {
  cplx sz = std::sqrt(z);
  cplx q4 = q.pow(0.25);
  Mat2 B;
  B << 0.0, q4 / sz, sz / q4, 0.0;
  return B;
}

Mat2 aux_L(Side which, cplx sigma, cplx t, cplx z, const QBase& q) {
  if (z == cplx(0.0)) throw DomainError("aux_L: z = 0");
  const cplx u = q.pow(sigma);
  Mat2 L;
  if (which == Side::zero) {
    const cplx st = std::sqrt(t);
    L << u, st / z, st, 1.0 / u;
  } else {
    L << u, 1.0, z, 1.0 / u;
  }
  return L;
}

Mat2 aux_L0_k(int k, cplx sigma, cplx t, cplx z, const QBase& q) {
  if (z == cplx(0.0)) throw DomainError("aux_L0_k: z = 0");
  const cplx u = q.pow(sigma);
  Mat2 L;
  switch (k) {
    case 0: {
      if (std::abs(1.0 - t / z) < 1e-14) throw DomainError("aux_L0_k: pole at z = t");
      const cplx st = std::sqrt(t);
      L << u, st / z, st, 1.0 / u;
      return L / (1.0 - t / z);
    }
    case 1:
      L << 0.0, -u, 1.0 / u, 1.0 / u + u + t / z;
      return L;
    case 2:
      return aux_L(Side::zero, sigma, t, z, q);
    default:
      throw DomainError("aux_L0_k: k must be 0, 1 or 2");
  }
}

Mat2 qbessel_matrix_zero(cplx sigma, cplx w, const QBase& q) {
  const cplx u = q.pow(sigma);
  const cplx c1 = 1.0 / (u - 1.0 / u);
  const cplx c2 = 1.0 / (u - q.value() / u);
  Mat2 M;
  M << qbessel_j(2, q.pow(1.0 - 2.0 * sigma), w, q),
       w * c2 * qbessel_j(2, q.pow(2.0 - 2.0 * sigma), w, q),
       -c1 * qbessel_j(2, q.pow(1.0 + 2.0 * sigma), w, q),
       qbessel_j(2, q.pow(2.0 * sigma), w, q);
  return M;
}

Mat2 qbessel_matrix_inf(cplx sigma, cplx z, const QBase& q) {
  const cplx u = q.pow(sigma);
  const cplx c1 = 1.0 / (u - 1.0 / u);
  const cplx c2 = 1.0 / (u - q.value() / u);
  Mat2 M;
  M << qbessel_j(0, q.pow(2.0 * sigma), z, q),
       c1 * qbessel_j(0, q.pow(1.0 + 2.0 * sigma), z, q),
       -z * c2 * qbessel_j(0, q.pow(2.0 - 2.0 * sigma), z, q),
       qbessel_j(0, q.pow(1.0 - 2.0 * sigma), z, q);
  return M;
}

Mat2 parametrix(Side which, const MonodromyInput& m, cplx t, cplx z) {
  if (z == cplx(0.0)) throw DomainError("parametrix: z = 0");
  const QBase& q = m.q;
  if (which == Side::zero) {
    cplx qt = q.value() * t;
    return sigma3_pow(m.s0 * cpow(qt, -m.sigma)) * qbessel_matrix_zero(m.sigma, qt / z, q) *
           sigma3_pow(cpow(t, 0.25));
  }
  if (std::abs(z) >= 1.0) throw DomainError("parametrix(inf): need |z| < 1");
  return sigma3_pow(m.sinf * q.pow(-0.25)) * qbessel_matrix_inf(m.sigma, z, q);
}

Mat2 algebraic_Y(AlgPart which, cplx t, cplx z, const QBase& q, int sheet) {
  if (z == cplx(0.0)) throw DomainError("algebraic_Y: z = 0");
  const cplx sq = std::sqrt(q.value());
  const QBase hq(sq);
  const double sgn = (sheet % 2 == 0) ? 1.0 : -1.0;
  const cplx a = sgn * std::sqrt(q.value() * t / z);
  const cplx b = sgn * std::sqrt(z);
  const cplx quarter = std::pow(I_UNIT, ((sheet % 4) + 4) % 4);
  Mat2 T;
  T << 1.0, -1.0, 1.0, 1.0;
  T = 0.5 * sigma3_pow(q.pow(-0.125)) * T;
  cplx pma = 1.0, pa = 1.0, pmb = 1.0, pb = 1.0;
  if (which != AlgPart::inf) {
    pma = qpoch_inf(-a, hq);
    pa = qpoch_inf(a, hq);
  }
  if (which != AlgPart::zero) {
    pmb = qpoch_inf(-b, hq);
    pb = qpoch_inf(b, hq);
  }
  Mat2 M;
  M << pma / pmb, pma / pmb, -pa / pb, pa / pb;
  return T * M * sigma3_pow(quarter * cpow(z / sq, 0.25));
}

Mat2 jump_J(const MonodromyInput& m, cplx t, cplx z) {
  const double az = std::abs(z);
  if (!(az > std::abs(m.q.value() * t) && az < 1.0))
    throw DomainError("jump_J: need |qt| < |z| < 1");
  return parametrix(Side::zero, m, t, z).inverse() * parametrix(Side::inf, m, t, z);
}

}  // namespace qtau
