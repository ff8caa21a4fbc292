#pragma once

#include <Eigen/Dense>

#include "qtau/common.hpp"
#include "qtau/qspecial.hpp"

namespace qtau {

using Mat2 = Eigen::Matrix2cd;

double norm_max(const Mat2& m);
Mat2 diag2(cplx a, cplx b);
// x^{sigma3} = diag(x, 1/x)
Mat2 sigma3_pow(cplx x);

struct MonodromyInput {
  QBase q;
  cplx sigma;
  cplx s0;
  cplx sinf;
  cplx S;

  static MonodromyInput from_s(cplx q, cplx sigma, cplx s0, cplx sinf);
  // Fixes s0 = 1 and picks s_inf so that S^2 matches (principal square root).
  static MonodromyInput from_S2(cplx q, cplx sigma, cplx S2);

  cplx u() const { return q.pow(sigma); }
  cplx S2() const { return S * S; }
  // |1 - q^{2 sigma + n}| > guard for |n| <= 2 * modes.
  void check_nonresonant(int modes) const;
};

// S = i (s_inf/s0) q^{-1/4+sigma} (q^{1-2sigma};q)/(q^{2sigma};q)
cplx S_from_s(const QBase& q, cplx sigma, cplx s0, cplx sinf);

struct TranscendentWindow {
  cplx t;
  cplx g_prev;  // g(t/q)
  cplx g_cur;   // g(t)
  cplx g_next;  // g(qt)

  double painleve_residual() const;
};

Mat2 lax_L(const TranscendentWindow& w, cplx z);
Mat2 lax_B_inv(const TranscendentWindow& w, const QBase& q, cplx z);
Mat2 lax_B(const TranscendentWindow& w, const QBase& q, cplx z);
// [[g(qt)/g(t), 1], [z, g(t)/g(qt)]]
Mat2 tz_shift(const TranscendentWindow& w, cplx z);
// L(t,z) - B(t/q,z)^{-1} L(t/q,z) B(t/q,qz), using g(t/q), g(t), g(qt).
double compatibility_residual(const TranscendentWindow& w, const QBase& q, cplx z);

cplx painleve_step(cplx g_prev, cplx g_cur, cplx t);

// [[0, q^{1/4} z^{-1/2}], [q^{-1/4} z^{1/2}, 0]]
Mat2 backlund_Bb(const QBase& q, cplx z);

enum class Side { zero, inf };

Mat2 aux_L(Side which, cplx sigma, cplx t, cplx z, const QBase& q);
Mat2 aux_L0_k(int k, cplx sigma, cplx t, cplx z, const QBase& q);

// Bare q-Bessel matrices.
Mat2 qbessel_matrix_zero(cplx sigma, cplx w, const QBase& q);
Mat2 qbessel_matrix_inf(cplx sigma, cplx z, const QBase& q);

// Single-valued parts Psi_-(z) and Psi_+(z); Y_0 = z^{sigma sigma3} Psi_-,
// Y_inf = z^{sigma sigma3} Psi_+.
Mat2 parametrix(Side which, const MonodromyInput& m, cplx t, cplx z);

enum class AlgPart { full, zero, inf };
// sheet k continues the branches along z -> e^{2 pi i k} z.
Mat2 algebraic_Y(AlgPart which, cplx t, cplx z, const QBase& q, int sheet = 0);

// J = Psi_-^{-1} Psi_+ on |qt| < |z| < 1.
Mat2 jump_J(const MonodromyInput& m, cplx t, cplx z);

}  // namespace qtau
