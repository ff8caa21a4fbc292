#pragma once

#include "qtau/common.hpp"
#include "qtau/qspecial.hpp"

namespace qtau {

struct DualityPoint {
  cplx u;
  cplx u_check;
  cplx t;
  QBase q;

  cplx sigma() const;        // log u / log q
  cplx sigma_check() const;  // log u_check / log q
};

// s = ((log u)^2 + (log u_check)^2) log_q(t/q) - sum_{eps,eps'} gamma(u^eps u_check^eps' sqrt t),
// with gamma the continued elliptic dilogarithm (so that z d/dz of the sum term is
// +log theta).
cplx s_gen(const DualityPoint& p);

// t^{-2 sigma} u^2 theta(u_check u^-1 sqrt t) theta(u_check^-1 u^-1 sqrt t)
//   / (theta(u_check u sqrt t) theta(u_check^-1 u sqrt t))
cplx s2_closed_form(cplx u, cplx u_check, cplx t, const QBase& q);

// sqrt(t)/(u u_check) theta(u^2) theta(u_check^2) theta(t) (q;q)^2 / prod theta(u^eps u_check^eps' sqrt t)
cplx mixed_closed_form(const DualityPoint& p);

// Central finite differences of s_gen in log u, and the mixed log u / log u_check one.
cplx s_log_u_derivative_fd(const DualityPoint& p, double h = 1e-6);
cplx s_mixed_derivative_fd(const DualityPoint& p, double h = 1e-4);

// Solves s2_closed_form(u, u_check, t) = S2 for u_check by damped Newton in log u_check.
// The answer is reduced to 0 <= Re sigma_check <= 1/2 using the invariances
// u_check -> q u_check and u_check -> 1/u_check.
cplx solve_dual_sigma(cplx S2, cplx u, cplx t, const QBase& q, cplx seed);

// Reduces sigma to the representative with 0 <= Re sigma <= 1/2 modulo Z and sign.
cplx reduce_sigma(cplx sigma);

// t^{sigma^2 + sigma_check^2} prod Gamma(q u^eps u_check^eps' sqrt t; q, q)
cplx upsilon_tau(const DualityPoint& p);

// t^{1/8} Gamma(sqrt(q t); sqrt q, sqrt q)
cplx upsilon_algebraic(cplx t, const QBase& q);

// -((log u)^2 + (log u_check)^2) log_q(t/q) - sum gamma(...) - s0, with s0 = 0.
cplx upsilon_additive(const DualityPoint& p);

// sign * t^{sigma^2+sigma_check^2+1/2}/(u u_check) theta(u^2) theta(u_check^2) theta(t) (q;q)^2
//   * prod Gamma(z; q, q) / prod theta(z)^2, z = u^eps u_check^eps' sqrt t, with the sign
// matching the s_gen convention; equals d^2 s / dlog u dlog u_check * upsilon_tau.
cplx fusion_kernel(const DualityPoint& p);

// Positive sign, t^{-1/2} and no theta^{-2} factors; differs from fusion_kernel, kept for comparison.
cplx fusion_kernel_variant(const DualityPoint& p);

}  // namespace qtau
