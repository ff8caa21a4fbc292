#include "qtau/connection.hpp"

#include <array>
#include <cmath>

namespace qtau {

cplx DualityPoint::sigma() const { return std::log(u) / q.log(); }
cplx DualityPoint::sigma_check() const { return std::log(u_check) / q.log(); }

namespace {

std::array<cplx, 4> zs(cplx u, cplx uc, cplx t) {
  const cplx st = std::sqrt(t);
  return {u * uc * st, u / uc * st, uc / u * st, st / (u * uc)};
}

DualityPoint shifted(const DualityPoint& p, double du, double duc) {
  return DualityPoint{p.u * std::exp(du), p.u_check * std::exp(duc), p.t, p.q};
}

}  // namespace

cplx s_gen(const DualityPoint& p) {
  const cplx lu = std::log(p.u), luc = std::log(p.u_check);
  const cplx quad = (lu * lu + luc * luc) * (std::log(p.t / p.q.value()) / p.q.log());
  cplx g = 0.0;
  for (cplx z : zs(p.u, p.u_check, p.t)) g += elliptic_dilog_cont(z, p.q);
  return quad - g;
}

cplx s2_closed_form(cplx u, cplx uc, cplx t, const QBase& q) {
  const cplx st = std::sqrt(t);
  const cplx sigma = std::log(u) / q.log();
  cplx den = theta(uc * u * st, q) * theta(u * st / uc, q);
  if (std::abs(den) < 1e-300) throw ResonanceError("s2_closed_form: theta zero");
  return cpow(t, -2.0 * sigma) * u * u * theta(uc / u * st, q) * theta(st / (uc * u), q) / den;
}

cplx mixed_closed_form(const DualityPoint& p) {
  const QBase& q = p.q;
  const cplx qq = qpoch_inf(q.value(), q);
  cplx den = 1.0;
  for (cplx z : zs(p.u, p.u_check, p.t)) den *= theta(z, q);
  return std::sqrt(p.t) / (p.u * p.u_check) * theta(p.u * p.u, q) *
         theta(p.u_check * p.u_check, q) * theta(p.t, q) * qq * qq / den;
}

cplx s_log_u_derivative_fd(const DualityPoint& p, double h) {
  return (s_gen(shifted(p, h, 0)) - s_gen(shifted(p, -h, 0))) / (2.0 * h);
}

cplx s_mixed_derivative_fd(const DualityPoint& p, double h) {
  return (s_gen(shifted(p, h, h)) - s_gen(shifted(p, h, -h)) - s_gen(shifted(p, -h, h)) +
          s_gen(shifted(p, -h, -h))) /
         (4.0 * h * h);
}

cplx reduce_sigma(cplx s) {
  double re = s.real() - std::floor(s.real());
  cplx r(re, s.imag());
  if (re > 0.5) r = 1.0 - r;
  return r;
}

cplx solve_dual_sigma(cplx S2, cplx u, cplx t, const QBase& q, cplx seed) {
  if (S2 == cplx(0.0) || seed == cplx(0.0)) throw DomainError("solve_dual_sigma: zero input");
  const cplx st = std::sqrt(t);
  cplx v = std::log(seed);
  auto F = [&](cplx vv) { return s2_closed_form(u, std::exp(vv), t, q) / S2 - 1.0; };
  cplx f = F(v);
  for (int it = 0; it < 100; ++it) {
    if (std::abs(f) < 1e-14) {
      cplx sc = reduce_sigma(v / q.log());
      return q.pow(sc);
    }
    const cplx uc = std::exp(v);
    const cplx a = uc / u * st, b = st / (uc * u), c = uc * u * st, d = u * st / uc;
    cplx dlog = theta_log_zderiv(a, q) - theta_log_zderiv(b, q) - theta_log_zderiv(c, q) +
                theta_log_zderiv(d, q);
    cplx J = (f + 1.0) * dlog;
    if (std::abs(J) < 1e-14) throw NonconvergenceError("solve_dual_sigma: degenerate Jacobian");
    cplx step = f / J;
    double lam = 1.0;
    cplx fn;
    for (int k = 0; k < 30; ++k) {
      fn = F(v - lam * step);
      if (std::abs(fn) < std::abs(f)) break;
      lam *= 0.5;
    }
    v -= lam * step;
    f = fn;
  }
  if (std::abs(f) < 1e-12) return q.pow(reduce_sigma(v / q.log()));
  throw NonconvergenceError("solve_dual_sigma: no convergence in 100 iterations");
}

cplx upsilon_tau(const DualityPoint& p) {
  const cplx s = p.sigma(), sc = p.sigma_check();
  const cplx qv = p.q.value();
  cplx r = cpow(p.t, s * s + sc * sc);
  for (cplx z : zs(p.u, p.u_check, p.t)) r *= elliptic_gamma(qv * z, qv, qv);
  return r;
}

cplx upsilon_algebraic(cplx t, const QBase& q) {
  const cplx sq = std::sqrt(q.value());
  return cpow(t, 0.125) * elliptic_gamma(std::sqrt(q.value() * t), sq, sq);
}

cplx upsilon_additive(const DualityPoint& p) {
  const cplx lu = std::log(p.u), luc = std::log(p.u_check);
  const cplx quad = (lu * lu + luc * luc) * (std::log(p.t / p.q.value()) / p.q.log());
  cplx g = 0.0;
  for (cplx z : zs(p.u, p.u_check, p.t)) g += elliptic_dilog_cont(z, p.q);
  return -quad - g;
}

namespace {

cplx theta_block(const DualityPoint& p) {
  const QBase& q = p.q;
  const cplx qq = qpoch_inf(q.value(), q);
  return theta(p.u * p.u, q) * theta(p.u_check * p.u_check, q) * theta(p.t, q) * qq * qq;
}

}  // namespace

cplx fusion_kernel(const DualityPoint& p) {
  const cplx s = p.sigma(), sc = p.sigma_check();
  const cplx qv = p.q.value();
  cplx r = -cpow(p.t, s * s + sc * sc + 0.5) / (p.u * p.u_check) * theta_block(p);
  for (cplx z : zs(p.u, p.u_check, p.t)) {
    cplx th = theta(z, p.q);
    r *= elliptic_gamma(z, qv, qv) / (th * th);
  }
  return r;
}

cplx fusion_kernel_variant(const DualityPoint& p) {
  const cplx s = p.sigma(), sc = p.sigma_check();
  const cplx qv = p.q.value();
  cplx r = cpow(p.t, s * s + sc * sc - 0.5) / (p.u * p.u_check) * theta_block(p);
  for (cplx z : zs(p.u, p.u_check, p.t)) r *= elliptic_gamma(z, qv, qv);
  return r;
}

}  // namespace qtau
