#include "qtau/nekrasov.hpp"

#include <algorithm>
#include <cmath>

namespace qtau {

cplx sigma_of_u(cplx u, const QBase& q) {
  if (u == cplx(0.0)) throw DomainError("u must be nonzero");
  return std::log(u) / q.log();
}

std::vector<cplx> instanton_coeffs(int k, cplx nu, const QBase& q, int max_boxes) {
  if (max_boxes < 0) throw DomainError("max_boxes must be nonnegative");
  std::vector<cplx> c(max_boxes + 1, 0.0);
  const cplx qknu = q.pow(double(k) * nu);
  for (int N = 0; N <= max_boxes; ++N) {
    cplx s = 0.0;
    for (int np = 0; np <= N; ++np) {
      const auto& Pp = partitions_of(np);
      const auto& Pm = partitions_of(N - np);
      const cplx wN = std::pow(qknu, 2 * np - N);
      for (const auto& Yp : Pp) {
        const int Tp = content_T(Yp);
        for (const auto& Ym : Pm) {
          const int T = Tp + content_T(Ym);
          s += wN * q.powi(k * T) * z_vec(-nu, nu, Yp, Ym, q.value());
        }
      }
    }
    c[N] = s;
  }
  return c;
}

namespace {

cplx inst_prefactor(cplx nu, const QBase& q) {
  cplx d = 1.0;
  for (int eps : {1, -1}) d *= qpoch2_inf(q.pow(1.0 + 2.0 * double(eps) * nu), q, q);
  if (std::abs(d) < 1e-300) throw ResonanceError("z_inst: vanishing prefactor");
  return 1.0 / d;
}

cplx horner(const std::vector<cplx>& c, cplx t) {
  cplx s = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * t + *it;
  return s;
}

}  // namespace

cplx z_inst(int k, cplx nu, cplx t, const QBase& q, const SeriesCutoff& cut) {
  auto c = instanton_coeffs(k, nu, q, cut.max_boxes);
  return cpow(t, nu * nu) * inst_prefactor(nu, q) * horner(c, t);
}

TauSeries::TauSeries(int k, Sector mu, cplx S2, cplx u, const QBase& q, const SeriesCutoff& cut)
    : TauSeries(k, mu, S2, 0.0, u, q, cut) {}

TauSeries TauSeries::from_S(int k, Sector mu, cplx S, cplx u, const QBase& q,
                            const SeriesCutoff& cut) {
  return TauSeries(k, mu, S * S, S, u, q, cut);
}

TauSeries::TauSeries(int k, Sector mu, cplx S2, cplx S, cplx u, const QBase& q,
                     const SeriesCutoff& cut)
    : k_(k), cut_(cut) {
  if (k < -2 || k > 2) throw DomainError("k must lie in [-2, 2]");
  if (S2 == cplx(0.0)) throw DomainError("S2 must be nonzero");
  const cplx sigma = sigma_of_u(u, q);
  const double shift = sector_shift(mu);
  for (int j = -cut.max_Q - 1; j <= cut.max_Q; ++j) {
    double Q = j + shift;
    if (std::abs(Q) > cut.max_Q + 1e-12) continue;
    cplx nu = sigma + Q;
    for (int n = -2 * cut.max_boxes - 2; n <= 2 * cut.max_boxes + 2; ++n)
      q.guard(q.pow(2.0 * nu) * q.powi(n), "2(sigma+Q) too close to an integer");
    Shell s;
    s.Q = Q;
    s.nu = nu;
    cplx w;
    if (S != cplx(0.0)) w = std::pow(S, int(std::lround(2.0 * Q)));
    else w = mu == Sector::zero ? std::pow(S2, int(Q)) : cpow(S2, Q);
    s.weight = w * inst_prefactor(nu, q);
    s.coeffs = instanton_coeffs(k, nu, q, cut.max_boxes);
    shells_.push_back(std::move(s));
  }
  std::sort(shells_.begin(), shells_.end(),
            [](const Shell& a, const Shell& b) { return std::abs(a.Q) < std::abs(b.Q); });
}

TauValue TauSeries::eval(cplx t) const {
  TauValue r;
  r.cutoff_used = cut_;
  cplx total = 0.0, box_shell = 0.0, q_shell = 0.0;
  double maxQ = 0.0;
  for (const auto& s : shells_) maxQ = std::max(maxQ, std::abs(s.Q));
  for (const auto& s : shells_) {
    cplx tn = cpow(t, s.nu * s.nu) * s.weight;
    cplx v = tn * horner(s.coeffs, t);
    total += v;
    box_shell += tn * s.coeffs.back() * std::pow(t, int(s.coeffs.size()) - 1);
    if (std::abs(s.Q) == maxQ) q_shell += v;
  }
  r.value = total;
  double a = std::abs(total);
  r.est_error = a == 0.0 ? 0.0 : std::max(std::abs(box_shell), std::abs(q_shell)) / a;
  return r;
}

namespace {

template <class F>
TauValue adaptive_eval(const SeriesCutoff& cut, F&& f) {
  TauValue v = f(cut);
  if (!cut.adaptive) return v;
  SeriesCutoff c = cut;
  while (c.max_boxes < 24) {
    c.max_boxes = std::min(24, std::max(1, 2 * c.max_boxes));
    TauValue w = f(c);
    double d = rel_diff(w.value, v.value);
    w.est_error = d;
    v = w;
    if (d < cut.rel_tol) return v;
  }
  if (v.est_error >= cut.rel_tol)
    throw NonconvergenceError("series did not reach rel_tol within 24 boxes");
  return v;
}

}  // namespace

TauValue tau_T(int k, Sector mu, cplx S2, cplx u, cplx t, const QBase& q,
               const SeriesCutoff& cut) {
  return adaptive_eval(cut, [&](const SeriesCutoff& c) {
    return TauSeries(k, mu, S2, u, q, c).eval(t);
  });
}

namespace {

cplx tau_norm(cplx sigma, cplx t, const QBase& q) {
  cplx p = 1.0;
  for (int eps : {1, -1}) p *= qpoch2_inf(q.pow(1.0 + 2.0 * double(eps) * sigma), q, q);
  return cpow(t, -sigma * sigma) * p;
}

}  // namespace

TauValue tau_series_k(const MonodromyInput& m, cplx t, int k, const SeriesCutoff& cut) {
  m.check_nonresonant(cut.max_boxes);
  TauValue v = tau_T(k, Sector::zero, m.S2(), m.u(), t, m.q, cut);
  v.value *= tau_norm(m.sigma, t, m.q);
  return v;
}

TauValue tau_widom_series(const MonodromyInput& m, cplx t, const SeriesCutoff& cut) {
  return tau_series_k(m, t, -2, cut);
}

cplx T0_from_tau(cplx tau, cplx sigma, cplx t, const QBase& q) {
  cplx p = 1.0;
  for (int eps : {1, -1}) p *= qpoch2_inf(q.pow(1.0 + 2.0 * double(eps) * sigma), q, q);
  return q.pow(-sigma * sigma) * cpow(q.value() * t, sigma * sigma) / p * tau;
}

cplx tau_from_T0(cplx T0, cplx sigma, cplx t, const QBase& q) {
  return T0 / T0_from_tau(1.0, sigma, t, q);
}

cplx T_ren_from_tau(cplx tau, const MonodromyInput& m, cplx t) {
  cplx qt = m.q.value() * t;
  return (m.s0 / m.sinf) * cpow(qt, m.sigma * m.sigma) * qpoch2_inf(qt, m.q, m.q) * tau;
}

cplx g_transcendent(cplx S2, cplx u, cplx t, const QBase& q, const SeriesCutoff& cut) {
  cplx num = tau_T(-2, Sector::zero, S2, u, t, q, cut).value;
  cplx den = tau_T(-2, Sector::half, S2, u, t, q, cut).value;
  if (std::abs(den) < 1e-8 * std::abs(num))
    throw DomainError("g_transcendent: too close to the divisor T_1/2 = 0");
  return -I_UNIT * cpow(t, 0.25) * num / den;
}

cplx g_transcendent_S(cplx S, cplx u, cplx t, const QBase& q, const SeriesCutoff& cut) {
  if (S == cplx(0.0)) throw DomainError("S must be nonzero");
  cplx num = TauSeries::from_S(-2, Sector::zero, S, u, q, cut).eval(t).value;
  cplx den = TauSeries::from_S(-2, Sector::half, S, u, q, cut).eval(t).value;
  if (std::abs(den) < 1e-8 * std::abs(num))
    throw DomainError("g_transcendent: too close to the divisor T_1/2 = 0");
  return -I_UNIT * cpow(t, 0.25) * num / den;
}

double bilinear_residual(BilinearForm form, Sector mu, cplx S2, cplx u, cplx t,
                         const QBase& q, const SeriesCutoff& cut) {
  const int k = form == BilinearForm::km2 ? -2 : 0;
  const Sector other = mu == Sector::zero ? Sector::half : Sector::zero;
  TauSeries A(k, mu, S2, u, q, cut), B(k, other, S2, u, q, cut);
  const cplx qv = q.value();
  cplx Tp = A.eval(qv * t).value, Tm = A.eval(t / qv).value, T0 = A.eval(t).value;
  cplx Th = B.eval(t).value;
  cplx lhs = Tp * Tm;
  if (form == BilinearForm::km2) lhs *= 1.0 - t;
  cplx rhs = T0 * T0 - std::sqrt(t) * Th * Th;
  return std::abs(lhs - rhs) / std::abs(T0 * T0);
}

double beta_ratio_residual(cplx S2, cplx u, cplx t, const QBase& q, const SeriesCutoff& cut,
                           cplx g_scale) {
  const cplx qv = q.value();
  TauSeries T0(-2, Sector::zero, S2, u, q, cut), Th(-2, Sector::half, S2, u, q, cut);
  const cplx sigma = sigma_of_u(u, q);
  auto tau = [&](cplx s) { return T0.eval(s).value * tau_norm(sigma, s, q); };
  cplx t0 = tau(t), t1 = tau(qv * t), t2 = tau(qv * qv * t);
  cplx beta_t = t1 / t0, beta_qt = t2 / t1;
  cplx qt = qv * t;
  cplx g = -I_UNIT * cpow(qt, 0.25) * T0.eval(qt).value / Th.eval(qt).value * g_scale;
  cplx pred = (1.0 + qt / (g * g)) / (1.0 - qt);
  return std::abs(beta_qt / beta_t - pred);
}

}  // namespace qtau
