#include "qtau/fredholm.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

namespace qtau {

cplx kernel_coeff(const MonodromyInput& mi, cplx t, ModeIndex idx, Coeff which, int k2, int k1) {
  if (idx.k.twice <= 0 || idx.k.twice % 2 == 0) throw DomainError("mode index must be in 1/2 + N");
  if (idx.color != 1 && idx.color != -1) throw DomainError("color must be +1 or -1");
  const QBase& q = mi.q;
  const cplx s = mi.sigma, s0 = mi.s0, si = mi.sinf;
  const double m = idx.k.value();
  const int n = (idx.k.twice - 1) / 2;
  const cplx qt = q.value() * t;
  const cplx qq = qpoch_finite(q.value(), q, n);
  const cplx p_plus = qpoch_finite(q.pow(2.0 * s), q, n + 1) * qq;       // (q^{2s})_{n+1}(q)_n
  const cplx p_minus = qpoch_finite(q.pow(1.0 - 2.0 * s), q, n) * qq;    // (q^{1-2s})_n(q)_n
  if (std::abs(p_plus) <= q.resonance_tol() || std::abs(p_minus) <= q.resonance_tol())
    throw ResonanceError("kernel_coeff: vanishing Pochhammer denominator");
  const bool plus = idx.color == 1;
  const double a = idx.color;
  cplx v;
  switch (which) {
    case Coeff::fa:
      v = plus ? -q.pow(-0.25 + s) * si / p_plus : q.pow(0.25) / si / p_minus;
      if (k1 != 0) v *= q.pow(double(k1) * m * m / 2.0 - double(k1) * m * a * s);
      break;
    case Coeff::ga:
      v = plus ? -(1.0 / si) * q.pow(m * m - 2.0 * m * s) / p_minus
               : -si * q.pow(m * m + (2.0 * m + 1.0) * s - 0.5) / p_plus;
      if (k1 != 0) v *= q.pow(-double(k1) * m * m / 2.0 - double(k1) * m * a * s);
      break;
    case Coeff::gd:
      v = plus ? s0 * cpow(qt, m - s - 0.25) * q.pow(m * m - m - 2.0 * m * s + s) / p_minus
               : (1.0 / s0) * cpow(qt, m + s - 0.25) * q.pow(m * m - m + 2.0 * m * s) / p_plus;
      if (k2 != 2) {
        const double ks = k2 - 2;
        v *= q.pow(ks * m * m / 2.0 - ks * m * a * s);
      }
      break;
    case Coeff::fd:
      v = plus ? (1.0 / s0) * cpow(qt, m + s + 0.25) * q.pow(-0.25 - m) / p_plus
               : -s0 * cpow(qt, m - s + 0.25) * q.pow(s - m - 0.25) / p_minus;
      if (k2 != 2) {
        const double ks = k2 - 2;
        v *= q.pow(-ks * m * m / 2.0 - ks * m * a * s);
      }
      break;
  }
  return v;
}

KernelMatrices build_kernel(const MonodromyInput& mi, cplx t, int modes, int k2, int k1) {
  if (modes < 1) throw DomainError("modes must be positive");
  const int dim = 2 * modes;
  std::vector<ModeIndex> idx(dim);
  for (int i = 0; i < modes; ++i)
    for (int c : {1, -1}) {
      ModeIndex mi_{HalfInt{2 * i + 1}, c};
      idx[mode_position(mi_)] = mi_;
    }
  std::vector<cplx> fa(dim), ga(dim), gd(dim), fd(dim);
  for (int i = 0; i < dim; ++i) {
    fa[i] = kernel_coeff(mi, t, idx[i], Coeff::fa, k2, k1);
    ga[i] = kernel_coeff(mi, t, idx[i], Coeff::ga, k2, k1);
    gd[i] = kernel_coeff(mi, t, idx[i], Coeff::gd, k2, k1);
    fd[i] = kernel_coeff(mi, t, idx[i], Coeff::fd, k2, k1);
  }
  KernelMatrices K;
  K.modes = modes;
  K.k2 = k2;
  K.A.resize(dim, dim);
  K.D.resize(dim, dim);
  const QBase& q = mi.q;
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      // A: row (m, alpha) = idx[r], column (n, beta) = idx[c]
      const double m = idx[r].k.value(), n = idx[c].k.value();
      const double dab = idx[r].color - idx[c].color;
      cplx ea = q.pow(m + n + mi.sigma * dab);
      q.guard(ea, "A denominator");
      K.A(r, c) = fa[r] * ga[c] / (1.0 - ea);
      // D: row (n, beta) = idx[r], column (m, alpha) = idx[c]
      const double dd = idx[c].color - idx[r].color;
      cplx ed = q.pow(-(m + n) - mi.sigma * dd);
      q.guard(ed, "D denominator");
      K.D(r, c) = gd[r] * fd[c] / (1.0 - ed);
    }
  }
  return K;
}

namespace {

cplx det_at(const MonodromyInput& mi, cplx t, int k2, int modes, int k1) {
  KernelMatrices K = build_kernel(mi, t, modes, k2, k1);
  MatX M = MatX::Identity(2 * modes, 2 * modes) - K.A * K.D;
  return M.partialPivLu().determinant();
}

}  // namespace

TauValue det_fredholm(const MonodromyInput& mi, cplx t, int k2, int modes, bool adaptive,
                      double rel_tol, int k1) {
  mi.check_nonresonant(modes);
  TauValue r;
  r.modes = modes;
  if (!adaptive) {
    r.value = det_at(mi, t, k2, modes, k1);
    r.est_error = modes > 1 ? rel_diff(r.value, det_at(mi, t, k2, modes - 1, k1)) : 1.0;
    return r;
  }
  cplx prev = det_at(mi, t, k2, modes, k1);
  int n = modes;
  for (int iter = 0; iter < 6; ++iter) {
    n *= 2;
    cplx cur = det_at(mi, t, k2, n, k1);
    double d = rel_diff(cur, prev);
    if (d < rel_tol) {
      r.value = cur;
      r.est_error = d;
      r.modes = n;
      return r;
    }
    prev = cur;
  }
  throw NonconvergenceError("det_fredholm: modes doubling did not converge");
}

namespace {

struct Entry {
  double k;  // signed index
  int color;
  cplx gf;
};

std::vector<Entry> diagram_entries(const MonodromyInput& mi, cplx t, const MayaDiagram2& M,
                                   int k2) {
  std::vector<Entry> e;
  for (const auto& p : M.I) {
    ModeIndex i{p.k, p.color};
    e.push_back({p.k.value(), p.color,
                 kernel_coeff(mi, t, i, Coeff::fa, k2) * kernel_coeff(mi, t, i, Coeff::fd, k2)});
  }
  for (const auto& h : M.J) {
    ModeIndex i{HalfInt{-h.k.twice}, h.color};
    e.push_back({h.k.value(), h.color,
                 -kernel_coeff(mi, t, i, Coeff::ga, k2) * kernel_coeff(mi, t, i, Coeff::gd, k2)});
  }
  return e;
}

}  // namespace

cplx minor_term(const MonodromyInput& mi, cplx t, const MayaDiagram2& M, int k2) {
  if (!M.valid()) throw DomainError("minor_term: invalid Maya diagram");
  auto e = diagram_entries(mi, t, M, k2);
  const QBase& q = mi.q;
  cplx r = 1.0;
  for (const auto& x : e) r *= x.gf;
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (i == j) continue;
      cplx f = 1.0 - q.pow(e[i].k - e[j].k + mi.sigma * double(e[i].color - e[j].color));
      if (std::abs(f) <= q.resonance_tol()) throw ResonanceError("minor_term: Cauchy factor");
      r = (e[i].k * e[j].k > 0) ? r * f : r / f;
    }
  }
  return r;
}

cplx minor_expansion_oracle(const MonodromyInput& mi, cplx t, int k2, int max_twice) {
  if (max_twice > 9) throw DomainError("minor_expansion_oracle: max index above 9/2");
  cplx s = 0.0;
  for (const auto& M : enumerate_maya2(max_twice)) s += minor_term(mi, t, M, k2);
  return s;
}

cplx nekrasov_term(const MonodromyInput& mi, cplx t, const MayaDiagram2& M, int k2) {
  ChargedPair p = maya_to_young(M);
  const QBase& q = mi.q;
  const cplx nu = mi.sigma + double(p.Q);
  const int k = -k2;
  const int Np = p.Y_plus.size(), Nm = p.Y_minus.size();
  const int Tp = content_T(p.Y_plus), Tm = content_T(p.Y_minus);
  cplx zv = z_vec(-nu, nu, p.Y_plus, p.Y_minus, q.value());
  cplx z0 = z_zero(mi.sigma, double(p.Q), q.value());
  if (k == -2) return zv / z0 * z1_bar_inv(mi.S, mi.sigma, p.Q, Np, Nm, Tp, Tm, t, q.value());
  cplx w = std::pow(mi.S, 2 * p.Q) * cpow(t, double(Np + Nm) + nu * nu - mi.sigma * mi.sigma) *
           q.pow(double(k) * nu * double(Np - Nm)) * q.powi(k * (Tp + Tm));
  return zv / z0 * w;
}

double term_vs_nekrasov(const MonodromyInput& mi, cplx t, const MayaDiagram2& M) {
  return rel_diff(minor_term(mi, t, M, 2), nekrasov_term(mi, t, M, 2));
}

Mat2 FourierSymbol::coeff(int k) const {
  if (2 * std::abs(k) >= samples) return Mat2::Zero();
  int idx = ((k % samples) + samples) % samples;
  return scaled[idx] / std::pow(radius, k);
}

double FourierSymbol::tail_mass() const {
  double tot = 0.0, tail = 0.0;
  for (int i = 0; i < samples; ++i) {
    int k = i <= samples / 2 ? i : i - samples;
    double a = scaled[i].cwiseAbs().sum();
    tot += a;
    if (4 * std::abs(k) >= samples) tail += a;
  }
  return tot == 0.0 ? 0.0 : tail / tot;
}

namespace {
std::mutex& fftw_plan_mutex() {
  static std::mutex mu;
  return mu;
}
}  // namespace

FourierSymbol fourier_symbol(const std::function<Mat2(cplx)>& J, int samples, double radius) {
  if (samples < 4 || (samples & (samples - 1)) != 0)
    throw DomainError("samples must be a power of two >= 4");
  if (!(radius > 0.0)) throw DomainError("radius must be positive");
  FourierSymbol F;
  F.samples = samples;
  F.radius = radius;
  std::vector<Mat2> vals(samples);
  for (int j = 0; j < samples; ++j) {
    double ang = 2.0 * std::numbers::pi * j / samples;
    vals[j] = J(std::polar(radius, ang));
  }
  fftw_complex* in = fftw_alloc_complex(samples);
  fftw_complex* out = fftw_alloc_complex(samples);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    plan = fftw_plan_dft_1d(samples, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  F.scaled.assign(samples, Mat2::Zero());
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int j = 0; j < samples; ++j) {
        in[j][0] = vals[j](a, b).real();
        in[j][1] = vals[j](a, b).imag();
      }
      fftw_execute(plan);
      for (int j = 0; j < samples; ++j) F.scaled[j](a, b) = cplx(out[j][0], out[j][1]) / double(samples);
    }
  }
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out);
  return F;
}

namespace {

MatX block_toeplitz(const FourierSymbol& F, int rows, int cols) {
  MatX T(2 * rows, 2 * cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) T.block<2, 2>(2 * i, 2 * j) = F.coeff(i - j);
  return T;
}

}  // namespace

TauValue widom_det_from_symbol(const std::function<Mat2(cplx)>& J, const WidomOptions& opt) {
  if (opt.modes < 1) throw DomainError("modes must be positive");
  if (opt.samples < 4 * opt.modes) throw DomainError("samples must be >= 4 * modes");
  FourierSymbol FJ = fourier_symbol(J, opt.samples, opt.radius);
  FourierSymbol FI = fourier_symbol([&](cplx z) { return Mat2(J(z).inverse()); }, opt.samples,
                                    opt.radius);
  double tail = std::max(FJ.tail_mass(), FI.tail_mass());
  if (tail >= opt.alias_tol)
    throw NonconvergenceError("widom: Fourier tail mass above aliasing guard");
  const int inner = opt.same_window ? opt.modes : opt.samples / 2 - opt.modes;
  auto det_with = [&](int n) {
    const int in = opt.same_window ? n : inner;
    MatX P = block_toeplitz(FI, n, in) * block_toeplitz(FJ, in, n);
    return cplx(P.partialPivLu().determinant());
  };
  TauValue r;
  r.modes = opt.modes;
  r.samples = opt.samples;
  r.value = det_with(opt.modes);
  r.est_error = opt.modes > 1 ? rel_diff(r.value, det_with(opt.modes - 1)) : 1.0;
  return r;
}

TauValue widom_fft_det(const MonodromyInput& mi, cplx t, const WidomOptions& opt) {
  WidomOptions o = opt;
  const double aqt = std::abs(mi.q.value() * t);
  if (o.radius == 0.0) o.radius = std::sqrt(aqt);
  if (!(o.radius > aqt && o.radius < 1.0)) throw DomainError("widom: need |qt| < R < 1");
  return widom_det_from_symbol([&](cplx z) { return jump_J(mi, t, z); }, o);
}

}  // namespace qtau
