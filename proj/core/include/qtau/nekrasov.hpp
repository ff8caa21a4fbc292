#pragma once

#include <string>
#include <vector>

#include "qtau/common.hpp"
#include "qtau/maya.hpp"
#include "qtau/qlinsys.hpp"
#include "qtau/qspecial.hpp"

namespace qtau {

// Series truncation. In adaptive mode max_boxes doubles (capped at 24) until two
// successive values differ by less than rel_tol.
struct SeriesCutoff {
  int max_boxes = 10;
  int max_Q = 4;
  double rel_tol = 1e-10;
  bool adaptive = false;
};

struct TauValue {
  cplx value{};
  double est_error = 0.0;  // |last increment| / |value|
  SeriesCutoff cutoff_used{};
  int modes = 0;    // determinant pipelines
  int samples = 0;  // FFT pipeline
};

enum class Sector { zero, half };  // Q in Z or Q in 1/2 + Z

inline double sector_shift(Sector mu) { return mu == Sector::zero ? 0.0 : 0.5; }

// sigma = log u / log q (principal branch).
cplx sigma_of_u(cplx u, const QBase& q);

// Instanton coefficients c_N = sum_{|Y+|+|Y-|=N} q^{k nu (|Y+|-|Y-|)} q^{k(T+ + T-)} Z_vec
// for N = 0..max_boxes.
std::vector<cplx> instanton_coeffs(int k, cplx nu, const QBase& q, int max_boxes);

// Z^{[k]}(q^nu; t, q) = t^{nu^2} / prod_eps (q^{1+2 eps nu};q,q) * sum_N c_N t^N.
cplx z_inst(int k, cplx nu, cplx t, const QBase& q, const SeriesCutoff& cut = {});

// Precomputed Fourier series sum_Q (S^2)^Q Z^{[k]}(u q^Q; t, q) that can be
// evaluated at many t.
class TauSeries {
 public:
  TauSeries(int k, Sector mu, cplx S2, cplx u, const QBase& q, const SeriesCutoff& cut);
  // Explicit S: weights S^{2Q} with 2Q an integer, no branch choice.
  static TauSeries from_S(int k, Sector mu, cplx S, cplx u, const QBase& q,
                          const SeriesCutoff& cut);

  // Value plus est_error from the outermost box shell and charge shell.
  TauValue eval(cplx t) const;
  int k() const { return k_; }

 private:
  struct Shell {
    double Q;
    cplx nu;
    cplx weight;  // (S^2)^Q / prod_eps (q^{1+2 eps nu};q,q)
    std::vector<cplx> coeffs;
  };
  TauSeries(int k, Sector mu, cplx S2, cplx S, cplx u, const QBase& q, const SeriesCutoff& cut);

  int k_;
  SeriesCutoff cut_;
  std::vector<Shell> shells_;
};

// T^{[k]}_mu(S^2, u; t, q); half-odd powers of S2 use the principal branch.
TauValue tau_T(int k, Sector mu, cplx S2, cplx u, cplx t, const QBase& q,
               const SeriesCutoff& cut = {});

// tau(t) = t^{-sigma^2} prod_eps (q^{1+2 eps sigma};q,q) T_0^{[k]}(S^2, u; t, q); k = -2
// is the Widom-normalized tau.
TauValue tau_series_k(const MonodromyInput& m, cplx t, int k, const SeriesCutoff& cut = {});
TauValue tau_widom_series(const MonodromyInput& m, cplx t, const SeriesCutoff& cut = {});

// T_0^{[-2]} = q^{-sigma^2} (qt)^{sigma^2} / prod_eps (q^{1+2 eps sigma};q,q) * tau.
cplx T0_from_tau(cplx tau, cplx sigma, cplx t, const QBase& q);
cplx tau_from_T0(cplx T0, cplx sigma, cplx t, const QBase& q);
// T_ren = (s0/s_inf) (qt)^{sigma^2} (qt;q,q) tau.
cplx T_ren_from_tau(cplx tau, const MonodromyInput& m, cplx t);

// g(t) = -i t^{1/4} T_0^{[-2]}(t) / T_{1/2}^{[-2]}(t).
cplx g_transcendent(cplx S2, cplx u, cplx t, const QBase& q, const SeriesCutoff& cut = {});
// Same with the half-sector weights S^{2Q} taken from S itself.
cplx g_transcendent_S(cplx S, cplx u, cplx t, const QBase& q, const SeriesCutoff& cut = {});

enum class BilinearForm { k0, km2 };

// km2: |(1-t) T(qt) T(t/q) - T(t)^2 + sqrt(t) T_{1/2-mu}(t)^2| / |T(t)^2| with k = -2.
// k0: the same without (1-t), with k = 0.
double bilinear_residual(BilinearForm form, Sector mu, cplx S2, cplx u, cplx t,
                         const QBase& q, const SeriesCutoff& cut = {});

// |beta(qt)/beta(t) - (1 + qt/g(qt)^2)/(1 - qt)| with beta(t) = tau(qt)/tau(t).
// g_scale multiplies g(qt) (negative control).
double beta_ratio_residual(cplx S2, cplx u, cplx t, const QBase& q,
                           const SeriesCutoff& cut = {}, cplx g_scale = 1.0);

}  // namespace qtau
