#pragma once

#include <functional>

#include <Eigen/Dense>

#include "qtau/maya.hpp"
#include "qtau/nekrasov.hpp"
#include "qtau/qlinsys.hpp"

namespace qtau {

using MatX = Eigen::MatrixXcd;

struct ModeIndex {
  HalfInt k;  // positive
  int color;  // +1 or -1
};

// Position of (m, alpha) in the kernel matrices: 2(m - 1/2) + (alpha == + ? 0 : 1).
inline int mode_position(ModeIndex i) { return (i.k.twice - 1) + (i.color == 1 ? 0 : 1); }

enum class Coeff { fa, ga, gd, fd };

// Kernel coefficient at the d-variant label k2 (2 is the base form). k1 != 0
// rescales the a-side with the mirrored factor; experimental.
cplx kernel_coeff(const MonodromyInput& m, cplx t, ModeIndex idx, Coeff which, int k2 = 2,
                  int k1 = 0);

struct KernelMatrices {
  MatX A;  // rows (m, alpha), columns (n, beta)
  MatX D;  // rows (n, beta), columns (m, alpha)
  int modes = 0;
  int k2 = 2;
};

KernelMatrices build_kernel(const MonodromyInput& m, cplx t, int modes, int k2 = 2, int k1 = 0);

// det(I - A D). Non-adaptive: est_error compares modes and modes - 1. Adaptive:
// doubles modes until the relative change is below rel_tol.
TauValue det_fredholm(const MonodromyInput& m, cplx t, int k2, int modes, bool adaptive = false,
                      double rel_tol = 1e-12, int k1 = 0);

// Closed-form principal minor of det(I - A D) attached to a Maya diagram.
cplx minor_term(const MonodromyInput& m, cplx t, const MayaDiagram2& M, int k2 = 2);

// Sum of minor_term over all diagrams with |index| <= max_twice/2; max_twice <= 9.
cplx minor_expansion_oracle(const MonodromyInput& m, cplx t, int k2, int max_twice);

// Z_vec Z_0^{-1} Zbar_1^{-1} for the image of M; k = -k2 weights.
cplx nekrasov_term(const MonodromyInput& m, cplx t, const MayaDiagram2& M, int k2 = 2);

// Relative difference between minor_term and nekrasov_term.
double term_vs_nekrasov(const MonodromyInput& m, cplx t, const MayaDiagram2& M);

struct WidomOptions {
  int modes = 24;
  int samples = 256;
  double radius = 0.0;      // 0 selects sqrt(|q t|)
  bool same_window = false;  // truncate both Toeplitz factors to modes x modes
  double alias_tol = 1e-12;
};

// Block Fourier coefficients c_k of a 2x2 symbol on |z| = R, k in (-samples/2, samples/2).
struct FourierSymbol {
  int samples = 0;
  double radius = 0.0;
  std::vector<Mat2> scaled;  // FFT output / samples, i.e. c_k R^k; index k mod samples

  Mat2 coeff(int k) const;
  // Relative mass of samples/4 <= |k| < samples/2 in the scaled coefficients.
  double tail_mass() const;
};

FourierSymbol fourier_symbol(const std::function<Mat2(cplx)>& J, int samples, double radius);

// det(T(J^{-1}) T(J)) on modes 0..modes-1, J^{-1} taken pointwise.
TauValue widom_det_from_symbol(const std::function<Mat2(cplx)>& J, const WidomOptions& opt);

TauValue widom_fft_det(const MonodromyInput& m, cplx t, const WidomOptions& opt = {});

}  // namespace qtau
