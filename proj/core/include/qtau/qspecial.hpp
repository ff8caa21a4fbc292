#pragma once

#include "qtau/common.hpp"

namespace qtau {

// (z;q)_n; negative n gives 1/(z q^n;q)_{-n}.
cplx qpoch_finite(cplx z, const QBase& q, int n);

// (z;q)_inf. Direct product while |z q^i| >= 1/2, log-sum for the tail.
cplx qpoch_inf(cplx z, const QBase& q, const TruncationPolicy& pol = {});

// (z;q1,q2)_inf via the exponential sum after reducing |z| below 1/2.
cplx qpoch2_inf(cplx z, const QBase& q1, const QBase& q2,
                const TruncationPolicy& pol = {});

// theta(z;q) = (z;q)(q/z;q).
cplx theta(cplx z, const QBase& q, const TruncationPolicy& pol = {});
cplx theta1(cplx z, const QBase& q, const TruncationPolicy& pol = {});
// sum_{n>=0} (-1)^n q^{n(n-1)/2} u^n
cplx theta_partial(cplx u, const QBase& q, const TruncationPolicy& pol = {});
// z d/dz log theta(z;q)
cplx theta_log_zderiv(cplx z, const QBase& q, const TruncationPolicy& pol = {});

// j_k(u,z) = sum_n q^{k n(n-1)/2} u^{k n/2} z^n / ((u;q)_n (q;q)_n), k in {0,1,2}.
cplx qbessel_j(int k, cplx u, cplx z, const QBase& q,
               const TruncationPolicy& pol = {});

// Gamma(z;p,q) = (z;p,q)/(pq/z;p,q); |q| > 1 (or |p| > 1) by reflection.
cplx elliptic_gamma(cplx z, cplx p, cplx q, const TruncationPolicy& pol = {});

// gamma(z;q) = sum_{n>=1} (z^n - (q/z)^n)/(n^2 (1-q^n)) on |q| < |z| < 1.
cplx elliptic_dilog(cplx z, const QBase& q, const TruncationPolicy& pol = {});

// Continuation of elliptic_dilog to any z != 0 through
// gamma(q w) = gamma(w) + pi^2/6 + (log w + i pi)^2 / 2.
cplx elliptic_dilog_cont(cplx z, const QBase& q, const TruncationPolicy& pol = {});

}  // namespace qtau
