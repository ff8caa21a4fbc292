#include "qtau/maya.hpp"
#include "qtau/qspecial.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <set>
#include <sstream>

namespace qtau {

Partition::Partition(std::vector<int> r) : rows(std::move(r)) {
  while (!rows.empty() && rows.back() == 0) rows.pop_back();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] <= 0 || (i > 0 && rows[i] > rows[i - 1]))
      throw DomainError("Partition rows must be positive and weakly decreasing");
  }
}

int Partition::size() const {
  int s = 0;
  for (int r : rows) s += r;
  return s;
}

int Partition::col(int x) const {
  if (x < 1) return 0;
  int c = 0;
  for (int r : rows) {
    if (r >= x) ++c;
    else break;
  }
  return c;
}

Partition Partition::transpose() const {
  Partition t;
  int w = rows.empty() ? 0 : rows[0];
  t.rows.resize(w);
  for (int x = 1; x <= w; ++x) t.rows[x - 1] = col(x);
  return t;
}

int arm(const Partition& Y, int x, int y) { return Y.row(y) - x; }
int leg(const Partition& Y, int x, int y) { return Y.col(x) - y; }

int size_N(const Partition& Y) { return Y.size(); }

int content_T(const Partition& Y) {
  int s = 0;
  for (int y = 1; y <= Y.length(); ++y)
    for (int x = 1; x <= Y.row(y); ++x) s += x - y;
  return s;
}

namespace {

void gen_partitions(int n, int maxp, std::vector<int>& cur, std::vector<Partition>& out) {
  if (n == 0) {
    Partition p;
    p.rows = cur;
    out.push_back(std::move(p));
    return;
  }
  for (int k = std::min(n, maxp); k >= 1; --k) {
    cur.push_back(k);
    gen_partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

const std::vector<Partition>& partitions_of(int n) {
  static std::mutex mu;
  static std::deque<std::vector<Partition>> cache;  // stable references
  if (n < 0) throw DomainError("partitions_of: negative n");
  std::lock_guard<std::mutex> lock(mu);
  while (int(cache.size()) <= n) {
    int k = int(cache.size());
    std::vector<Partition> out;
    std::vector<int> cur;
    gen_partitions(k, k, cur, out);
    cache.push_back(std::move(out));
  }
  return cache[n];
}

HalfInt HalfInt::from_twice(int tw) {
  if (tw % 2 == 0) throw DomainError("HalfInt: twice-value must be odd");
  return HalfInt{tw};
}

int MayaDiagram2::charge(int color) const {
  int c = 0;
  for (const auto& e : I) c += e.color == color;
  for (const auto& e : J) c -= e.color == color;
  return c;
}

bool MayaDiagram2::valid() const {
  for (const auto& e : I)
    if (e.k.twice <= 0 || e.k.twice % 2 == 0 || (e.color != 1 && e.color != -1)) return false;
  for (const auto& e : J)
    if (e.k.twice >= 0 || e.k.twice % 2 == 0 || (e.color != 1 && e.color != -1)) return false;
  return I.size() == J.size() && charge(1) + charge(-1) == 0;
}

Frobenius1 frobenius_of(const Partition& Y, int Q) {
  int L = Y.length() + std::abs(Q) + 2;
  std::set<int> occ;  // twice-values
  for (int i = 1; i <= L; ++i) occ.insert(2 * Y.row(i) - 2 * i + 2 * Q + 1);
  int lowest = 2 * Y.row(L) - 2 * L + 2 * Q + 1;
  Frobenius1 f;
  for (auto it = occ.rbegin(); it != occ.rend() && *it > 0; ++it) f.m2.push_back(*it);
  std::sort(f.m2.begin(), f.m2.end());
  for (int h = -1; h > lowest; h -= 2)
    if (!occ.count(h)) f.n2.push_back(-h);
  std::sort(f.n2.begin(), f.n2.end());
  return f;
}

Partition young_of(const Frobenius1& f, int Q) {
  if (int(f.m2.size()) - int(f.n2.size()) != Q)
    throw DomainError("young_of: charge does not match particle/hole count");
  int maxn = f.n2.empty() ? 1 : *std::max_element(f.n2.begin(), f.n2.end());
  int depth = maxn + 2 * int(f.m2.size()) + 4;  // twice-units below zero to include
  std::set<int> holes;
  for (int n : f.n2) holes.insert(-n);
  std::vector<int> occ(f.m2.begin(), f.m2.end());
  for (int h = -1; h >= -depth; h -= 2)
    if (!holes.count(h)) occ.push_back(h);
  std::sort(occ.rbegin(), occ.rend());
  std::vector<int> rows;
  for (std::size_t i = 0; i < occ.size(); ++i) {
    int tw = occ[i] + 2 * int(i + 1) - 2 * Q - 1;  // 2 * lambda_i
    if (tw < 0 || tw % 2 != 0) throw DomainError("young_of: inconsistent Maya data");
    if (tw == 0) break;
    rows.push_back(tw / 2);
  }
  return Partition(rows);
}

ChargedPair maya_to_young(const MayaDiagram2& M) {
  if (!M.valid()) throw DomainError("maya_to_young: invalid diagram");
  ChargedPair p;
  p.Q = M.charge(1);
  for (int color : {1, -1}) {
    Frobenius1 f;
    for (const auto& e : M.I)
      if (e.color == color) f.m2.push_back(e.k.twice);
    for (const auto& e : M.J)
      if (e.color == color) f.n2.push_back(-e.k.twice);
    std::sort(f.m2.begin(), f.m2.end());
    std::sort(f.n2.begin(), f.n2.end());
    Partition Y = young_of(f, color == 1 ? p.Q : -p.Q);
    (color == 1 ? p.Y_plus : p.Y_minus) = Y;
  }
  return p;
}

MayaDiagram2 young_to_maya(const ChargedPair& p) {
  MayaDiagram2 M;
  for (int color : {1, -1}) {
    Frobenius1 f = frobenius_of(color == 1 ? p.Y_plus : p.Y_minus, color == 1 ? p.Q : -p.Q);
    for (int m : f.m2) M.I.push_back({HalfInt{m}, color});
    for (int n : f.n2) M.J.push_back({HalfInt{-n}, color});
  }
  std::sort(M.I.begin(), M.I.end());
  std::sort(M.J.begin(), M.J.end());
  return M;
}

namespace {

std::vector<std::vector<int>> subsets_twice(int max_twice) {
  std::vector<int> vals;
  for (int tw = 1; tw <= max_twice; tw += 2) vals.push_back(tw);
  std::vector<std::vector<int>> out;
  int K = int(vals.size());
  for (int mask = 0; mask < (1 << K); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < K; ++i)
      if (mask & (1 << i)) s.push_back(vals[i]);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

void for_each_frobenius1(int max_twice, const std::function<void(const Frobenius1&)>& fn) {
  auto subs = subsets_twice(max_twice);
  for (const auto& m : subs)
    for (const auto& n : subs) fn(Frobenius1{m, n});
}

std::vector<MayaDiagram2> enumerate_maya2(int max_twice) {
  auto subs = subsets_twice(max_twice);
  std::map<int, std::vector<std::pair<int, int>>> by_charge;  // charge -> (m index, n index)
  for (int a = 0; a < int(subs.size()); ++a)
    for (int b = 0; b < int(subs.size()); ++b)
      by_charge[int(subs[a].size()) - int(subs[b].size())].push_back({a, b});
  std::vector<MayaDiagram2> out;
  for (const auto& [Q, plus] : by_charge) {
    auto it = by_charge.find(-Q);
    if (it == by_charge.end()) continue;
    for (const auto& [pm, pn] : plus) {
      for (const auto& [mm, mn] : it->second) {
        MayaDiagram2 M;
        for (int v : subs[pm]) M.I.push_back({HalfInt{v}, 1});
        for (int v : subs[mm]) M.I.push_back({HalfInt{v}, -1});
        for (int v : subs[pn]) M.J.push_back({HalfInt{-v}, 1});
        for (int v : subs[mn]) M.J.push_back({HalfInt{-v}, -1});
        std::sort(M.I.begin(), M.I.end());
        std::sort(M.J.begin(), M.J.end());
        out.push_back(std::move(M));
      }
    }
  }
  return out;
}

FormalCharacter FormalCharacter::monomial(Key k, long long c) {
  FormalCharacter f;
  f.add(k, c);
  return f;
}

void FormalCharacter::add(const Key& k, long long c) {
  if (c == 0) return;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

FormalCharacter FormalCharacter::operator+(const FormalCharacter& o) const {
  FormalCharacter r = *this;
  for (const auto& [k, c] : o.terms_) r.add(k, c);
  return r;
}

FormalCharacter FormalCharacter::operator-(const FormalCharacter& o) const {
  FormalCharacter r = *this;
  for (const auto& [k, c] : o.terms_) r.add(k, -c);
  return r;
}

FormalCharacter FormalCharacter::operator*(const FormalCharacter& o) const {
  FormalCharacter r;
  for (const auto& [k1, c1] : terms_)
    for (const auto& [k2, c2] : o.terms_)
      r.add({k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2], k1[3] + k2[3]}, c1 * c2);
  return r;
}

FormalCharacter FormalCharacter::scaled(long long c) const {
  FormalCharacter r;
  for (const auto& [k, v] : terms_) r.add(k, v * c);
  return r;
}

FormalCharacter FormalCharacter::conj() const {
  FormalCharacter r;
  for (const auto& [k, v] : terms_) r.add({-k[0], -k[1], -k[2], -k[3]}, v);
  return r;
}

FormalCharacter FormalCharacter::swap_eps() const {
  FormalCharacter r;
  for (const auto& [k, v] : terms_) r.add({k[1], k[0], k[2], k[3]}, v);
  return r;
}

namespace {

using Key = FormalCharacter::Key;

// e^{tau(a_alpha - a_beta)} as a key fragment
Key weight_diff(int alpha, int beta) {
  Key k{0, 0, 0, 0};
  k[alpha == 1 ? 2 : 3] += 1;
  k[beta == 1 ? 2 : 3] -= 1;
  return k;
}

void build_VW(const Partition& Yp, const Partition& Ym, FormalCharacter& V, FormalCharacter& W) {
  for (int alpha : {1, -1}) {
    const Partition& Y = alpha == 1 ? Yp : Ym;
    Key a{0, 0, alpha == 1 ? -1 : 0, alpha == 1 ? 0 : -1};
    W.add(a, 1);
    for (int y = 1; y <= Y.length(); ++y)
      for (int x = 1; x <= Y.row(y); ++x) V.add({1 - x, 1 - y, a[2], a[3]}, 1);
  }
}

FormalCharacter nek_common(const Partition& Yp, const Partition& Ym, bool literal) {
  FormalCharacter V, W;
  build_VW(Yp, Ym, V, W);
  FormalCharacter P;
  P.add({0, 0, 0, 0}, 1);
  P.add({1, 0, 0, 0}, -1);
  P.add({0, 1, 0, 0}, -1);
  P.add({1, 1, 0, 0}, 1);
  FormalCharacter wv = W * V.conj();
  if (!literal) wv = wv * FormalCharacter::monomial({1, 1, 0, 0});
  return (P * V * V.conj()).scaled(-1) + V * W.conj() + wv;
}

FormalCharacter ny_common(const Partition& Yp, const Partition& Ym, bool literal) {
  FormalCharacter R;
  for (int alpha : {1, -1}) {
    for (int beta : {1, -1}) {
      const Partition& Ya = alpha == 1 ? Yp : Ym;
      const Partition& Yb = beta == 1 ? Yp : Ym;
      Key w = weight_diff(alpha, beta);
      for (int y = 1; y <= Ya.length(); ++y) {
        for (int x = 1; x <= Ya.row(y); ++x) {
          int A = arm(Ya, x, y) + 1, L = -leg(Yb, x, y);
          if (literal) R.add({L, A, w[2], w[3]}, 1);
          else R.add({A, L, w[2], w[3]}, 1);
        }
      }
      for (int y = 1; y <= Yb.length(); ++y) {
        for (int x = 1; x <= Yb.row(y); ++x) {
          int A = -arm(Yb, x, y), L = leg(Ya, x, y) + 1;
          if (literal) R.add({L, A, w[2], w[3]}, 1);
          else R.add({A, L, w[2], w[3]}, 1);
        }
      }
    }
  }
  return R;
}

}  // namespace

FormalCharacter char_nek(const Partition& Yp, const Partition& Ym) {
  return nek_common(Yp, Ym, false);
}
FormalCharacter char_nek_literal(const Partition& Yp, const Partition& Ym) {
  return nek_common(Yp, Ym, true);
}
FormalCharacter char_ny(const Partition& Yp, const Partition& Ym) {
  return ny_common(Yp, Ym, false);
}
FormalCharacter char_ny_literal(const Partition& Yp, const Partition& Ym) {
  return ny_common(Yp, Ym, true);
}

cplx pe_minus_eval(const FormalCharacter& chi, cplx eps1, cplx eps2, cplx a_plus,
                   cplx a_minus, cplx q) {
  QBase qb(q);
  cplx r = 1.0;
  for (const auto& [k, c] : chi.terms()) {
    cplx w = double(k[0]) * eps1 + double(k[1]) * eps2 + double(k[2]) * a_plus +
             double(k[3]) * a_minus;
    cplx x = qb.pow(w);
    qb.guard(x, "pe_minus_eval");
    r *= std::pow(1.0 - x, double(-c));
  }
  return r;
}

VFrobeniusCheck char_V_frobenius(const Partition& Y, int Q) {
  // Exponents are powers of x = e^{tau/2}.
  VFrobeniusCheck out;
  auto add = [](std::map<int, long long>& p, int e, long long c) {
    p[e] += c;
    if (p[e] == 0) p.erase(e);
  };
  for (int y = 1; y <= Y.length(); ++y) {
    for (int x = 1; x <= Y.row(y); ++x) {
      int e = -2 * Q + 2 * (y - x);
      add(out.lhs, e + 2, 1);
      add(out.lhs, e, -2);
      add(out.lhs, e - 2, 1);
    }
  }
  Frobenius1 f = frobenius_of(Y, Q);
  for (int n2 : f.n2) {
    add(out.rhs, n2 + 1, 1);
    add(out.rhs, n2 - 1, -1);
  }
  for (int m2 : f.m2) {
    add(out.rhs, -m2 + 1, -1);
    add(out.rhs, -m2 - 1, 1);
  }
  add(out.rhs, 0, 1);
  add(out.rhs, -2 * Q, -1);
  out.equal = out.lhs == out.rhs;
  return out;
}

cplx z_vec(cplx nu_plus, cplx nu_minus, const Partition& Yp, const Partition& Ym, cplx q) {
  if (Yp.empty() && Ym.empty()) return 1.0;
  QBase qb(q);
  const Partition* Y[2] = {&Yp, &Ym};
  const cplx nu[2] = {nu_plus, nu_minus};
  Partition T[2] = {Yp.transpose(), Ym.transpose()};
  int span = 2 * (Yp.size() + Ym.size()) + 4;
  std::vector<cplx> qpow(2 * span + 1);
  for (int n = -span; n <= span; ++n) qpow[n + span] = qb.powi(n);
  auto rowlen = [](const Partition& P, int i) { return i >= 1 && i <= P.length() ? P.rows[i - 1] : 0; };
  cplx r = 1.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const cplx e = nu[b] - nu[a];
      const cplx qe = qb.pow(e);
      const Partition& Ya = *Y[a];
      const Partition& Yb = *Y[b];
      auto factor = [&](int n) {
        cplx x = qe * qpow[n + span];
        if (std::abs(1.0 - x) <= qb.resonance_tol()) {
          std::ostringstream os;
          os << "z_vec: pole at exponent " << e << " + " << n;
          throw ResonanceError(os.str());
        }
        r /= 1.0 - x;
      };
      for (int y = 1; y <= Ya.length(); ++y) {
        for (int x = 1; x <= Ya.rows[y - 1]; ++x) {
          int A = Ya.rows[y - 1] - x, L = rowlen(T[b], x) - y;
          factor(A + L + 1);
        }
      }
      for (int y = 1; y <= Yb.length(); ++y) {
        for (int x = 1; x <= Yb.rows[y - 1]; ++x) {
          int A = Yb.rows[y - 1] - x, L = rowlen(T[a], x) - y;
          factor(-A - L - 1);
        }
      }
    }
  }
  return r;
}

cplx z_zero(cplx sigma, cplx Q, cplx q) {
  QBase qb(q);
  cplx r = 1.0;
  for (int eps : {1, -1}) {
    cplx s = double(eps) * sigma, qq = double(eps) * Q;
    r *= qpoch2_inf(qb.pow(1.0 + 2.0 * s + 2.0 * qq), qb, qb) /
         qpoch2_inf(qb.pow(1.0 + 2.0 * s), qb, qb);
  }
  return r;
}

cplx z1_bar_inv(cplx S, cplx sigma, int Q, int Np, int Nm, int Tp, int Tm, cplx t, cplx q) {
  QBase qb(q);
  cplx nu = sigma + double(Q);
  cplx tpow = double(Np + Nm) + nu * nu - sigma * sigma;
  return std::pow(S, 2 * Q) * cpow(t, tpow) * qb.pow(2.0 * nu * double(Nm - Np)) *
         qb.powi(-2 * Tm - 2 * Tp);
}

cplx gf_bar(cplx S, cplx sigma, HalfInt k, int color, cplx t, cplx q) {
  QBase qb(q);
  double a = color;
  if (k.twice > 0) {
    double m = k.value();
    return -I_UNIT * std::pow(S, color) * cpow(t, 0.25 + m + a * sigma) *
           qb.pow(0.25 - m * m - 2.0 * m * a * sigma);
  }
  double n = -k.value();
  return I_UNIT * std::pow(S, -color) * cpow(t, -0.25 + n - a * sigma) *
         qb.pow(-0.25 + n * n - 2.0 * n * a * sigma);
}

}  // namespace qtau
