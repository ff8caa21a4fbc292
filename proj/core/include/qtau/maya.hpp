#pragma once

#include <array>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "qtau/common.hpp"

namespace qtau {

// Young diagram; rows[y-1] is the length of row y (rows run along x).
struct Partition {
  std::vector<int> rows;

  Partition() = default;
  explicit Partition(std::vector<int> r);

  int size() const;
  int length() const { return int(rows.size()); }
  int row(int y) const { return y >= 1 && y <= length() ? rows[y - 1] : 0; }
  int col(int x) const;
  Partition transpose() const;
  bool empty() const { return rows.empty(); }
  bool operator==(const Partition&) const = default;
  auto operator<=>(const Partition&) const = default;
};

// a_Y(s) = row_y - x, l_Y(s) = col_x - y; negative outside Y.
int arm(const Partition& Y, int x, int y);
int leg(const Partition& Y, int x, int y);

int size_N(const Partition& Y);
// sum over boxes of x - y
int content_T(const Partition& Y);

// Partitions of n in lexicographically decreasing order of rows.
const std::vector<Partition>& partitions_of(int n);

struct HalfInt {
  int twice;  // odd

  static HalfInt from_twice(int tw);
  double value() const { return 0.5 * twice; }
  bool operator==(const HalfInt&) const = default;
  auto operator<=>(const HalfInt&) const = default;
};

struct MayaEntry {
  HalfInt k;
  int color;  // +1 or -1
  bool operator==(const MayaEntry&) const = default;
  auto operator<=>(const MayaEntry&) const = default;
};

// I holds positive indices (particles), J negative ones (holes); both sorted.
struct MayaDiagram2 {
  std::vector<MayaEntry> I;
  std::vector<MayaEntry> J;

  int charge(int color) const;
  bool valid() const;
  bool operator==(const MayaDiagram2&) const = default;
};

struct ChargedPair {
  Partition Y_plus;
  Partition Y_minus;
  int Q = 0;
  bool operator==(const ChargedPair&) const = default;
};

// One color of charged Frobenius data: m_i > 0 particles, n_i > 0 holes at -n_i,
// stored as twice-values.
struct Frobenius1 {
  std::vector<int> m2;
  std::vector<int> n2;
};

Frobenius1 frobenius_of(const Partition& Y, int Q);
Partition young_of(const Frobenius1& f, int Q);

ChargedPair maya_to_young(const MayaDiagram2& M);
MayaDiagram2 young_to_maya(const ChargedPair& p);

// All two-color diagrams with |index| <= max_twice/2.
std::vector<MayaDiagram2> enumerate_maya2(int max_twice);
// All one-color (particle set, hole set) pairs with |index| <= max_twice/2.
void for_each_frobenius1(int max_twice, const std::function<void(const Frobenius1&)>& fn);

// Exact Laurent polynomial in e^{tau eps1}, e^{tau eps2}, e^{tau a+}, e^{tau a-}.
class FormalCharacter {
 public:
  using Key = std::array<int, 4>;

  FormalCharacter() = default;
  static FormalCharacter monomial(Key k, long long c = 1);

  void add(const Key& k, long long c);
  FormalCharacter operator+(const FormalCharacter& o) const;
  FormalCharacter operator-(const FormalCharacter& o) const;
  FormalCharacter operator*(const FormalCharacter& o) const;
  FormalCharacter scaled(long long c) const;
  // tau -> -tau
  FormalCharacter conj() const;
  // Swap the eps1 and eps2 exponents.
  FormalCharacter swap_eps() const;
  bool operator==(const FormalCharacter& o) const { return terms_ == o.terms_; }
  bool zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<Key, long long>& terms() const { return terms_; }

 private:
  std::map<Key, long long> terms_;
};

// -(1-t1)(1-t2) V V* + V W* + t1 t2 W V*
FormalCharacter char_nek(const Partition& Yp, const Partition& Ym);
// sum_{ab} e^{a_a - a_b} N_ab with the arm tied to eps1.
FormalCharacter char_ny(const Partition& Yp, const Partition& Ym);
// Uncorrected forms: no t1 t2 on the cross term, arm and leg roles exchanged. They disagree.
FormalCharacter char_nek_literal(const Partition& Yp, const Partition& Ym);
FormalCharacter char_ny_literal(const Partition& Yp, const Partition& Ym);

// prod over terms c e^{tau w} of (1 - q^w)^{-c}
cplx pe_minus_eval(const FormalCharacter& chi, cplx eps1, cplx eps2, cplx a_plus,
                   cplx a_minus, cplx q);

// Both sides of the one-color box/Frobenius character identity, cleared of the
// (e^{tau/2} - e^{-tau/2})^2 denominator, as Laurent polynomials in e^{tau/2}.
struct VFrobeniusCheck {
  std::map<int, long long> lhs;
  std::map<int, long long> rhs;
  bool equal;
};
VFrobeniusCheck char_V_frobenius(const Partition& Y, int Q);

// Nekrasov factor with weights nu_plus, nu_minus; exponent nu_b - nu_a.
cplx z_vec(cplx nu_plus, cplx nu_minus, const Partition& Yp, const Partition& Ym,
           cplx q);

cplx z_zero(cplx sigma, cplx Q, cplx q);
cplx z1_bar_inv(cplx S, cplx sigma, int Q, int Np, int Nm, int Tp, int Tm, cplx t, cplx q);
// Simplified diagonal weights; k > 0 particles, k < 0 holes.
cplx gf_bar(cplx S, cplx sigma, HalfInt k, int color, cplx t, cplx q);

}  // namespace qtau
