#pragma once

#include <array>
#include <string>

#include "ffg/poly.hpp"

namespace ffg {

// Element of k = F_q(t): num/den with den monic and gcd(num, den) = 1.
struct Frac {
  Poly num, den;

  static Frac make(const Poly& num, const Poly& den);
  static Frac of(const Poly& p) { return make(p, Poly::one(p.F())); }
  Frac operator*(const Frac& o) const { return make(num * o.num, den * o.den); }
  Frac inverse() const { return make(den, num); }
  // Scales num to be monic (the generator of the fractional ideal).
  Frac ideal() const { return make(num.monic(), den); }
  bool is_zero() const { return num.is_zero(); }
  bool operator==(const Frac& o) const { return num == o.num && den == o.den; }
  std::string str() const;
};

// Integral coordinates on the basis 1, i, j, ij.
using QVec = std::array<Poly, 4>;

// B = (delta, P0): i^2 = delta, j^2 = P0, ij = -ji. Interned by (F, P0, delta).
class QuatAlgebra {
 public:
  // Rejects even deg P0 and deg P0 < 3. delta defaults to the smallest
  // non-square of F.
  static const QuatAlgebra& get(const Field& f, const Poly& P0);
  static const QuatAlgebra& get(const Field& f, const Poly& P0, Elem delta);

  const Field& F() const { return *f_; }
  const Poly& P0() const { return P0_; }
  Elem delta() const { return delta_; }

  QVec mul(const QVec& a, const QVec& b) const;
  QVec conj(const QVec& a) const;
  QVec add(const QVec& a, const QVec& b) const;
  QVec scale(const QVec& a, const Poly& s) const;
  Poly nrd(const QVec& a) const;
  // trd(a * conj(b)) / 2 = x0y0 - delta x1y1 - P0 x2y2 + delta P0 x3y3
  Poly beta(const QVec& a, const QVec& b) const;
  QVec zero() const;
  QVec one() const;
  QVec basis(int k) const;
  bool is_zero(const QVec& a) const;

 private:
  QuatAlgebra(const Field& f, Poly P0, Elem delta);
  const Field* f_;
  Poly P0_;
  Elem delta_;
  Poly dP0_;  // delta * P0

  friend struct AlgebraRegistry;
};

// Element of B: numerators over a common monic denominator, content-free.
struct Quat {
  const QuatAlgebra* alg = nullptr;
  QVec x;
  Poly den;

  static Quat make(const QuatAlgebra& alg, const QVec& num, const Poly& den);
  static Quat integral(const QuatAlgebra& alg, const QVec& num);
  static Quat scalar(const QuatAlgebra& alg, const Frac& s);

  Quat operator+(const Quat& o) const;
  Quat operator-(const Quat& o) const;
  Quat operator-() const;
  Quat operator*(const Quat& o) const;
  Quat conj() const;
  Frac nrd() const;
  Frac trd() const;
  Quat inverse() const;
  Quat scaled(const Frac& s) const;
  bool is_zero() const { return alg->is_zero(x); }
  bool operator==(const Quat& o) const { return x == o.x && den == o.den; }
  // Total order used for canonical representatives.
  bool operator<(const Quat& o) const;
  std::string str() const;
};

}  // namespace ffg
