#include "ffg/quat.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "ffg/error.hpp"
#include "ffg/polyalg.hpp"

namespace ffg {

Frac Frac::make(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw PreconditionError("fraction with zero denominator");
  if (num.is_zero()) return {num.field() ? num : Poly(den.F()), Poly::one(den.F())};
  Poly g = gcd(num, den);
  Poly n = num / g, d = den / g;
  const Elem u = d.lc();
  if (u != 1) {
    const Elem ui = d.F().inv(u);
    n = n.scale(ui);
    d = d.scale(ui);
  }
  return {n, d};
}

std::string Frac::str() const {
  if (den.is_one()) return format_poly(num);
  return "(" + format_poly(num) + ")/(" + format_poly(den) + ")";
}

struct AlgebraRegistry {
  std::mutex mu;
  std::map<std::tuple<const Field*, std::uint64_t, int, Elem>, std::unique_ptr<QuatAlgebra>> algs;
};

QuatAlgebra::QuatAlgebra(const Field& f, Poly P0, Elem delta)
    : f_(&f), P0_(std::move(P0)), delta_(delta), dP0_(P0_.scale(delta)) {}

const QuatAlgebra& QuatAlgebra::get(const Field& f, const Poly& P0) { return get(f, P0, f.smallest_nonsquare()); }

const QuatAlgebra& QuatAlgebra::get(const Field& f, const Poly& P0, Elem delta) {
  require(P0.field() == &f, "P0 lives over a different field");
  require(P0.is_monic() && irreducible_test(P0), "P0 must be monic irreducible");
  require(P0.deg() % 2 == 1, "unsupported ramification: even-degree P0 has no presentation here");
  require(P0.deg() >= 3, "deg P0 must be at least 3");
  require(delta != 0 && f.quad_char(delta) == -1, "delta must be a non-square in F_q");
  static AlgebraRegistry reg;
  std::lock_guard<std::mutex> lock(reg.mu);
  auto key = std::make_tuple(&f, P0.index(), P0.deg(), delta);
  auto& slot = reg.algs[key];
  if (!slot) slot.reset(new QuatAlgebra(f, P0, delta));
  return *slot;
}

QVec QuatAlgebra::mul(const QVec& a, const QVec& b) const {
  const Poly a0b0 = a[0] * b[0], a1b1 = a[1] * b[1], a2b2 = a[2] * b[2], a3b3 = a[3] * b[3];
  QVec c;
  c[0] = a0b0 + a1b1.scale(delta_) + P0_ * a2b2 - dP0_ * a3b3;
  c[1] = a[0] * b[1] + a[1] * b[0] + P0_ * (a[3] * b[2] - a[2] * b[3]);
  c[2] = a[0] * b[2] + a[2] * b[0] + (a[1] * b[3] - a[3] * b[1]).scale(delta_);
  c[3] = a[0] * b[3] + a[3] * b[0] + a[1] * b[2] - a[2] * b[1];
  return c;
}

QVec QuatAlgebra::conj(const QVec& a) const { return {a[0], -a[1], -a[2], -a[3]}; }

QVec QuatAlgebra::add(const QVec& a, const QVec& b) const { return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]}; }

QVec QuatAlgebra::scale(const QVec& a, const Poly& s) const { return {a[0] * s, a[1] * s, a[2] * s, a[3] * s}; }

Poly QuatAlgebra::nrd(const QVec& a) const { return beta(a, a); }

Poly QuatAlgebra::beta(const QVec& a, const QVec& b) const {
  return a[0] * b[0] - (a[1] * b[1]).scale(delta_) - P0_ * (a[2] * b[2]) + dP0_ * (a[3] * b[3]);
}

QVec QuatAlgebra::zero() const { return {Poly(*f_), Poly(*f_), Poly(*f_), Poly(*f_)}; }

QVec QuatAlgebra::one() const { return basis(0); }

QVec QuatAlgebra::basis(int k) const {
  QVec v = zero();
  v[k] = Poly::one(*f_);
  return v;
}

bool QuatAlgebra::is_zero(const QVec& a) const {
  return a[0].is_zero() && a[1].is_zero() && a[2].is_zero() && a[3].is_zero();
}

Quat Quat::make(const QuatAlgebra& alg, const QVec& num, const Poly& den) {
  if (den.is_zero()) throw PreconditionError("quaternion with zero denominator");
  Quat r{&alg, num, den};
  for (auto& c : r.x)
    if (!c.field()) c = Poly(alg.F());
  Poly g = den;
  for (const auto& c : r.x) g = gcd(g, c);
  const Elem u = den.lc();
  Poly gs = g.scale(u);  // so that den / gs is monic
  for (auto& c : r.x) c = c / gs;
  r.den = den / gs;
  return r;
}

Quat Quat::integral(const QuatAlgebra& alg, const QVec& num) { return make(alg, num, Poly::one(alg.F())); }

Quat Quat::scalar(const QuatAlgebra& alg, const Frac& s) {
  QVec v = alg.zero();
  v[0] = s.num;
  return make(alg, v, s.den);
}

Quat Quat::operator+(const Quat& o) const {
  return make(*alg, alg->add(alg->scale(x, o.den), alg->scale(o.x, den)), den * o.den);
}

Quat Quat::operator-(const Quat& o) const { return *this + (-o); }

Quat Quat::operator-() const { return Quat{alg, {-x[0], -x[1], -x[2], -x[3]}, den}; }

Quat Quat::operator*(const Quat& o) const { return make(*alg, alg->mul(x, o.x), den * o.den); }

Quat Quat::conj() const { return Quat{alg, alg->conj(x), den}; }

Frac Quat::nrd() const { return Frac::make(alg->nrd(x), den * den); }

Frac Quat::trd() const { return Frac::make(x[0].scale(alg->F().from_int(2)), den); }

Quat Quat::inverse() const {
  Frac n = nrd();
  if (n.is_zero()) throw PreconditionError("inverse of zero quaternion");
  return conj().scaled(n.inverse());
}

Quat Quat::scaled(const Frac& s) const { return make(*alg, alg->scale(x, s.num), den * s.den); }

bool Quat::operator<(const Quat& o) const {
  if (den != o.den) return den < o.den;
  for (int k = 0; k < 4; ++k)
    if (x[k] != o.x[k]) return x[k] < o.x[k];
  return false;
}

std::string Quat::str() const {
  static const char* names[4] = {"", "*i", "*j", "*ij"};
  std::string s;
  for (int k = 0; k < 4; ++k) {
    if (x[k].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + format_poly(x[k]) + ")" + names[k];
  }
  if (s.empty()) s = "0";
  if (!den.is_one()) s = "[" + s + "]/(" + format_poly(den) + ")";
  return s;
}

}  // namespace ffg
