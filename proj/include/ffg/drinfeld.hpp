#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ffg/classes.hpp"
#include "ffg/field.hpp"
#include "ffg/poly.hpp"

namespace ffg {

// Coefficient rings for L{tau}. `frob` is c -> c^q for the constant field
// F_q of A; q is always a prime here, so on F_q[x] it is x -> x^q.
struct FieldCoeffs {
  using value_type = Elem;
  const Field* L;
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(value_type a) const { return a == 0; }
  value_type add(value_type a, value_type b) const { return L->add(a, b); }
  value_type sub(value_type a, value_type b) const { return L->sub(a, b); }
  value_type mul(value_type a, value_type b) const { return L->mul(a, b); }
  value_type frob(value_type a) const { return L->frobenius(a, 1); }
  value_type from_base(Elem c) const { return c; }
};

struct PolyCoeffs {
  using value_type = Poly;
  const Field* f;
  value_type zero() const { return Poly(*f); }
  value_type one() const { return Poly::one(*f); }
  bool is_zero(const value_type& a) const { return a.is_zero(); }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type frob(const value_type& a) const;
  value_type from_base(Elem c) const { return Poly::constant(*f, c); }
};

// sum_i c_i tau^i with tau c = c^q tau.
template <class R>
class TwistedPoly {
 public:
  using V = typename R::value_type;

  TwistedPoly() = default;
  TwistedPoly(R ring, std::vector<V> coeffs) : r_(ring), c_(std::move(coeffs)) { trim(); }
  static TwistedPoly constant(R ring, V c) { return TwistedPoly(ring, {std::move(c)}); }
  static TwistedPoly tau(R ring) { return TwistedPoly(ring, {ring.zero(), ring.one()}); }

  const R& ring() const { return r_; }
  int deg() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  V coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : r_.zero(); }
  const std::vector<V>& coeffs() const { return c_; }

  TwistedPoly operator+(const TwistedPoly& o) const {
    std::vector<V> out(std::max(c_.size(), o.c_.size()), r_.zero());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = r_.add(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
    return TwistedPoly(r_, std::move(out));
  }
  TwistedPoly operator-(const TwistedPoly& o) const {
    std::vector<V> out(std::max(c_.size(), o.c_.size()), r_.zero());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = r_.sub(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
    return TwistedPoly(r_, std::move(out));
  }
  // (a tau^i)(b tau^j) = a b^(q^i) tau^(i+j)
  TwistedPoly operator*(const TwistedPoly& o) const {
    if (is_zero() || o.is_zero()) return TwistedPoly(r_, {});
    std::vector<V> out(c_.size() + o.c_.size() - 1, r_.zero());
    std::vector<V> b = o.c_;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i > 0)
        for (auto& v : b) v = r_.frob(v);
      if (r_.is_zero(c_[i])) continue;
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = r_.add(out[i + j], r_.mul(c_[i], b[j]));
    }
    return TwistedPoly(r_, std::move(out));
  }
  bool operator==(const TwistedPoly& o) const { return c_ == o.c_; }
  bool operator!=(const TwistedPoly& o) const { return !(*this == o); }

 private:
  void trim() {
    while (!c_.empty() && r_.is_zero(c_.back())) c_.pop_back();
  }
  R r_{};
  std::vector<V> c_;
};

using LTwisted = TwistedPoly<FieldCoeffs>;
using XTwisted = TwistedPoly<PolyCoeffs>;

// phi_a = sum a_k phi_t^k by Horner over the t-adic digits of a.
template <class R>
TwistedPoly<R> phi_of(const TwistedPoly<R>& phi_t, const Poly& a) {
  const R& r = phi_t.ring();
  TwistedPoly<R> acc(r, {});
  for (int k = a.deg(); k >= 0; --k) acc = acc * phi_t + TwistedPoly<R>::constant(r, r.from_base(a.coeff(k)));
  return acc;
}

// phi_t = theta + g tau + Delta tau^2 over a finite field L containing the
// prime field F_q of A.
struct DrinfeldModule {
  const Field* L = nullptr;
  Elem theta = 0;
  Elem g = 0;
  Elem Delta = 1;

  static DrinfeldModule make(const Field& L, Elem theta, Elem g, Elem Delta);
  LTwisted phi_t() const;
};

LTwisted phi_a(const DrinfeldModule& phi, const Poly& a);
Elem j_invariant(const DrinfeldModule& phi);

struct SupersingularVerdict {
  bool inseparable = false;  // every tau^i coefficient of phi_P0 with i < 2 deg P0 vanishes
  bool hasse = false;        // the tau^(deg P0) coefficient vanishes
};
// Both criteria, no cross-check.
SupersingularVerdict supersingular_verdict(const DrinfeldModule& phi, const Poly& P0);
// The full inseparability test; throws InternalError if the Hasse shortcut
// disagrees, PreconditionError unless P0(theta) = 0.
bool is_supersingular(const DrinfeldModule& phi, const Poly& P0);

// F_{P0^2} = F_q[u]/(m) with m the first irreducible of degree 2 deg P0, and
// theta the smallest root of P0 in it.
struct ResidueField {
  const Field* L;
  Elem theta;
};
ResidueField quadratic_residue_field(const Poly& P0);

struct SupersingularSet {
  Poly P0;
  ResidueField F;
  std::vector<Elem> j;       // ascending
  std::vector<int> weight;   // q+1 for j = 0, else 1
  long long tested = 0;
  long long disagreements = 0;
  int count() const { return static_cast<int>(j.size()); }
  Rational mass() const;
};
// Representative (g, Delta) = (j, j^q), or (0, 1) for j = 0.
DrinfeldModule representative_module(const ResidueField& F, Elem j);
// Sweeps all of F_{P0^2}. Disagreements between the two criteria are counted
// rather than thrown so the sweep can report them.
SupersingularSet supersingular_j_enum(const Poly& P0, int workers = 1);

// Over F_q[x] with x^2 = t: psi_x = x + tau and phi_t = psi_x^2.
struct CMModule {
  const Field* f;
  XTwisted psi_x;
  XTwisted phi_t;
  Poly g() const { return phi_t.coeff(1); }
  Poly Delta() const { return phi_t.coeff(2); }
};
CMModule cm_carlitz(const Field& f);
bool cm_commutes(const CMModule& m);

struct ReducedModule {
  Poly prime;       // monic irreducible factor of P0(x^2) in F_q[x]
  DrinfeldModule phi;  // over F_q[x]/(prime), theta = x^2
  Elem x = 0;       // image of x
};
// One module per prime above P0. Rejects P0 = t and any P0 with a repeated
// factor in P0(x^2).
std::vector<ReducedModule> reduce_module(const CMModule& m, const Poly& P0);
// c(x) evaluated at the image of x.
Elem reduce_coefficient(const Poly& c, const Field& L, Elem x);

}  // namespace ffg
