#include "ffg/drinfeld.hpp"

#include <algorithm>

#include "ffg/error.hpp"
#include "ffg/parallel.hpp"
#include "ffg/polyalg.hpp"

namespace ffg {

Poly PolyCoeffs::frob(const Poly& a) const { return a.substitute_power(static_cast<int>(f->order())); }

DrinfeldModule DrinfeldModule::make(const Field& L, Elem theta, Elem g, Elem Delta) {
  require(Delta != 0, "Drinfeld module needs Delta != 0");
  require(theta < L.order() && g < L.order() && Delta < L.order(), "coefficient outside the field");
  return DrinfeldModule{&L, theta, g, Delta};
}

LTwisted DrinfeldModule::phi_t() const { return LTwisted(FieldCoeffs{L}, {theta, g, Delta}); }

LTwisted phi_a(const DrinfeldModule& phi, const Poly& a) {
  require(!a.is_zero(), "phi_a needs a != 0");
  require(a.F().is_prime_field() && a.F().order() == phi.L->characteristic(),
          "a must lie in F_p[t] for the prime p of L");
  return phi_of(phi.phi_t(), a);
}

Elem j_invariant(const DrinfeldModule& phi) {
  const Field& L = *phi.L;
  const Elem q = L.characteristic();
  return L.div(L.pow(phi.g, q + 1), phi.Delta);
}

SupersingularVerdict supersingular_verdict(const DrinfeldModule& phi, const Poly& P0) {
  const Field& L = *phi.L;
  require(P0.deg() >= 1, "P0 must be nonconstant");
  Elem v = 0;
  for (int k = P0.deg(); k >= 0; --k) v = L.add(L.mul(v, phi.theta), P0.coeff(k));
  require(v == 0, "theta is not a root of P0: L does not have A-characteristic P0");
  const LTwisted f = phi_a(phi, P0);
  const int d = P0.deg();
  SupersingularVerdict out;
  out.inseparable = true;
  for (int i = 0; i < 2 * d; ++i)
    if (f.coeff(i) != 0) out.inseparable = false;
  out.hasse = f.coeff(d) == 0;
  return out;
}

bool is_supersingular(const DrinfeldModule& phi, const Poly& P0) {
  const SupersingularVerdict v = supersingular_verdict(phi, P0);
  ensure(v.inseparable == v.hasse, "Hasse coefficient disagrees with the inseparability test");
  return v.inseparable;
}

ResidueField quadratic_residue_field(const Poly& P0) {
  const Field& f = P0.F();
  require(f.is_prime_field(), "Drinfeld computations need a prime constant field");
  require(P0.is_monic() && irreducible_test(P0), "P0 must be monic irreducible");
  const Field& L = Field::extension_of_degree(f.characteristic(), 2 * P0.deg());
  for (Elem x = 0; x < L.order(); ++x) {
    Elem v = 0;
    for (int k = P0.deg(); k >= 0; --k) v = L.add(L.mul(v, x), P0.coeff(k));
    if (v == 0) return ResidueField{&L, x};
  }
  throw InternalError("P0 has no root in its quadratic residue extension");
}

Rational SupersingularSet::mass() const {
  Rational m(0);
  for (int w : weight) m += Rational(1, w);
  return m;
}

DrinfeldModule representative_module(const ResidueField& F, Elem j) {
  if (j == 0) return DrinfeldModule::make(*F.L, F.theta, 0, 1);
  return DrinfeldModule::make(*F.L, F.theta, j, F.L->frobenius(j, 1));
}

SupersingularSet supersingular_j_enum(const Poly& P0, int workers) {
  require(P0.deg() >= 1, "P0 must be nonconstant");
  SupersingularSet S;
  S.P0 = P0;
  S.F = quadratic_residue_field(P0);
  const Field& L = *S.F.L;
  const std::size_t n = L.order();
  const auto v = parallel_map<SupersingularVerdict>(
      n, workers, [&](std::size_t j) { return supersingular_verdict(representative_module(S.F, static_cast<Elem>(j)), P0); });
  const int q = static_cast<int>(P0.F().order());
  for (std::size_t j = 0; j < n; ++j) {
    ++S.tested;
    if (v[j].inseparable != v[j].hasse) ++S.disagreements;
    if (v[j].inseparable) {
      ensure(j_invariant(representative_module(S.F, static_cast<Elem>(j))) == j, "representative has the wrong j");
      S.j.push_back(static_cast<Elem>(j));
      S.weight.push_back(j == 0 ? q + 1 : 1);
    }
  }
  return S;
}

CMModule cm_carlitz(const Field& f) {
  require(f.is_prime_field() && f.characteristic() % 2 == 1, "CM construction needs an odd prime field");
  const PolyCoeffs r{&f};
  CMModule m{&f, XTwisted(r, {Poly::t(f), Poly::one(f)}), XTwisted()};
  m.phi_t = m.psi_x * m.psi_x;
  return m;
}

bool cm_commutes(const CMModule& m) { return m.psi_x * m.phi_t == m.phi_t * m.psi_x; }

Elem reduce_coefficient(const Poly& c, const Field& L, Elem x) {
  Elem v = 0;
  for (int k = c.deg(); k >= 0; --k) v = L.add(L.mul(v, x), c.coeff(k));
  return v;
}

std::vector<ReducedModule> reduce_module(const CMModule& m, const Poly& P0) {
  const Field& f = *m.f;
  require(&P0.F() == &f, "P0 over a different field");
  require(P0.is_monic() && irreducible_test(P0), "P0 must be monic irreducible");
  require(P0 != Poly::t(f), "P0 = t ramifies in k(sqrt t)");
  const Poly lifted = P0.substitute_power(2);
  const Factorization fac = factor(lifted);
  std::vector<ReducedModule> out;
  for (const auto& [p, e] : fac.factors) {
    require(e == 1, "P0(x^2) is not squarefree");
    std::vector<std::uint32_t> mod(p.coeffs().begin(), p.coeffs().end());
    const Field& L = Field::extension(f.characteristic(), mod);
    const Elem x = p.deg() == 1 ? f.neg(p.coeff(0)) : static_cast<Elem>(f.characteristic());
    ensure(reduce_coefficient(p, L, x) == 0, "image of x is not a root of the prime");
    ReducedModule r;
    r.prime = p;
    r.x = x;
    r.phi = DrinfeldModule::make(L, reduce_coefficient(m.phi_t.coeff(0), L, x), reduce_coefficient(m.g(), L, x),
                                 reduce_coefficient(m.Delta(), L, x));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace ffg
