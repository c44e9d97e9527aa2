#include <doctest.h>

#include <algorithm>
#include <random>

#include "ffg/drinfeld.hpp"
#include "ffg/error.hpp"
#include "ffg/lseries.hpp"
#include "ffg/polyalg.hpp"

using namespace ffg;

namespace {

const Field& F3() { return Field::prime(3); }
Poly P(const std::string& s) { return parse_poly(s, F3()); }

LTwisted random_twisted(const Field& L, std::mt19937& rng, int deg) {
  std::vector<Elem> c(deg + 1);
  for (auto& v : c) v = rng() % L.order();
  return LTwisted(FieldCoeffs{&L}, c);
}

Poly random_poly(std::mt19937& rng, int deg) {
  std::vector<Elem> c(deg + 1);
  for (auto& v : c) v = rng() % 3;
  c.back() = 1 + rng() % 2;
  return Poly::from_coeffs(F3(), c);
}

}  // namespace

TEST_CASE("twisted polynomial arithmetic") {
  const Field& F9 = Field::extension_of_degree(3, 2);
  const FieldCoeffs r9{&F9};
  const Elem u = 3;  // the generator of F_9
  LTwisted tu = LTwisted::tau(r9) * LTwisted::constant(r9, u);
  CHECK(tu == LTwisted(r9, {0, F9.pow(u, 3)}));

  const PolyCoeffs rx{&F3()};
  const Poly x = Poly::t(F3());
  XTwisted s(rx, {x, Poly::one(F3())});
  CHECK(s * s == XTwisted(rx, {x * x, x + x.pow(3), Poly::one(F3())}));

  const Field& L = Field::extension_of_degree(3, 6);
  std::mt19937 rng(7);
  for (int k = 0; k < 20; ++k) {
    LTwisted a = random_twisted(L, rng, 3), b = random_twisted(L, rng, 2), c = random_twisted(L, rng, 4);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b).deg() == a.deg() + b.deg());
  }
}

TEST_CASE("phi_a") {
  const ResidueField F = quadratic_residue_field(P("t^3-t-1"));
  const Field& L = *F.L;
  std::mt19937 rng(11);
  for (int k = 0; k < 10; ++k) {
    const Elem g = rng() % L.order();
    const Elem D = 1 + rng() % (L.order() - 1);
    const DrinfeldModule phi = DrinfeldModule::make(L, F.theta, g, D);
    const LTwisted p2 = phi_a(phi, P("t^2"));
    const Elem q = 3;
    CHECK(p2.coeff(2) == L.add(L.add(L.mul(F.theta, D), L.pow(g, q + 1)), L.mul(D, L.pow(F.theta, q * q))));
    for (int r = 0; r < 5; ++r) {
      const Poly a = random_poly(rng, 1 + rng() % 4), b = random_poly(rng, 1 + rng() % 3);
      CHECK(phi_a(phi, a + b) == phi_a(phi, a) + phi_a(phi, b));
      CHECK(phi_a(phi, a * b) == phi_a(phi, a) * phi_a(phi, b));
      const LTwisted pa = phi_a(phi, a);
      CHECK(pa.deg() == 2 * a.deg());
      CHECK(pa.coeff(0) == reduce_coefficient(a, L, F.theta));
    }
  }
  CHECK_THROWS_AS(phi_a(DrinfeldModule::make(L, F.theta, 1, 1), Poly(F3())), PreconditionError);
  CHECK_THROWS_AS(DrinfeldModule::make(L, F.theta, 1, 0), PreconditionError);
}

TEST_CASE("j-invariant") {
  const ResidueField F = quadratic_residue_field(P("t^3+2*t+1"));
  const Field& L = *F.L;
  CHECK(j_invariant(DrinfeldModule::make(L, F.theta, 1, 1)) == 1);
  CHECK(j_invariant(DrinfeldModule::make(L, F.theta, 0, 5)) == 0);
  std::mt19937 rng(3);
  for (int k = 0; k < 30; ++k) {
    const Elem g = rng() % L.order(), D = 1 + rng() % (L.order() - 1), c = 1 + rng() % (L.order() - 1);
    const DrinfeldModule a = DrinfeldModule::make(L, F.theta, g, D);
    const DrinfeldModule b = DrinfeldModule::make(L, F.theta, L.mul(L.pow(c, 2), g), L.mul(L.pow(c, 8), D));
    CHECK(j_invariant(a) == j_invariant(b));
  }
}

TEST_CASE("supersingularity criteria") {
  const Poly P0 = P("t^3-t-1");
  const ResidueField F = quadratic_residue_field(P0);
  CHECK(is_supersingular(DrinfeldModule::make(*F.L, F.theta, 0, 1), P0));
  // theta = 1 is not a root of t^3-t-1
  CHECK_THROWS_AS(is_supersingular(DrinfeldModule::make(*F.L, 1, 0, 1), P0), PreconditionError);
}

TEST_CASE("supersingular j-invariants, all cubic P0") {
  for (const Poly& P0 : monic_irreducibles(F3(), 3)) {
    CAPTURE(format_poly(P0));
    const SupersingularSet S = supersingular_j_enum(P0);
    CHECK(S.tested == 729);
    CHECK(S.disagreements == 0);
    CHECK(S.count() == h_P0_formula(3, 3));
    CHECK(S.mass() == Rational(13, 4));
    CHECK(std::binary_search(S.j.begin(), S.j.end(), Elem(0)));
    auto w = S.weight;
    std::sort(w.begin(), w.end());
    CHECK(w == std::vector<int>{1, 1, 1, 4});
    for (Elem j : S.j) CHECK(std::binary_search(S.j.begin(), S.j.end(), S.F.L->frobenius(j, 3)));
  }
}

TEST_CASE("supersingular j-invariants, quintic P0") {
  const Poly P0 = monic_irreducibles(F3(), 5).front();
  const SupersingularSet S = supersingular_j_enum(P0);
  CHECK(S.disagreements == 0);
  CHECK(S.count() == 31);
  CHECK(S.mass() == Rational(121, 4));
}

TEST_CASE("CM module and its reductions") {
  const CMModule m = cm_carlitz(F3());
  const Poly x = Poly::t(F3());
  CHECK(m.phi_t.coeff(0) == x * x);
  CHECK(m.g() == x + x.pow(3));
  CHECK(m.Delta() == Poly::one(F3()));
  CHECK(cm_commutes(m));

  const auto inert = reduce_module(m, P("t^3+2*t+1"));
  REQUIRE(inert.size() == 1);
  CHECK(inert[0].prime == parse_poly("x^6+2*x^2+1", F3(), 'x'));
  CHECK(inert[0].phi.L->order() == 729);
  CHECK(is_supersingular(inert[0].phi, P("t^3+2*t+1")));
  const Elem jbar = j_invariant(inert[0].phi);
  CHECK(jbar == reduce_coefficient((x + x.pow(3)).pow(4), *inert[0].phi.L, inert[0].x));

  const auto split = reduce_module(m, P("t^3-t-1"));
  REQUIRE(split.size() == 2);
  for (const auto& r : split) {
    CHECK(r.prime.deg() == 3);
    CHECK_FALSE(is_supersingular(r.phi, P("t^3-t-1")));
  }
  CHECK_THROWS_AS(reduce_module(m, P("t")), PreconditionError);

  const QuadDiscriminant Dt = QuadDiscriminant::make(P("t"));
  for (const Poly& P0 : monic_irreducibles(F3(), 3)) {
    const Splitting s = splitting_type(P0, Dt);
    for (const auto& r : reduce_module(m, P0)) CHECK(is_supersingular(r.phi, P0) == (s == Splitting::inert));
  }
}
