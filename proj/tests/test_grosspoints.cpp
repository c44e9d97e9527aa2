#include <doctest.h>

#include <cmath>
#include <set>

#include "ffg/error.hpp"
#include "ffg/grosspoints.hpp"
#include "ffg/polyalg.hpp"

using namespace ffg;

namespace {

const Field& F3() { return Field::prime(3); }
Poly P(const std::string& s) { return parse_poly(s, F3()); }

const ClassSystem& sysC7() {
  static const ClassSystem s = class_enumeration(QuatAlgebra::get(F3(), P("t^3-t-1")));
  return s;
}
const ClassSystem& sysT() {
  static const ClassSystem s = class_enumeration(QuatAlgebra::get(F3(), P("t^3+2*t+1")));
  return s;
}
QuadDiscriminant C7() { return QuadDiscriminant::make(P("t^3+2*t+1")); }

struct Scenario {
  GrossContext ctx;
  PicGroup pic;
  GrossPoint x0;
  Orbit orbit;
  Scenario(const ClassSystem& s, const QuadDiscriminant& D)
      : ctx(s, D), pic(D), x0(*ctx.first_point()), orbit(pic_orbit(ctx, pic, x0)) {}
};

const Scenario& c7() {
  static const Scenario sc(sysC7(), C7());
  return sc;
}

}  // namespace

TEST_CASE("embedding counts sum to 2 h(D)") {
  const QuadDiscriminant D = C7();
  CHECK(class_number(D) == 7);
  GrossContext ctx(sysC7(), D);
  auto m = ctx.embedding_counts();
  int tot = 0;
  for (int v : m) tot += v;
  CHECK(tot == 14);

  const QuadDiscriminant Dt = QuadDiscriminant::make(P("t"));
  GrossContext ct(sysT(), Dt);
  tot = 0;
  for (int v : ct.embedding_counts()) tot += v;
  CHECK(tot == 2 * class_number(Dt));

  for (int deg : {1, 3})
    for (const Poly& Dp : monic_irreducibles(F3(), deg)) {
      QuadDiscriminant Q = QuadDiscriminant::make(Dp);
      if (splitting_type(sysC7().alg->P0(), Q) != Splitting::inert) continue;
      GrossContext g(sysC7(), Q);
      tot = 0;
      for (int v : g.embedding_counts()) tot += v;
      CHECK(tot == 2 * class_number(Q));
    }
}

TEST_CASE("split P0 has no optimal embeddings") {
  // Find a degree-3 D in which P0 splits.
  for (const Poly& Dp : monic_irreducibles(F3(), 3)) {
    QuadDiscriminant Q = QuadDiscriminant::make(Dp);
    if (splitting_type(sysC7().alg->P0(), Q) != Splitting::split) continue;
    CHECK_THROWS_AS(GrossContext(sysC7(), Q), PreconditionError);
    GrossContext g(sysC7(), Q, false);
    for (int v : g.embedding_counts()) CHECK(v == 0);
    return;
  }
  FAIL("no split discriminant found");
}

TEST_CASE("Pic action") {
  const Scenario& sc = c7();
  REQUIRE(sc.pic.order() == 7);
  CHECK(sc.ctx.act(sc.x0, mumford_identity(F3())).same_as(sc.x0));
  for (const auto& p : sc.orbit.points) {
    CHECK(sc.ctx.sys().classes[p.cls].order.contains(p.y));
    CHECK(p.y * p.y == Quat::scalar(*sc.ctx.sys().alg, Frac::of(sc.ctx.disc().D)));
  }
  for (std::size_t a = 0; a < sc.orbit.points.size(); ++a)
    for (std::size_t b = a + 1; b < sc.orbit.points.size(); ++b)
      CHECK_FALSE(sc.orbit.points[a].same_as(sc.orbit.points[b]));
  // (x^a)^b = x^(ab)
  for (std::size_t a = 0; a < sc.pic.order(); ++a)
    for (std::size_t b = 0; b < sc.pic.order(); ++b) {
      GrossPoint z = sc.ctx.act(sc.orbit.points[a], sc.pic.element(b));
      CHECK(z.same_as(sc.orbit.points[sc.pic.mul(a, b)]));
    }
}

TEST_CASE("plus and minus orbits exhaust the embeddings") {
  const Scenario& sc = c7();
  const Orbit minus = pic_orbit(sc.ctx, sc.pic, sc.ctx.negate(sc.x0));
  std::set<std::pair<int, Quat>> seen;
  for (const auto& p : sc.orbit.points) seen.insert({p.cls, p.y});
  for (const auto& p : minus.points) {
    CHECK_FALSE(p.plus);
    seen.insert({p.cls, p.y});
  }
  std::set<std::pair<int, Quat>> all;
  for (int i = 0; i < sc.ctx.sys().n(); ++i) {
    const Embeddings E = sc.ctx.optimal_embeddings(i);
    for (const Quat& y : E.witnesses) all.insert({i, y});
    const auto G = select_subgroup(sc.pic, "pic");
    const long long n_plus = orbit_distribution(sc.orbit, G, sc.ctx.sys().n()).N[i];
    const long long n_minus = orbit_distribution(minus, G, sc.ctx.sys().n()).N[i];
    CHECK(n_plus + n_minus == E.m());
  }
  CHECK(seen == all);
}

TEST_CASE("Weyl sums and the spectral identity") {
  const Scenario& sc = c7();
  const ClassSystem& s = sc.ctx.sys();
  const Eigenbasis E = hecke_eigenbasis(s);
  std::vector<double> estar(s.n());
  for (int i = 0; i < s.n(); ++i) estar[i] = 1.0 / s.classes[i].weight;
  const auto chis = characters(sc.pic, {sc.pic.identity()});
  REQUIRE(chis.size() == 7);
  // trivial character against e*: every point contributes 1
  CHECK(std::abs(weyl_sum(chis[0], estar, sc.orbit, s) - std::complex<double>(7, 0)) < 1e-12);
  for (const auto& chi : chis)
    for (const auto& f : E.forms)
      CHECK(std::abs(weyl_sum(chi.conjugate(), f, sc.orbit, s) - std::conj(weyl_sum(chi, f, sc.orbit, s))) < 1e-12);
  for (const std::string spec : {"pic", "1"}) {
    const auto G = select_subgroup(sc.pic, spec);
    SpectralCheck c = spectral_identity_check(sc.orbit, G, sc.pic, s, E);
    CHECK(c.residual < 1e-8);
    CHECK(c.bessel);
    CHECK(c.parseval < 1e-9);
  }
}

TEST_CASE("subgroup selection") {
  const PicGroup& G = c7().pic;
  CHECK(select_subgroup(G, "pic").size() == 7);
  CHECK(select_subgroup(G, "1") == std::vector<std::size_t>{0});
  CHECK(select_subgroup(G, "gens:1").size() == 7);
  CHECK(select_subgroup(G, "gens:0").size() == 1);
  // |D|^0.9 = 27^0.9 > 7, so the trivial subgroup is allowed; 27^0.5 < 7 is not
  CHECK(select_subgroup(G, "eta:0.9").size() == 1);
  CHECK(select_subgroup(G, "eta:0.5").size() == 7);
  CHECK_THROWS_AS(select_subgroup(G, "gens:9"), PreconditionError);
  CHECK_THROWS_AS(select_subgroup(G, "gens:x"), PreconditionError);
  CHECK_THROWS_AS(select_subgroup(G, "half"), PreconditionError);
}

TEST_CASE("equidistribution scan, small degrees") {
  EquidistReport r = equidist_scan(sysC7(), {1, 3});
  CHECK_FALSE(r.rows.empty());
  for (const auto& row : r.rows) {
    long long tot = 0;
    for (auto v : row.N) tot += v;
    CHECK(tot == row.hD);
    CHECK(row.discrepancy >= 0);
    CHECK(row.discrepancy <= 1);
  }
  CHECK(discrepancy_envelope(3, 3, 4, 1, 0) == doctest::Approx(std::pow(3.0, 1.25 - 1.0)));
}

TEST_CASE("surjectivity scan") {
  SurjectivityReport r = surjectivity_scan(sysC7(), 9);
  REQUIRE(r.min_degree.has_value());
  REQUIRE(r.witness.has_value());
  GrossContext g(sysC7(), QuadDiscriminant::make(*r.witness));
  for (int v : g.embedding_counts()) CHECK(v > 0);
  // every smaller degree has a class that is always missed
  for (const auto& d : r.degrees)
    if (d.deg < *r.min_degree) CHECK(d.full == 0);
}

TEST_CASE("scan output does not depend on the worker count") {
  EquidistReport a = equidist_scan(sysC7(), {3, 5}, "pic", 0, 1);
  EquidistReport b = equidist_scan(sysC7(), {3, 5}, "pic", 0, 3);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    CHECK(a.rows[k].D == b.rows[k].D);
    CHECK(a.rows[k].N == b.rows[k].N);
    CHECK(a.rows[k].m == b.rows[k].m);
  }
  CHECK(a.slope == b.slope);
}
