#include <doctest.h>

#include <cmath>

#include "ffg/error.hpp"
#include "ffg/polyalg.hpp"
#include "ffg/rankin.hpp"

using namespace ffg;

namespace {

const Field& F3() { return Field::prime(3); }
Poly P(const std::string& s) { return parse_poly(s, F3()); }

struct TScenario {
  ClassSystem sys = class_enumeration(QuatAlgebra::get(F3(), P("t^3+2*t+1")));
  QuadDiscriminant D = QuadDiscriminant::make(P("t"));
  PicGroup pic{D};
  ThetaCounts th = theta_sweep(sys, 6);
  Eigenbasis E = hecke_eigenbasis(sys);
};

const TScenario& tsc() {
  static const TScenario s;
  return s;
}

}  // namespace

TEST_CASE("local factors") {
  const TScenario& s = tsc();
  const HeckeSystem hs = hecke_system(s.sys, s.E.forms[0], s.th);
  CHECK(std::abs(hs.lambda_P0) == 1);
  const ClassCharacter chi = characters(s.pic, {s.pic.identity()})[0];
  const double r3 = 1 / std::sqrt(3.0);
  const auto places = places_up_to(s.sys.alg->P0(), s.D, 3);
  for (const Place& v : places) {
    const LocalFactor L = local_factor(v, hs, chi, s.pic);
    CHECK(std::abs(L.coeffs[0] - 1.0) < 1e-15);
    switch (v.kind) {
      case PlaceKind::infinity:
        REQUIRE(L.coeffs.size() == 2);
        CHECK(std::abs(L.coeffs[1] + r3) < 1e-15);
        break;
      case PlaceKind::P0:
        REQUIRE(L.coeffs.size() == 3);
        CHECK(std::abs(L.coeffs[1]) < 1e-15);
        CHECK(std::abs(L.coeffs[2] + 1.0 / 27) < 1e-15);
        break;
      case PlaceKind::ramified:
        CHECK(v.v == s.D.D);
        CHECK(L.gamma.size() == 2);
        break;
      default:
        CHECK(L.gamma.size() == 4);
        for (const auto& g : L.gamma) CHECK(std::abs(std::abs(g) - 1) < 1e-9);
    }
  }
  Place bad{PlaceKind::split, P("t^7+t+2"), 7};
  CHECK_THROWS_AS(local_factor(bad, hs, chi, s.pic), PreconditionError);
}

TEST_CASE("Dirichlet coefficients") {
  const TScenario& s = tsc();
  const ClassCharacter chi = characters(s.pic, {s.pic.identity()})[0];
  const double r3 = 1 / std::sqrt(3.0);
  for (const auto& form : s.E.forms) {
    const HeckeSystem hs = hecke_system(s.sys, form, s.th);
    const auto b = dirichlet_coefficients(hs, chi, s.pic, 5);
    CHECK(b[0] == Complex(1));
    // b(1) from the degree-one places directly
    Complex b1 = r3;
    for (const Poly& v : monic_irreducibles(F3(), 1)) {
      if (v == s.D.D) {
        b1 += hs.eigenvalue(v) * r3;
      } else if (splitting_type(v, s.D) == Splitting::split) {
        b1 += 2 * hs.eigenvalue(v) * r3;
      }
    }
    CHECK(std::abs(b[1] - b1) < 1e-12);
  }
  // only the place at infinity: a geometric series
  const HeckeSystem hs = hecke_system(s.sys, s.E.forms[0], s.th);
  const auto inf = euler_product({local_factor(places_up_to(s.sys.alg->P0(), s.D, 0)[0], hs, chi, s.pic)}, 6);
  for (int n = 0; n <= 6; ++n) CHECK(std::abs(inf[n] - std::pow(r3, n)) < 1e-14);
}

TEST_CASE("Rankin polynomial, D = t") {
  const TScenario& s = tsc();
  const ClassCharacter chi = characters(s.pic, {s.pic.identity()})[0];
  for (const auto& form : s.E.forms) {
    const HeckeSystem hs = hecke_system(s.sys, form, s.th);
    const auto lf = local_factors(hs, chi, s.pic, 6);
    const RankinL L = detect_polynomial(euler_product(lf, 6), 3);
    CHECK(L.m == 3);
    CHECK(L.tail < 1e-9);
    CHECK(L.max_root_deviation < 1e-4);
    CHECK(central_value(L).real() >= -1e-6);
    const auto a = log_deriv_newton(L, 6), b = log_deriv_roots(L, 8), c = log_deriv_euler(lf, 3, 6);
    for (int n = 1; n <= 6; ++n) {
      CHECK(std::abs(a[n] - b[n]) < 1e-9);
      CHECK(std::abs(c[n] - b[n]) < 1e-9);
    }
    for (int n = 1; n <= 8; ++n) CHECK(std::abs(b[n]) <= coefficient_envelope(3, 3, n));
    const LindelofReport r = lindelof_inequality_check(L, b);
    CHECK(r.applicable);
    CHECK(r.h == 1);
    CHECK(r.holds);
  }
  CHECK_THROWS_AS(detect_polynomial(std::vector<Complex>{1, 1, 1}, 3), PreconditionError);
  RankinL small = detect_polynomial({1, 0.5, 0, 0}, 3);
  CHECK(small.m == 1);
  CHECK_FALSE(lindelof_inequality_check(small, {0, 0}).applicable);
}

TEST_CASE("conjugate characters give the same coefficients") {
  const ClassSystem sys = class_enumeration(QuatAlgebra::get(F3(), P("t^3-t-1")));
  const PicGroup pic(QuadDiscriminant::make(P("t^3+2*t+1")));
  const ThetaCounts th = theta_sweep(sys, 5);
  const Eigenbasis E = hecke_eigenbasis(sys);
  const HeckeSystem hs = hecke_system(sys, E.forms[0], th);
  for (const auto& chi : characters(pic, {pic.identity()})) {
    const auto a = dirichlet_coefficients(hs, chi, pic, 5);
    const auto b = dirichlet_coefficients(hs, chi.conjugate(), pic, 5);
    for (int n = 0; n <= 5; ++n) {
      CHECK(std::abs(a[n] - b[n]) < 1e-9);
      CHECK(std::abs(a[n].imag()) < 1e-9);
    }
  }
}

TEST_CASE("sigma and h") {
  CHECK(sigma(1) == 1);
  CHECK(sigma(6) == 12);
  CHECK(sigma(16) == 31);
  CHECK(lindelof_h(3, 8) == 2);
  CHECK(lindelof_h(3, 3) == 1);
  CHECK(lindelof_h(3, 7) == 2);
  CHECK(lindelof_h(3, 19) == 3);
}

TEST_CASE("auxiliary inequalities") {
  const LemmaSample x = log_integral_sample(1.0, 0.5);
  CHECK(x.lhs == doctest::Approx(x.lhs_closed).epsilon(1e-12));
  CHECK(x.lhs == doctest::Approx(0.122503).epsilon(1e-5));
  CHECK(x.rhs == doctest::Approx(3.62258).epsilon(1e-5));
  const LemmaReport a = log_integral_lemma_check(100);
  CHECK(a.samples.size() == 100);
  CHECK(a.max_route_gap < 1e-9);
  for (int h : {1, 2, 3}) {
    const LemmaReport b = kernel_bound_lemma_check(3, h, 100);
    CHECK(b.all_hold());
    CHECK(b.max_route_gap < 1e-8);
  }
}
