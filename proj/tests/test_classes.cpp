#include <doctest.h>

#include <cmath>

#include "ffg/brandt.hpp"
#include "ffg/classes.hpp"
#include "ffg/error.hpp"
#include "ffg/polyalg.hpp"

using namespace ffg;

namespace {

const Field& F3() { return Field::prime(3); }
Poly P(const std::string& s, const Field& f = Field::prime(3)) { return parse_poly(s, f); }
const QuatAlgebra& B3() { return QuatAlgebra::get(F3(), P("t^3-t-1")); }

const ClassSystem& sys3() {
  static const ClassSystem s = class_enumeration(B3());
  return s;
}

}  // namespace

TEST_CASE("mass and dimension formulas") {
  CHECK(h_P0_formula(3, 3) == 4);
  CHECK(h_P0_formula(3, 5) == 31);
  CHECK(h_P0_formula(3, 4) == 10);
  CHECK(mass_formula(B3()) == Rational(13, 4));
  CHECK(unit_weight(standard_maximal_order(B3())) == 4);
}

TEST_CASE("ideals of norm T") {
  const QLattice R = standard_maximal_order(B3());
  auto I = ideals_of_norm(R, P("t"));
  CHECK(I.size() == 4);
  for (std::size_t a = 0; a < I.size(); ++a) {
    CHECK(I[a].nrd() == Frac::of(P("t")));
    CHECK(I[a].left_order() == R);
    for (std::size_t b = a + 1; b < I.size(); ++b) CHECK(I[a] != I[b]);
  }
  CHECK(ideals_of_norm(R, P("t^2+1")).size() == 10);
  auto J = ideals_of_norm(R, B3().P0());
  REQUIRE(J.size() == 1);
  CHECK(J[0].left_order() == R);
  CHECK(J[0].right_order() == R);
  CHECK(J[0] * J[0] == R.scaled(Frac::of(B3().P0())));
}

TEST_CASE("left equivalence") {
  const QLattice R = standard_maximal_order(B3());
  const QLattice I = ideals_of_norm(R, P("t"))[1];
  CHECK(is_left_equivalent(I, I));
  Quat x = Quat::make(B3(), {P("t+1"), P("2"), P("1"), P("t")}, P("t^2+1"));
  auto a = left_equivalence(I.right_mul(x), I);
  REQUIRE(a.has_value());
  CHECK(I.right_mul(*a) == I.right_mul(x));
  CHECK(is_left_equivalent(R.right_mul(x), R));
}

TEST_CASE("class enumeration, cubic P0") {
  const ClassSystem& s = sys3();
  CHECK(s.n() == 4);
  CHECK(s.mass() == Rational(13, 4));
  auto w = s.weights();
  std::sort(w.begin(), w.end());
  CHECK(w == std::vector<int>{1, 1, 1, 4});
  for (int i = 0; i < s.n(); ++i) {
    CHECK(s.classes[i].order == s.classes[i].ideal.right_order());
    CHECK(s.classes[i].order.reduced_discriminant() == B3().P0());
    CHECK(s.classes[i].ideal.left_order() == s.R);
    for (int j = i + 1; j < s.n(); ++j) CHECK_FALSE(is_left_equivalent(s.classes[i].ideal, s.classes[j].ideal));
  }
  auto mu = measure(s);
  Rational tot(0);
  for (auto& m : mu) {
    CHECK(m > 0);
    tot += m;
  }
  CHECK(tot == Rational(1));
  for (int i = 0; i < s.n(); ++i) CHECK(mu[i] == (s.classes[i].weight == 4 ? Rational(1, 13) : Rational(4, 13)));
}

TEST_CASE("Brandt matrices") {
  const ClassSystem& s = sys3();
  std::vector<IntMatrix> Bs;
  for (int d = 1; d <= 2; ++d)
    for (const Poly& T : monic_irreducibles(F3(), d)) {
      IntMatrix B = brandt_matrix(s, T);
      CHECK(B == brandt_matrix_neighbors(s, T));
      for (const auto& row : B) {
        long long sum = 0;
        for (long long v : row) {
          CHECK(v >= 0);
          sum += v;
        }
        CHECK(sum == static_cast<long long>(norm_of(T)) + 1);
      }
      CHECK(weighted_self_adjoint(B, s));
      // e* is a left eigenvector
      for (int j = 0; j < s.n(); ++j) {
        Rational col(0);
        for (int i = 0; i < s.n(); ++i) col += Rational(B[i][j], s.classes[i].weight);
        CHECK(col == Rational(norm_of(T) + 1, s.classes[j].weight));
      }
      Bs.push_back(std::move(B));
    }
  for (const auto& A : Bs)
    for (const auto& B : Bs) CHECK(multiply(A, B) == multiply(B, A));

  // Atkin-Lehner: an involution
  IntMatrix W = brandt_matrix(s, B3().P0());
  IntMatrix I(s.n(), std::vector<long long>(s.n(), 0));
  for (int i = 0; i < s.n(); ++i) I[i][i] = 1;
  CHECK(multiply(W, W) == I);

  // theta route, including a composite m
  ThetaCounts th = theta_sweep(s, 2);
  for (int d = 1; d <= 2; ++d)
    for (const Poly& T : monic_irreducibles(F3(), d)) CHECK(brandt_from_theta(s, th, T) == brandt_matrix(s, T));
  CHECK(brandt_from_theta(s, th, P("t^2")) == [&] {
    IntMatrix B1 = brandt_matrix(s, P("t"));
    IntMatrix B2 = multiply(B1, B1);
    for (int i = 0; i < s.n(); ++i) B2[i][i] -= 3;
    return B2;
  }());
}

TEST_CASE("Hecke eigenbasis") {
  const ClassSystem& s = sys3();
  Eigenbasis E = hecke_eigenbasis(s);
  CHECK(E.forms.size() == 3);
  CHECK(std::abs(gross_pairing(E.eisenstein, E.eisenstein, s) - 1) < 1e-12);
  for (std::size_t a = 0; a < E.forms.size(); ++a) {
    CHECK(std::abs(gross_pairing(E.forms[a], E.forms[a], s) - 1) < 1e-9);
    CHECK(std::abs(gross_pairing(E.forms[a], E.eisenstein, s)) < 1e-9);
    for (std::size_t b = a + 1; b < E.forms.size(); ++b) CHECK(std::abs(gross_pairing(E.forms[a], E.forms[b], s)) < 1e-9);
    for (std::size_t k = 0; k < E.Ts.size(); ++k)
      CHECK(std::abs(E.lambda[a][k]) <= 2 * std::sqrt(static_cast<double>(norm_of(E.Ts[k]))) + 1e-9);
  }
  std::vector<double> e(s.n(), 0.0);
  e[0] = 1;  // e~_1 against e*
  std::vector<double> estar(s.n());
  for (int i = 0; i < s.n(); ++i) estar[i] = 1.0 / s.classes[i].weight;
  CHECK(std::abs(gross_pairing(e, estar, s) - 1) < 1e-12);
  CHECK(gross_pairing(std::vector<Rational>(estar.size(), 0), std::vector<Rational>(estar.size(), 0), s) == Rational(0));
}
