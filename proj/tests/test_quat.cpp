#include <doctest.h>

#include <random>
#include <set>

#include "ffg/error.hpp"
#include "ffg/lattice.hpp"
#include "ffg/polyalg.hpp"
#include "ffg/reduce.hpp"

using namespace ffg;

namespace {

const Field& F3() { return Field::prime(3); }
Poly P(const std::string& s, const Field& f = Field::prime(3)) { return parse_poly(s, f); }
const QuatAlgebra& B3() { return QuatAlgebra::get(F3(), P("t^3-t-1")); }

Poly rand_poly(std::mt19937& rng, const Field& f, int max_deg) {
  std::uniform_int_distribution<int> d(-1, max_deg);
  const int deg = d(rng);
  if (deg < 0) return Poly(f);
  std::vector<Elem> c(deg + 1);
  for (auto& e : c) e = rng() % f.order();
  return Poly::from_coeffs(f, c);
}

Quat rand_quat(std::mt19937& rng, const QuatAlgebra& B, int max_deg, bool with_den = false) {
  QVec v;
  for (auto& c : v) c = rand_poly(rng, B.F(), max_deg);
  if (B.is_zero(v)) v[0] = Poly::one(B.F());
  Poly den = Poly::one(B.F());
  if (with_den) {
    den = rand_poly(rng, B.F(), 2);
    if (den.is_zero()) den = Poly::one(B.F());
  }
  return Quat::make(B, v, den);
}

Quat basis_quat(const QuatAlgebra& B, int k) { return Quat::integral(B, B.basis(k)); }

}  // namespace

TEST_CASE("quaternion arithmetic") {
  const QuatAlgebra& B = B3();
  CHECK(B.delta() == 2);
  const Quat i = basis_quat(B, 1), j = basis_quat(B, 2), ij = basis_quat(B, 3);
  CHECK(i.trd().is_zero());
  CHECK(i.nrd() == Frac::of(Poly::one(F3())));
  CHECK(i * j == ij);
  CHECK(j * i == -ij);
  CHECK(i * i == Quat::scalar(B, Frac::of(Poly::constant(F3(), 2))));
  CHECK(j * j == Quat::scalar(B, Frac::of(B.P0())));

  std::mt19937 rng(5);
  for (int it = 0; it < 100; ++it) {
    Quat x = rand_quat(rng, B, 3, true), y = rand_quat(rng, B, 3, true), z = rand_quat(rng, B, 2);
    CHECK((x * y).nrd() == x.nrd() * y.nrd());
    CHECK((x * y) * z == x * (y * z));
    CHECK((x * y).conj() == y.conj() * x.conj());
    CHECK(x * x.conj() == Quat::scalar(B, x.nrd()));
    CHECK(x * x.inverse() == Quat::integral(B, B.one()));
    CHECK((x + y) - y == x);
  }
}

TEST_CASE("algebra guards") {
  CHECK_THROWS_AS(QuatAlgebra::get(F3(), P("t^4+t+2")), PreconditionError);
  CHECK_THROWS_AS(QuatAlgebra::get(F3(), P("t")), PreconditionError);
  CHECK_THROWS_AS(QuatAlgebra::get(F3(), P("t^3+t")), PreconditionError);
  CHECK_THROWS_AS(QuatAlgebra::get(F3(), P("t^3-t-1"), 1), PreconditionError);
  CHECK(&QuatAlgebra::get(F3(), P("t^3-t-1")) == &B3());
}

TEST_CASE("HNF of generator sets") {
  const QuatAlgebra& B = B3();
  const QLattice R = standard_maximal_order(B);
  CHECK(R.den().is_one());
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(R.hnf()[a][b] == (a == b ? Poly::one(F3()) : Poly(F3())));
  CHECK(R.reduced_discriminant() == B.P0());

  std::vector<Quat> twos;
  for (int k = 0; k < 4; ++k) twos.push_back(basis_quat(B, k).scaled(Frac::of(Poly::constant(F3(), 2))));
  CHECK(QLattice::from_elements(B, twos) == R);
  std::vector<Quat> red{Quat::scalar(B, Frac::of(P("t"))), basis_quat(B, 1), basis_quat(B, 2), basis_quat(B, 3),
                        basis_quat(B, 0)};
  CHECK(QLattice::from_elements(B, red) == R);
  CHECK_THROWS_AS(QLattice::from_elements(B, {basis_quat(B, 0), basis_quat(B, 1)}), PreconditionError);

  // idempotent and independent of generator order
  std::mt19937 rng(9);
  for (int it = 0; it < 20; ++it) {
    std::vector<Quat> g;
    for (int k = 0; k < 6; ++k) g.push_back(rand_quat(rng, B, 3, k == 0));
    QLattice L;
    try {
      L = QLattice::from_elements(B, g);
    } catch (const PreconditionError&) {
      continue;
    }
    std::shuffle(g.begin(), g.end(), rng);
    CHECK(QLattice::from_elements(B, g) == L);
    CHECK(QLattice::from_elements(B, L.basis()) == L);
    for (const auto& x : g) CHECK(L.contains(x));
  }
}

TEST_CASE("lattice algebra") {
  const QuatAlgebra& B = B3();
  const QLattice R = standard_maximal_order(B);
  CHECK(R * R == R);
  CHECK(R.nrd() == Frac::of(Poly::one(F3())));
  CHECK(R.right_order() == R);
  CHECK(R.left_order() == R);
  CHECK(R.dual().contains(basis_quat(B, 3)));

  std::mt19937 rng(13);
  for (int it = 0; it < 15; ++it) {
    Quat x = rand_quat(rng, B, 2);
    const QLattice I = R.left_mul(x);  // right ideal xR
    const QLattice J = R.right_mul(x);  // left ideal Rx
    CHECK(J.nrd() == x.nrd().ideal());
    CHECK(J.left_order() == R);
    // right_order(R x) = x^-1 R x
    CHECK(J.right_order() == R.left_mul(x.inverse()).right_mul(x));
    CHECK(J.right_order() == J.right_order_fast());
    CHECK(I.right_order() == R);
    CHECK(J * J.inverse() == J.left_order());
    CHECK(J.inverse() * J == J.right_order());
    CHECK(J.right_order().reduced_discriminant() == B.P0());
    // covariance with a second random element
    Quat y = rand_quat(rng, B, 2);
    CHECK(J.right_mul(y).right_order() == J.right_order().left_mul(y.inverse()).right_mul(y));
    // intersection against the dual route
    const QLattice K = R.right_mul(y);
    const QLattice S = J.intersect(K);
    for (const auto& b : S.basis()) {
      CHECK(J.contains(b));
      CHECK(K.contains(b));
    }
    CHECK((J + K).contains(x));
  }
}

TEST_CASE("degree reduction") {
  const QuatAlgebra& B = B3();
  const QLattice R = standard_maximal_order(B);
  ReducedBasis S = reduce_basis(R);
  CHECK(S.is_reduced());
  CHECK(S.d == std::vector<int>{0, 0, 3, 3});

  std::mt19937 rng(17);
  for (int it = 0; it < 20; ++it) {
    // random unimodular mixing of the standard basis
    std::vector<QVec> rows{B.basis(0), B.basis(1), B.basis(2), B.basis(3)};
    for (int step = 0; step < 6; ++step) {
      int a = rng() % 4, b = rng() % 4;
      if (a == b) continue;
      rows[a] = B.add(rows[a], B.scale(rows[b], rand_poly(rng, F3(), 2)));
    }
    ReducedBasis T = reduce_rows(B, rows, Poly::one(F3()));
    CHECK(T.is_reduced());
    CHECK(T.d == S.d);
    CHECK(QLattice::from_rows(B, T.b, T.den) == R);
  }

  // degree identity on an ideal with a nontrivial denominator
  Quat x = rand_quat(rng, B, 2, true);
  const QLattice J = R.right_mul(x);
  ReducedBasis T = reduce_basis(J);
  CHECK(T.is_reduced());
  for (int it = 0; it < 200; ++it) {
    std::vector<Poly> c(4);
    int expect = -1;
    for (int g = 0; g < 4; ++g) {
      c[g] = rand_poly(rng, F3(), 3);
      if (!c[g].is_zero()) expect = std::max(expect, 2 * c[g].deg() + T.d[g]);
    }
    QVec v = B.zero();
    for (int g = 0; g < 4; ++g) v = B.add(v, B.scale(T.b[g], c[g]));
    if (expect < 0) continue;
    CHECK(B.nrd(v).deg() == expect);
  }
}

TEST_CASE("norm enumeration") {
  const QuatAlgebra& B = B3();
  const QLattice R = standard_maximal_order(B);
  auto units = enumerate_by_norm(R, Frac::of(Poly::one(F3())), NormMode::full);
  CHECK(units.size() == 8);
  for (const auto& u : units) {
    CHECK(u.den.is_one());
    CHECK(u.x[2].is_zero());
    CHECK(u.x[3].is_zero());
    CHECK(u.x[0].deg() <= 0);
    CHECK(u.x[1].deg() <= 0);
  }

  auto tz = enumerate_by_norm(R, Frac::of(B.P0()), NormMode::trace_zero);
  const Quat j = basis_quat(B, 2);
  CHECK(std::find(tz.begin(), tz.end(), j) != tz.end());
  for (const auto& y : tz) CHECK(y.trd().is_zero());

  // oracle equivalence for deg c <= 3 on R and on nonprincipal-looking ideals
  std::mt19937 rng(23);
  std::vector<QLattice> lattices{R};
  for (int k = 0; k < 2; ++k) {
    Quat x = rand_quat(rng, B, 1);
    lattices.push_back(R.right_mul(x).scaled(x.nrd().inverse()));
    lattices.push_back(R.right_mul(x) + R.right_mul(rand_quat(rng, B, 1)));
  }
  for (const QLattice& M : lattices) {
    const Frac base = M.nrd();
    for (int d = 0; d <= 3; ++d)
      for (const Poly& T : d == 0 ? std::vector<Poly>{Poly::one(F3())} : monic_irreducibles(F3(), d)) {
        const Frac c = base * Frac::of(T);
        for (NormMode mode : {NormMode::full, NormMode::trace_zero}) {
          auto fast = enumerate_by_norm(M, c, mode);
          auto slow = enumerate_by_norm_naive(M, c, mode);
          CHECK(fast == slow);
        }
      }
  }

  // same set from a re-mixed basis of the same lattice
  std::vector<QVec> rows(R.hnf().begin(), R.hnf().end());
  rows[3] = B.add(rows[3], B.scale(rows[0], P("t+1")));
  rows[2] = B.add(rows[2], B.scale(rows[1], P("2*t")));
  ReducedBasis T = reduce_rows(B, rows, Poly::one(F3()));
  CHECK(enumerate_by_norm(T, Frac::of(P("t^3+2*t+1"))) ==
        enumerate_by_norm(R, Frac::of(P("t^3+2*t+1")), NormMode::full));
}
