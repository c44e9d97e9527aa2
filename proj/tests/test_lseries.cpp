#include <doctest.h>

#include <cmath>
#include <random>

#include "ffg/error.hpp"
#include "ffg/lseries.hpp"
#include "ffg/pic.hpp"
#include "ffg/polyalg.hpp"

using namespace ffg;

namespace {

const Field& F3() { return Field::prime(3); }
Poly P(const std::string& s, const Field& f = Field::prime(3)) { return parse_poly(s, f); }
QuadDiscriminant Q(const std::string& s, const Field& f = Field::prime(3)) { return QuadDiscriminant::make(P(s, f)); }

}  // namespace

TEST_CASE("quadratic character and splitting") {
  CHECK(chi_K(P("t+1"), Q("t")) == -1);
  CHECK(chi_K(P("t^3-t-1"), Q("t^3-t-1")) == 0);
  CHECK(chi_K(P("t^2+1"), Q("t^3-t-1")) == -1);
  CHECK(splitting_type(P("t^3+2*t+1"), Q("t")) == Splitting::inert);
  CHECK(splitting_type(P("t^3-t-1"), Q("t")) == Splitting::split);
  CHECK(splitting_type(P("t"), Q("t")) == Splitting::ramified);
  CHECK_THROWS_AS(Q("t^2+1"), PreconditionError);
  CHECK_THROWS_AS(Q("t^3+t"), PreconditionError);
  CHECK_THROWS_AS(Q("2*t"), PreconditionError);

  // complete multiplicativity on coprime-to-D inputs
  const QuadDiscriminant D = Q("t^3+2*t+1");
  std::mt19937 rng(1);
  for (int it = 0; it < 200; ++it) {
    Poly a = Poly::from_index(F3(), rng() % 243 + 1), b = Poly::from_index(F3(), rng() % 243 + 1);
    CHECK(chi_K(a * b, D) == chi_K(a, D) * chi_K(b, D));
  }
}

TEST_CASE("L-polynomials of small discriminants") {
  CHECK(l_polynomial(Q("t")).coeffs == std::vector<long long>{1});
  CHECK(l_polynomial(Q("t^3-t-1")).coeffs == std::vector<long long>{1, -3, 3});
  CHECK(l_polynomial(Q("t^3+2*t+1")).coeffs == std::vector<long long>{1, 3, 3});
  CHECK(class_number(Q("t")) == 1);
  CHECK(class_number(Q("t^3-t-1")) == 1);
  CHECK(class_number(Q("t^3+2*t+1")) == 7);
  CHECK(class_number_oracle(Q("t")) == 1);
  CHECK(class_number_oracle(Q("t^3+2*t+1")) == 7);
  CHECK(class_number_oracle(Q("t^3-t-1")) == 1);
  CHECK(rh_roots_check(l_polynomial(Q("t^3-t-1")), 1e-12));
  CHECK(rh_roots_check(l_polynomial(Q("t")), 1e-12));
  CHECK(rh_roots_check(l_polynomial(Q("t^3+2*t+1")), 1e-12));
  CHECK(hasse_interval_check(Q("t^3+2*t+1"), 7));
  CHECK(hasse_interval_check(Q("t"), 1));
  CHECK(hasse_interval_check(Q("t^3-t-1"), 1));
}

TEST_CASE("class number equals the oracle: q = 3 up to degree 7, q = 5 up to degree 5") {
  for (auto [p, maxd] : {std::pair<std::uint32_t, int>{3, 7}, {5, 5}}) {
    const Field& f = Field::prime(p);
    for (int d = 1; d <= maxd; d += 2) {
      for (const Poly& D : monic_irreducibles(f, d)) {
        auto qd = QuadDiscriminant::make(D);
        LPolynomial L = l_polynomial(qd);
        CHECK(L.coeffs[0] == 1);
        CHECK(L.functional_equation_holds());
        const long long h = L.at_one();
        CHECK(h == class_number_oracle(qd));
        CHECK(rh_roots_check(L, 1e-9));
        CHECK(hasse_interval_check(qd, h));
      }
    }
  }
}

TEST_CASE("Cantor arithmetic") {
  const QuadDiscriminant D = Q("t^3+2*t+1");
  const MumfordIdeal id = mumford_identity(F3());
  const MumfordIdeal x{P("t"), P("1")};
  REQUIRE(is_reduced(x, D));
  CHECK(cantor_mul(x, id, D) == x);
  CHECK(cantor_mul(x, cantor_inverse(x), D) == id);
  CHECK(cantor_pow(x, 7, D) == id);
  for (int k = 1; k < 7; ++k) CHECK_FALSE(cantor_pow(x, k, D) == id);

  const QuadDiscriminant D7 = Q("t^7+2*t^2+1");
  const auto elems = reduced_mumford_pairs(D7);
  CHECK(static_cast<long long>(elems.size()) == class_number(D7));
  std::mt19937 rng(2);
  for (int it = 0; it < 200; ++it) {
    const auto& a = elems[rng() % elems.size()];
    const auto& b = elems[rng() % elems.size()];
    const auto& c = elems[rng() % elems.size()];
    CHECK(cantor_mul(cantor_mul(a, b, D7), c, D7) == cantor_mul(a, cantor_mul(b, c, D7), D7));
    CHECK(cantor_mul(a, b, D7) == cantor_mul(b, a, D7));
    CHECK(cantor_mul(a, cantor_inverse(a), D7) == mumford_identity(F3()));
    CHECK(is_reduced(cantor_mul(a, b, D7), D7));
  }
}

TEST_CASE("Pic group structure and characters") {
  PicGroup triv(Q("t"));
  CHECK(triv.order() == 1);
  CHECK(characters(triv, {0}).size() == 1);

  PicGroup c7(Q("t^3+2*t+1"));
  REQUIRE(c7.order() == 7);
  CHECK(c7.elementary_divisors() == std::vector<std::uint64_t>{7});
  auto chars = characters(c7, {0});
  REQUIRE(chars.size() == 7);
  for (auto& chi : chars) {
    auto v = chi.on_generator(0);
    CHECK(std::abs(std::pow(v, 7) - 1.0) < 1e-12);
  }
  // subgroups of C_7: trivial and everything
  CHECK(characters(c7, c7.subgroup({1})).size() == 1);

  // orthogonality and structure on a larger group
  for (const char* s : {"t^5+t+1", "t^7+2*t^2+1", "t^5+2*t^4+t^2+1"}) {
    const Poly Dp = P(s);
    if (!irreducible_test(Dp)) continue;
    PicGroup G(QuadDiscriminant::make(Dp));
    std::uint64_t prod = 1;
    for (auto d : G.elementary_divisors()) prod *= d;
    CHECK(prod == G.order());
    auto all = characters(G, {0});
    REQUIRE(all.size() == G.order());
    for (std::size_t a = 0; a < all.size(); ++a)
      for (std::size_t b = 0; b < all.size(); ++b) {
        std::complex<double> s2 = 0;
        for (std::size_t e = 0; e < G.order(); ++e) s2 += all[a](e) * std::conj(all[b](e));
        const double expect = a == b ? static_cast<double>(G.order()) : 0.0;
        CHECK(std::abs(s2 - expect) < 1e-9);
      }
    // every subgroup generated by one element has the right number of characters
    for (std::size_t g = 0; g < G.order(); ++g) {
      auto H = G.subgroup({g});
      CHECK(characters(G, H).size() * H.size() == G.order());
    }
  }
}
