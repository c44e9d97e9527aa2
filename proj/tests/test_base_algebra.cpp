#include <doctest.h>

#include <random>

#include "ffg/error.hpp"
#include "ffg/field.hpp"
#include "ffg/poly.hpp"
#include "ffg/polyalg.hpp"

using namespace ffg;

namespace {

const Field& F3() { return Field::prime(3); }
Poly P(const std::string& s) { return parse_poly(s, F3()); }

Poly random_poly(std::mt19937& rng, const Field& f, int max_deg) {
  std::uniform_int_distribution<int> d(-1, max_deg);
  std::uniform_int_distribution<Elem> c(0, f.order() - 1);
  std::vector<Elem> v(static_cast<std::size_t>(d(rng) + 1));
  for (auto& x : v) x = c(rng);
  return Poly::from_coeffs(f, v);
}

// Independent irreducibility oracle: search for any monic factor of degree
// at most deg/2.
bool irreducible_by_search(const Poly& f) {
  if (f.deg() < 1) return false;
  for (int d = 1; 2 * d <= f.deg(); ++d) {
    std::uint64_t total = 1;
    for (int k = 0; k < d; ++k) total *= f.F().order();
    for (std::uint64_t k = 0; k < total; ++k)
      if (f.divisible_by(Poly::from_index(f.F(), k, d))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  const Field& f = F3();
  CHECK(f.add(2, 2) == 1);
  CHECK(f.inv(2) == 2);
  CHECK(f.smallest_nonsquare() == 2);
  CHECK_THROWS_AS(f.inv(0), PreconditionError);
  CHECK_THROWS_AS(Field::prime(4), PreconditionError);
  CHECK_THROWS_AS(Field::prime(2), PreconditionError);
}

TEST_CASE("extension field F_9 = F_3[u]/(u^2+1)") {
  const Field& f9 = Field::extension(3, {1, 0, 1});
  CHECK(f9.order() == 9);
  const Elem u = 3;  // digit 1 is the u coefficient
  CHECK(f9.pow(u, 2) == 2);
  CHECK(f9.pow(u, 4) == 1);
  CHECK_THROWS_AS(Field::extension(3, {2, 0, 1}), PreconditionError);  // u^2 - 1 is reducible
}

TEST_CASE("field axioms on samples") {
  const Field* fields[] = {&Field::prime(3), &Field::prime(5), &Field::extension(3, {1, 0, 1}),
                           &Field::extension_of_degree(3, 6), &Field::extension_of_degree(5, 3)};
  std::mt19937 rng(7);
  for (const Field* f : fields) {
    std::uniform_int_distribution<Elem> d(0, f->order() - 1);
    for (int it = 0; it < 300; ++it) {
      Elem a = d(rng), b = d(rng), c = d(rng);
      CHECK(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
      CHECK(f->add(f->add(a, b), c) == f->add(a, f->add(b, c)));
      CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
      CHECK(f->add(a, f->neg(a)) == 0);
      if (a) CHECK(f->mul(a, f->inv(a)) == 1);
      auto s = f->sqrt(f->mul(a, a));
      REQUIRE(s.has_value());
      CHECK(f->mul(*s, *s) == f->mul(a, a));
    }
  }
}

TEST_CASE("polynomial arithmetic examples") {
  auto [qt, r] = P("t^3-t-1").divmod(P("t^2+1"));
  CHECK(qt == P("t"));
  CHECK(r == P("t+2"));
  CHECK(gcd(P("t^2-1"), P("t-1")) == P("t+2"));
  CHECK(P("t^3+2*t+1").eval(1) == 1);
  CHECK_THROWS_AS(P("t").divmod(Poly(F3())), PreconditionError);
}

TEST_CASE("divmod and gcd contracts on random pairs") {
  std::mt19937 rng(11);
  for (const Field* f : {&Field::prime(3), &Field::prime(5), &Field::extension(3, {1, 0, 1})}) {
    for (int it = 0; it < 200; ++it) {
      Poly a = random_poly(rng, *f, 12), b = random_poly(rng, *f, 7);
      if (b.is_zero()) continue;
      auto [qt, r] = a.divmod(b);
      CHECK(qt * b + r == a);
      CHECK(r.deg() < b.deg());
      Poly g = gcd(a, b);
      CHECK(g.is_monic());
      CHECK(a.divisible_by(g));
      CHECK(b.divisible_by(g));
      XGcd e = xgcd(a, b);
      CHECK(e.g == g);
      CHECK(e.s * a + e.t * b == g);
    }
  }
}

TEST_CASE("irreducibility") {
  CHECK(irreducible_test(P("t^3-t-1")));
  CHECK_FALSE(irreducible_test(P("t^2-1")));
  CHECK(irreducible_test(P("t^3+2*t+1")));
  for (std::uint64_t k = 0; k < 729; ++k) {
    Poly f = Poly::from_index(F3(), k, 6);
    CHECK(irreducible_test(f) == irreducible_by_search(f));
  }
}

TEST_CASE("monic irreducible enumeration") {
  const auto& d1 = monic_irreducibles(F3(), 1);
  REQUIRE(d1.size() == 3);
  CHECK(d1[0] == P("t"));
  CHECK(d1[1] == P("t+1"));
  CHECK(d1[2] == P("t+2"));
  const auto& d2 = monic_irreducibles(F3(), 2);
  REQUIRE(d2.size() == 3);
  CHECK(d2[0] == P("t^2+1"));
  CHECK(d2[1] == P("t^2+t+2"));
  CHECK(d2[2] == P("t^2+2*t+2"));
  CHECK(monic_irreducibles(F3(), 3).size() == 8);
  // Independent Möbius count written out by hand for q = 3.
  const std::size_t expected[] = {3, 3, 8, 18, 48, 116};
  for (int d = 1; d <= 6; ++d) CHECK(monic_irreducibles(F3(), d).size() == expected[d - 1]);
  for (int d = 1; d <= 4; ++d) CHECK(monic_irreducibles(Field::prime(5), d).size() == gauss_count(5, d));
}

TEST_CASE("factorization") {
  Factorization a = factor(P("t^3+t"));
  REQUIRE(a.factors.size() == 2);
  CHECK(a.factors[0] == std::make_pair(P("t"), 1));
  CHECK(a.factors[1] == std::make_pair(P("t^2+1"), 1));
  Factorization b = factor(P("t^2-1"));
  REQUIRE(b.factors.size() == 2);
  CHECK(b.factors[0].first == P("t+1"));
  CHECK(b.factors[1].first == P("t+2"));
  Poly x6 = parse_poly("x^6+2*x^2+1", F3(), 'x');
  Factorization c = factor(x6);
  REQUIRE(c.factors.size() == 1);
  CHECK(c.factors[0] == std::make_pair(x6, 1));

  std::mt19937 rng(3);
  for (int it = 0; it < 100; ++it) {
    Poly m = random_poly(rng, F3(), 12);
    if (m.is_zero()) continue;
    Factorization fz = factor(m);
    Poly prod = Poly::constant(F3(), fz.unit);
    for (auto& [p, e] : fz.factors) {
      CHECK(p.is_monic());
      CHECK(irreducible_test(p));
      prod = prod * p.pow(static_cast<std::uint64_t>(e));
    }
    CHECK(prod == m);
  }
}

TEST_CASE("legendre symbol") {
  CHECK(legendre(P("2"), P("t+1")) == -1);
  CHECK(legendre(P("t"), P("t^3+2*t+1")) == -1);
  CHECK(legendre(P("t"), P("t")) == 0);
  CHECK_THROWS_AS(legendre(P("t"), P("t^2-1")), PreconditionError);
  const Poly M = P("t^3+2*t+1");
  for (std::uint64_t a = 1; a < 27; ++a)
    for (std::uint64_t b = 1; b < 27; ++b) {
      Poly x = Poly::from_index(F3(), a), y = Poly::from_index(F3(), b);
      CHECK(legendre(x * y, M) == legendre(x, M) * legendre(y, M));
    }
}

TEST_CASE("square roots modulo irreducibles") {
  const Poly m = P("t^4+t+2");
  REQUIRE(irreducible_test(m));
  for (std::uint64_t a = 1; a < 81; ++a) {
    Poly x = Poly::from_index(F3(), a);
    auto s = sqrt_mod_irreducible(x * x, m);
    REQUIRE(s.has_value());
    CHECK(mulmod(*s, *s, m) == (x * x) % m);
  }
}

TEST_CASE("parser and printer") {
  Poly f = P("t^3+2*t+1");
  REQUIRE(f.coeffs().size() == 4);
  CHECK(f.coeff(0) == 1);
  CHECK(f.coeff(1) == 2);
  CHECK(f.coeff(2) == 0);
  CHECK(f.coeff(3) == 1);
  CHECK(format_poly(f) == "t^3+2*t+1");
  CHECK_THROWS_AS(P("t^-1"), ParseError);
  CHECK_THROWS_AS(P("2t"), ParseError);
  try {
    P("2t");
  } catch (const ParseError& e) {
    CHECK(e.position() == 1);
  }
  CHECK_THROWS_AS(P(""), ParseError);
  CHECK_THROWS_AS(P("(t+1"), ParseError);
  CHECK_THROWS_AS(P("t+"), ParseError);
  CHECK(P(" (t + 1) * (t - 1) ") == P("t^2+2"));
  CHECK(P("-t") == P("2*t"));
  CHECK(P("(t+1)^3") == P("t^3+1"));
  CHECK(P("5*t") == P("2*t"));
  CHECK(format_poly(Poly(F3())) == "0");
  CHECK(format_poly(P("t^2-1")) == "t^2+2");

  std::mt19937 rng(5);
  for (int it = 0; it < 500; ++it) {
    Poly g = random_poly(rng, F3(), 15);
    CHECK(P(format_poly(g)) == g);
    CHECK(format_poly(P(format_poly(g))) == format_poly(g));
  }
}
