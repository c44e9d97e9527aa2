#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ffg/poly.hpp"

namespace ffg {

// Distinct-degree test: f is irreducible iff gcd(t^(q^i) - t, f) = 1 for all
// i <= deg f / 2.
bool irreducible_test(const Poly& f);

// All monic irreducibles of degree d in lexicographic order (top coefficient
// first). Results are cached per (field, degree).
const std::vector<Poly>& monic_irreducibles(const Field& f, int d);

// (1/d) sum_{e|d} mu(e) q^(d/e).
std::uint64_t gauss_count(std::uint64_t q, int d);

struct Factorization {
  Elem unit = 1;
  std::vector<std::pair<Poly, int>> factors;  // monic irreducible, ascending
};

// Trial division by ascending-degree irreducibles.
Factorization factor(const Poly& m);

// Legendre symbol (a/P) for P monic irreducible, via Euler's criterion.
int legendre(const Poly& a, const Poly& P);

// Strict grammar: sums of products with mandatory '*', '^' with non-negative
// integer exponent, parentheses, unary minus. Coefficients are reduced mod p.
Poly parse_poly(const std::string& text, const Field& f, char var = 't');
// Canonical text: decreasing degree, coefficient 1 omitted on non-constant
// terms, e.g. "t^3+2*t+1".
std::string format_poly(const Poly& p, char var = 't');

// Square root of a modulo an irreducible m (a quadratic residue), smallest of
// the two roots in the Poly order; nullopt if a is a non-residue.
std::optional<Poly> sqrt_mod_irreducible(const Poly& a, const Poly& m);

// Exact square root in F_q[t]: r with r*r = f and lc(r) the smaller root of
// lc(f), or nullopt.
std::optional<Poly> poly_sqrt(const Poly& f);

}  // namespace ffg
