#pragma once

#include <optional>
#include <vector>

#include <boost/rational.hpp>

#include "ffg/lattice.hpp"

namespace ffg {

using Rational = boost::rational<long long>;

struct IdealClass {
  QLattice ideal;  // left ideal of the base order R
  QLattice order;  // its right order R_i
  int weight = 0;  // #R_i^x / (q - 1)
};

struct ClassSystem {
  const QuatAlgebra* alg = nullptr;
  QLattice R;
  std::vector<IdealClass> classes;

  int n() const { return static_cast<int>(classes.size()); }
  std::vector<int> weights() const;
  Rational mass() const;
};

// Exact mass (q^deg P0 - 1)/(q^2 - 1).
Rational mass_formula(const QuatAlgebra& alg);
// h_{P0}; throws InternalError if the value is not an integer.
long long h_P0_formula(long long q, int deg_P0);

std::vector<Quat> units(const QLattice& order);
int unit_weight(const QLattice& order);

// Left ideals of `order` with reduced norm T. For T != P0 there are |T|+1 of
// them, listed along P^1(F_T) as z1 + a z2 (a in lex order) and then z2, where
// z1, z2 span x0 (O/TO) for the first zero divisor x0 of a lexicographic sweep.
// For T = P0 the single two-sided ideal is returned.
std::vector<QLattice> ideals_of_norm(const QLattice& order, const Poly& T);

// I * J after checking right_order(I) = left_order(J).
QLattice compose_ideals(const QLattice& I, const QLattice& J);

// alpha with I = J alpha when the two left ideals are equivalent.
std::optional<Quat> left_equivalence(const QLattice& I, const QLattice& J);
bool is_left_equivalent(const QLattice& I, const QLattice& J);

// Breadth-first search over Hecke neighbours of R, small-degree T first,
// stopping at the exact mass. Throws InternalError on overshoot or if the
// degree cap is reached.
ClassSystem class_enumeration(const QuatAlgebra& alg, int degree_cap = 4);

// Index of the class equivalent to I, with the witness alpha: I = I_j alpha.
struct Classified {
  int index;
  Quat alpha;
};
Classified classify(const ClassSystem& sys, const QLattice& I);

std::vector<Rational> measure(const ClassSystem& sys);

// <u, v> = sum_i w_i u_i v_i
double gross_pairing(const std::vector<double>& u, const std::vector<double>& v, const ClassSystem& sys);
Rational gross_pairing(const std::vector<Rational>& u, const std::vector<Rational>& v, const ClassSystem& sys);

}  // namespace ffg
