#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ffg/poly.hpp"

namespace ffg {

// D monic irreducible of odd degree; K = k(sqrt D), O_D = A[sqrt D].
struct QuadDiscriminant {
  Poly D;
  int genus = 0;

  static QuadDiscriminant make(const Poly& D);
};

int chi_K(const Poly& m, const QuadDiscriminant& D);

enum class Splitting { split, inert, ramified };
const char* to_string(Splitting s);
Splitting splitting_type(const Poly& P, const QuadDiscriminant& D);

struct LPolynomial {
  std::uint64_t q = 0;
  std::vector<long long> coeffs;  // c_0 .. c_{2g}

  long long at_one() const;
  // c_{2g-d} = q^{g-d} c_d; monitored rather than asserted.
  bool functional_equation_holds() const;
};

LPolynomial l_polynomial(const QuadDiscriminant& D);

// Number of reduced Mumford pairs, by exhaustive enumeration.
long long class_number_oracle(const QuadDiscriminant& D);
// L(1); cross-checked against the oracle whenever the oracle is cheap.
long long class_number(const QuadDiscriminant& D);
long long class_number(const QuadDiscriminant& D, const LPolynomial& L);

bool rh_roots_check(const LPolynomial& L, double tol);
// Max deviation ||u| - q^{-1/2}| over the roots of L (0 for constant L).
double rh_max_deviation(const LPolynomial& L);
bool hasse_interval_check(const QuadDiscriminant& D, long long h);

}  // namespace ffg
