#pragma once

#include <complex>
#include <vector>

namespace ffg {

// Roots of sum_k c_k z^k (low to high) via companion-matrix eigenvalues,
// polished by Newton steps in long double. Trailing zero coefficients are
// dropped; zero roots are not expected.
std::vector<std::complex<double>> poly_roots(const std::vector<std::complex<double>>& coeffs);

// Distinct roots of an integer polynomial: the squarefree part is taken
// first with exact rational gcd so that repeated roots stay well conditioned.
std::vector<std::complex<double>> integer_poly_roots(const std::vector<long long>& coeffs);

}  // namespace ffg
