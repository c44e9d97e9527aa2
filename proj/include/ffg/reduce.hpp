#pragma once

#include <functional>
#include <vector>

#include "ffg/lattice.hpp"

namespace ffg {

// A degree-reduced basis b_1..b_r (numerators over den) of a rank-4 lattice
// or of its rank-3 trace-zero part: for every coefficient vector,
// deg nrd(sum x_g b_g) = max_g (2 deg x_g + deg nrd(b_g)).
struct ReducedBasis {
  const QuatAlgebra* alg = nullptr;
  std::vector<QVec> b;
  Poly den;
  std::vector<Poly> N;              // nrd(b_g), numerator level
  std::vector<int> d;               // deg N[g]
  std::vector<std::vector<Poly>> B;  // beta(b_g, b_h)

  int rank() const { return static_cast<int>(b.size()); }
  Quat element(const std::vector<Poly>& x) const;
  // Checks the leading-form anisotropy condition that characterizes
  // reduced bases.
  bool is_reduced() const;
};

enum class NormMode { full, trace_zero };

ReducedBasis reduce_basis(const QLattice& M);
// Rank-3 trace-zero sublattice {x in M : trd x = 0}.
ReducedBasis reduce_trace_zero(const QLattice& M);
ReducedBasis reduce_rows(const QuatAlgebra& alg, std::vector<QVec> rows, const Poly& den);

// All x in M with nrd(x) = lambda * c for some lambda in F_q^x, where the
// target is given at numerator level: nrd(numerator of x) = lambda * c_num.
// Two-stage: the coordinate with the widest degree range is solved from a
// quadratic, the others are enumerated within their exact degree bounds.
// `visit` receives coefficient vectors; returning false stops the search.
// A nonzero only_lambda restricts the search to that single lambda.
void enumerate_numerator_norm(const ReducedBasis& R, const Poly& c_num,
                              const std::function<bool(const std::vector<Poly>&, Elem lambda)>& visit,
                              int extra_degree = 0, Elem only_lambda = 0);

// Convenience form returning the quaternions, with c the actual norm.
std::vector<Quat> enumerate_by_norm(const ReducedBasis& R, const Frac& c, int extra_degree = 0);
std::vector<Quat> enumerate_by_norm(const QLattice& M, const Frac& c, NormMode mode);

// Independent oracle: sweeps standard coordinates (the diagonal basis
// 1, i, j, ij is itself reduced) and filters by membership in M.
std::vector<Quat> enumerate_by_norm_naive(const QLattice& M, const Frac& c, NormMode mode);

}  // namespace ffg
