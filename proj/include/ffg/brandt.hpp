#pragma once

#include <vector>

#include "ffg/classes.hpp"

namespace ffg {

using IntMatrix = std::vector<std::vector<long long>>;
using RealMatrix = std::vector<std::vector<double>>;

// B(T)_ij = #{x in I_j^-1 I_i : nrd(x) = lambda T nrd(I_j^-1 I_i)} / #R_j^x.
// Rows sum to |T|+1; w_j B_ij = w_i B_ji. As an operator on class vectors
// (t_T e_i = sum_j B_ij e_j) it acts by the transpose. T = P0 gives the
// Atkin-Lehner involution.
IntMatrix brandt_matrix(const ClassSystem& sys, const Poly& T);
// Same matrix from the |T|+1 neighbours I_i J of each class.
IntMatrix brandt_matrix_neighbors(const ClassSystem& sys, const Poly& T);

// For all x != 0 in I_j^-1 I_i with deg(nrd(x)/nrd(I_j^-1 I_i)) <= cap,
// counted by the monic generator m of that quotient. brandt_from_theta
// recovers B(T) for any monic m of degree <= cap, prime or not.
struct ThetaCounts {
  int cap = 0;
  int n = 0;
  // counts[i][j][index of m], m monic of degree <= cap, by Poly::index of m
  // offset per degree; only i <= j is stored.
  std::vector<std::vector<std::vector<long long>>> counts;
  long long count(int i, int j, const Poly& m) const;
};
ThetaCounts theta_sweep(const ClassSystem& sys, int cap);
IntMatrix brandt_from_theta(const ClassSystem& sys, const ThetaCounts& th, const Poly& m);

bool weighted_self_adjoint(const IntMatrix& B, const ClassSystem& sys);
IntMatrix multiply(const IntMatrix& A, const IntMatrix& B);

struct JacobiResult {
  std::vector<double> values;  // ascending
  RealMatrix vectors;          // vectors[k] belongs to values[k]
};
// Cyclic Jacobi rotations on a symmetric matrix.
JacobiResult jacobi_eigen(RealMatrix S, double tol = 1e-14, int max_sweeps = 100);

struct Eigenbasis {
  std::vector<double> eisenstein;  // e* / sqrt(<e*, e*>)
  RealMatrix forms;                // cusp eigenforms f~, <f~, f~> = 1
  std::vector<Poly> Ts;            // operators used for separation
  RealMatrix lambda;               // lambda[f][k] for Ts[k]
  std::vector<double> lambda_P0;   // Atkin-Lehner sign per form
};
// Simultaneous eigenbasis of the Hecke operators, adding T in (deg, lex)
// order up to degree_cap until the spectrum of a generic combination is simple.
Eigenbasis hecke_eigenbasis(const ClassSystem& sys, int degree_cap = 3);
// <B(T)^t f, f> and the residual |B(T)^t f - lambda f|.
std::pair<double, double> eigenvalue(const IntMatrix& B, const std::vector<double>& f, const ClassSystem& sys);

}  // namespace ffg
