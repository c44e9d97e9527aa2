#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ffg/quat.hpp"

namespace ffg {

// Full-rank A-lattice in B: rows of an upper-triangular Hermite normal form
// (monic pivots, entries above pivots reduced) divided by a monic
// denominator, with common content removed. Equal lattices have equal forms.
class QLattice {
 public:
  QLattice() = default;

  // Lattice spanned by the given elements; throws if they do not span rank 4.
  static QLattice from_elements(const QuatAlgebra& alg, const std::vector<Quat>& gens);
  // Rows are numerators over the common denominator den.
  static QLattice from_rows(const QuatAlgebra& alg, std::vector<QVec> rows, const Poly& den);
  static QLattice standard_order(const QuatAlgebra& alg);

  const QuatAlgebra& alg() const { return *alg_; }
  const std::array<QVec, 4>& hnf() const { return H_; }
  const Poly& den() const { return den_; }
  Quat basis(int k) const { return Quat::make(*alg_, H_[k], den_); }
  std::vector<Quat> basis() const;

  bool operator==(const QLattice& o) const { return den_ == o.den_ && H_ == o.H_; }
  bool operator!=(const QLattice& o) const { return !(*this == o); }

  // Coordinates of x in the HNF basis, if x lies in the lattice.
  std::optional<std::array<Poly, 4>> coordinates(const Quat& x) const;
  bool contains(const Quat& x) const { return coordinates(x).has_value(); }

  QLattice operator*(const QLattice& o) const;
  QLattice operator+(const QLattice& o) const;
  QLattice conj() const;
  QLattice scaled(const Frac& s) const;
  QLattice left_mul(const Quat& x) const;   // x * L
  QLattice right_mul(const Quat& x) const;  // L * x
  // Dual for the coordinate dot product: {y : x.y in A for all x in L}.
  QLattice dual() const;
  QLattice intersect(const QLattice& o) const;

  // Monic generator of the fractional ideal generated by nrd(L).
  Frac nrd() const;
  // Same, before dividing by den^2: generator of the ideal of norms of the
  // numerator vectors.
  Poly numerator_norm_ideal() const;
  // conj(L) / nrd(L)
  QLattice inverse() const;
  // {x : L x in L} and {x : x L in L}, by intersecting b^-1 L over the basis.
  QLattice right_order() const;
  QLattice left_order() const;
  // conj(L) L / nrd(L): equals right_order() for locally principal ideals.
  QLattice right_order_fast() const;
  // L conj(L) / nrd(L)
  QLattice left_order_fast() const;
  bool is_order() const;
  // Generator (monic) of the reduced discriminant of an order.
  Poly reduced_discriminant() const;
  // HNF determinant over den^4 as a fraction (the index ideal).
  Frac covolume() const;

 private:
  const QuatAlgebra* alg_ = nullptr;
  std::array<QVec, 4> H_;
  Poly den_;
};

// R = A + Ai + Aj + Aij, with guards on P0 and a discriminant check.
QLattice standard_maximal_order(const QuatAlgebra& alg);

}  // namespace ffg
