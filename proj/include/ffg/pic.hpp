#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "ffg/lseries.hpp"
#include "ffg/poly.hpp"

namespace ffg {

// Ideal (a, b + sqrt D) of O_D: a monic, deg b < deg a, b^2 = D mod a.
struct MumfordIdeal {
  Poly a, b;

  bool operator==(const MumfordIdeal& o) const { return a == o.a && b == o.b; }
  bool operator<(const MumfordIdeal& o) const { return a == o.a ? b < o.b : a < o.a; }
};

bool is_mumford(const MumfordIdeal& x, const QuadDiscriminant& D);
bool is_reduced(const MumfordIdeal& x, const QuadDiscriminant& D);
MumfordIdeal mumford_identity(const Field& f);
MumfordIdeal cantor_inverse(const MumfordIdeal& x);
// Composition followed by reduction until deg a <= g.
MumfordIdeal cantor_mul(const MumfordIdeal& x, const MumfordIdeal& y, const QuadDiscriminant& D);
// Reduction of an arbitrary (possibly unreduced) Mumford pair.
MumfordIdeal cantor_reduce(MumfordIdeal x, const QuadDiscriminant& D);
MumfordIdeal cantor_pow(const MumfordIdeal& x, std::uint64_t k, const QuadDiscriminant& D);
std::string to_string(const MumfordIdeal& x);

// All reduced pairs ordered by (deg a, a, b).
std::vector<MumfordIdeal> reduced_mumford_pairs(const QuadDiscriminant& D);

class ClassCharacter;

class PicGroup {
 public:
  static constexpr std::size_t kDefaultCap = 5000;

  explicit PicGroup(const QuadDiscriminant& D, std::size_t cap = kDefaultCap);

  const QuadDiscriminant& disc() const { return D_; }
  std::size_t order() const { return elems_.size(); }
  const std::vector<MumfordIdeal>& elements() const { return elems_; }
  const MumfordIdeal& element(std::size_t i) const { return elems_[i]; }
  std::size_t index_of(const MumfordIdeal& x) const;
  std::size_t mul(std::size_t i, std::size_t j) const;
  std::size_t inverse(std::size_t i) const;
  std::size_t identity() const { return 0; }
  std::size_t element_order(std::size_t i) const;

  // Basis of independent cyclic factors of prime-power order, and each
  // element's exponent vector in that basis. Computed on first use.
  const std::vector<std::size_t>& basis() const;
  const std::vector<std::uint64_t>& elementary_divisors() const;
  const std::vector<std::vector<std::uint64_t>>& coordinates() const;

  // Closure of the given generators (element indices), sorted.
  std::vector<std::size_t> subgroup(const std::vector<std::size_t>& gens) const;

 private:
  void compute_structure() const;

  QuadDiscriminant D_;
  std::vector<MumfordIdeal> elems_;
  std::uint64_t key(const MumfordIdeal& x) const;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  mutable bool have_structure_ = false;
  mutable std::vector<std::size_t> basis_;
  mutable std::vector<std::uint64_t> divisors_;
  mutable std::vector<std::vector<std::uint64_t>> coords_;
};

class ClassCharacter {
 public:
  ClassCharacter(const PicGroup& G, std::vector<std::uint64_t> exponents);

  const std::vector<std::uint64_t>& exponents() const { return k_; }
  std::uint64_t order() const { return order_; }
  std::complex<double> operator()(std::size_t elem) const;
  // Value on the i-th basis generator.
  std::complex<double> on_generator(std::size_t i) const;
  bool is_trivial_on(const std::vector<std::size_t>& elems) const;
  ClassCharacter conjugate() const;
  // Position in the lexicographic enumeration of all characters.
  std::uint64_t id() const;

 private:
  const PicGroup* G_;
  std::vector<std::uint64_t> k_;
  std::uint64_t order_ = 1;
};

// Exactly the [Pic:G] characters trivial on G, in lexicographic exponent order.
std::vector<ClassCharacter> characters(const PicGroup& P, const std::vector<std::size_t>& G);

}  // namespace ffg
