#pragma once

#include <boost/container/small_vector.hpp>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "ffg/field.hpp"

namespace ffg {

// Degree reported for the zero polynomial.
inline constexpr int kDegZero = -1;

// Dense univariate polynomial over a finite field, coefficients low to high,
// never with trailing zeros. A default-constructed Poly is zero with no field
// attached; it adopts the field of whatever it is combined with.
class Poly {
 public:
  using Coeffs = boost::container::small_vector<Elem, 12>;

  Poly() = default;
  explicit Poly(const Field& f) : f_(&f) {}
  Poly(const Field& f, std::initializer_list<Elem> low_to_high);

  static Poly from_coeffs(const Field& f, const std::vector<Elem>& low_to_high);
  static Poly constant(const Field& f, Elem c);
  static Poly one(const Field& f) { return constant(f, 1); }
  static Poly monomial(const Field& f, Elem c, int deg);
  static Poly t(const Field& f) { return monomial(f, 1, 1); }
  // Polynomial whose coefficient i is digit i of k in base q; with
  // monic_degree >= 0 the monic term t^monic_degree is added.
  static Poly from_index(const Field& f, std::uint64_t k, int monic_degree = -1);

  const Field* field() const { return f_; }
  const Field& F() const { return *f_; }
  int deg() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  Elem lc() const { return c_.empty() ? 0 : c_.back(); }
  Elem coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0; }
  const Coeffs& coeffs() const { return c_; }
  // Inverse of from_index (without the monic term).
  std::uint64_t index() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scale(Elem c) const;
  Poly shift(int k) const;  // multiply by t^k
  Poly square() const { return *this * *this; }

  // f = q*g + r with deg r < deg g.
  std::pair<Poly, Poly> divmod(const Poly& g) const;
  Poly operator/(const Poly& g) const { return divmod(g).first; }
  Poly operator%(const Poly& g) const;
  bool divisible_by(const Poly& g) const { return (*this % g).is_zero(); }

  Poly monic() const;
  Elem eval(Elem x) const;
  Poly derivative() const;
  Poly pow(std::uint64_t k) const;
  // Returns f(x^k): the coefficientwise Frobenius-free substitution t -> t^k.
  Poly substitute_power(int k) const;

  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }
  // Degree first, then coefficients from the top down.
  bool operator<(const Poly& o) const;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  const Field* pick(const Poly& o) const { return f_ ? f_ : o.f_; }

  const Field* f_ = nullptr;
  Coeffs c_;
};

Poly gcd(const Poly& a, const Poly& b);
// Returns (g, s, t) with g = s*a + t*b and g monic (or zero).
struct XGcd {
  Poly g, s, t;
};
XGcd xgcd(const Poly& a, const Poly& b);
Poly lcm(const Poly& a, const Poly& b);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
Poly powmod(const Poly& a, std::uint64_t k, const Poly& m);
// Inverse of a modulo m; throws if not coprime.
Poly invmod(const Poly& a, const Poly& m);

// q^deg(p) as an integer.
std::uint64_t norm_of(const Poly& p);

struct PolyHash {
  std::size_t operator()(const Poly& p) const;
};

}  // namespace ffg
