#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ffg {

// Field elements are plain integers. For F_p the value is the residue; for
// F_p[u]/(m) it is sum_k c_k p^k where c_k is the coefficient of u^k.
using Elem = std::uint32_t;

// A finite field of odd characteristic. Instances are interned and live for
// the whole program, so `const Field*` may be stored freely.
class Field {
 public:
  static const Field& prime(std::uint32_t p);
  // `modulus` is monic irreducible over F_p, coefficients low to high.
  static const Field& extension(std::uint32_t p, const std::vector<std::uint32_t>& modulus);
  // The first monic irreducible of degree e in lexicographic order.
  static const Field& extension_of_degree(std::uint32_t p, unsigned e);

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return e_; }
  std::uint32_t order() const { return q_; }
  bool is_prime_field() const { return e_ == 1; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long long v) const;

  Elem add(Elem a, Elem b) const {
    if (e_ == 1) {
      Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    return add_ext(a, b);
  }
  Elem sub(Elem a, Elem b) const {
    if (e_ == 1) return a >= b ? a - b : a + p_ - b;
    return add_ext(a, neg(b));
  }
  Elem neg(Elem a) const {
    if (e_ == 1) return a == 0 ? 0 : p_ - a;
    return neg_ext(a);
  }
  Elem mul(Elem a, Elem b) const {
    if (e_ == 1) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
    return mul_ext(a, b);
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t k) const;
  // a^(p^k)
  Elem frobenius(Elem a, unsigned k = 1) const;

  // +1 for nonzero squares, -1 for non-squares, 0 for 0.
  int quad_char(Elem a) const;
  std::optional<Elem> sqrt(Elem a) const;
  Elem smallest_nonsquare() const;

  std::string to_string(Elem a) const;

 private:
  Field(std::uint32_t p, std::vector<std::uint32_t> modulus);
  Elem add_ext(Elem a, Elem b) const;
  Elem neg_ext(Elem a) const;
  Elem mul_ext(Elem a, Elem b) const;
  Elem mul_slow(Elem a, Elem b) const;
  void build_tables();

  std::uint32_t p_;
  unsigned e_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  // Log/antilog tables over a primitive element; present when q is small.
  std::vector<std::uint32_t> log_, exp_;
  std::vector<Elem> inv_;
  std::vector<std::int8_t> chi_;
  std::vector<Elem> sqrt_;

  friend struct FieldRegistry;
};

bool is_odd_prime(std::uint64_t n);

}  // namespace ffg
