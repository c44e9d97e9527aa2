#include "ffg/field.hpp"

#include <deque>
#include <map>
#include <memory>
#include <mutex>

#include "ffg/error.hpp"
#include "ffg/poly.hpp"
#include "ffg/polyalg.hpp"

namespace ffg {

namespace {

constexpr std::uint32_t kTableLimit = 1u << 22;

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_odd_prime(std::uint64_t n) {
  if (n < 3 || n % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

struct FieldRegistry {
  std::mutex mu;
  std::map<std::pair<std::uint32_t, std::vector<std::uint32_t>>, std::unique_ptr<Field>> fields;

  static FieldRegistry& instance() {
    static FieldRegistry reg;
    return reg;
  }

  const Field& get(std::uint32_t p, const std::vector<std::uint32_t>& modulus) {
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, modulus);
    auto it = fields.find(key);
    if (it != fields.end()) return *it->second;
    std::unique_ptr<Field> f(new Field(p, modulus));
    const Field& ref = *f;
    fields.emplace(std::move(key), std::move(f));
    return ref;
  }
};

Field::Field(std::uint32_t p, std::vector<std::uint32_t> modulus)
    : p_(p), e_(modulus.empty() ? 1u : static_cast<unsigned>(modulus.size() - 1)),
      q_(1), modulus_(std::move(modulus)) {
  std::uint64_t q = 1;
  for (unsigned k = 0; k < e_; ++k) {
    q *= p_;
    require(q < (1ull << 31), "field order too large");
  }
  q_ = static_cast<std::uint32_t>(q);
  if (q_ <= kTableLimit) build_tables();
}

const Field& Field::prime(std::uint32_t p) {
  require(is_odd_prime(p), "field characteristic must be an odd prime, got " + std::to_string(p));
  require(p < (1u << 16), "characteristic too large");
  return FieldRegistry::instance().get(p, {});
}

const Field& Field::extension(std::uint32_t p, const std::vector<std::uint32_t>& modulus) {
  const Field& base = prime(p);
  require(modulus.size() >= 2, "extension modulus must have degree >= 1");
  if (modulus.size() == 2) return base;
  require(modulus.back() == 1, "extension modulus must be monic");
  Poly m = Poly::from_coeffs(base, std::vector<Elem>(modulus.begin(), modulus.end()));
  require(m.coeffs().size() == modulus.size(), "extension modulus has out-of-range coefficients");
  require(irreducible_test(m), "extension modulus is not irreducible");
  return FieldRegistry::instance().get(p, modulus);
}

const Field& Field::extension_of_degree(std::uint32_t p, unsigned e) {
  const Field& base = prime(p);
  require(e >= 1, "extension degree must be positive");
  if (e == 1) return base;
  for (const Poly& m : monic_irreducibles(base, static_cast<int>(e))) {
    std::vector<std::uint32_t> mod(m.coeffs().begin(), m.coeffs().end());
    return extension(p, mod);
  }
  throw InternalError("no irreducible polynomial found");
}

Elem Field::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

Elem Field::add_ext(Elem a, Elem b) const {
  Elem out = 0, scale = 1;
  for (unsigned k = 0; k < e_; ++k) {
    Elem da = a % p_, db = b % p_;
    a /= p_;
    b /= p_;
    Elem s = da + db;
    if (s >= p_) s -= p_;
    out += s * scale;
    scale *= p_;
  }
  return out;
}

Elem Field::neg_ext(Elem a) const {
  Elem out = 0, scale = 1;
  for (unsigned k = 0; k < e_; ++k) {
    Elem d = a % p_;
    a /= p_;
    out += (d == 0 ? 0 : p_ - d) * scale;
    scale *= p_;
  }
  return out;
}

Elem Field::mul_slow(Elem a, Elem b) const {
  std::vector<std::uint64_t> x(e_), y(e_), z(2 * e_, 0);
  for (unsigned k = 0; k < e_; ++k) {
    x[k] = a % p_;
    a /= p_;
    y[k] = b % p_;
    b /= p_;
  }
  for (unsigned i = 0; i < e_; ++i)
    for (unsigned j = 0; j < e_; ++j) z[i + j] = (z[i + j] + x[i] * y[j]) % p_;
  for (unsigned d = 2 * e_ - 1; d >= e_; --d) {
    std::uint64_t c = z[d] % p_;
    if (c == 0) continue;
    z[d] = 0;
    for (unsigned k = 0; k < e_; ++k)
      z[d - e_ + k] = (z[d - e_ + k] + (p_ - c) * modulus_[k]) % p_;
  }
  Elem out = 0, scale = 1;
  for (unsigned k = 0; k < e_; ++k) {
    out += static_cast<Elem>(z[k] % p_) * scale;
    scale *= p_;
  }
  return out;
}

Elem Field::mul_ext(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  if (!log_.empty()) return exp_[log_[a] + log_[b]];
  return mul_slow(a, b);
}

void Field::build_tables() {
  const std::uint32_t n = q_ - 1;
  inv_.assign(q_, 0);
  chi_.assign(q_, 0);
  sqrt_.assign(q_, 0);
  if (e_ == 1) {
    for (Elem a = 1; a < q_; ++a) {
      Elem r = 1, b = a;
      std::uint64_t k = q_ - 2;
      while (k) {
        if (k & 1) r = mul(r, b);
        b = mul(b, b);
        k >>= 1;
      }
      inv_[a] = r;
    }
  } else {
    // Find a primitive element with the slow multiplication, then tabulate.
    auto slow_pow = [&](Elem g, std::uint64_t k) {
      Elem r = 1;
      while (k) {
        if (k & 1) r = mul_slow(r, g);
        g = mul_slow(g, g);
        k >>= 1;
      }
      return r;
    };
    auto factors = prime_factors(n);
    Elem gen = 0;
    for (Elem g = 2; g < q_ && gen == 0; ++g) {
      bool ok = true;
      for (auto r : factors)
        if (slow_pow(g, n / r) == 1) {
          ok = false;
          break;
        }
      if (ok) gen = g;
    }
    ensure(gen != 0, "no primitive element found");
    log_.assign(q_, 0);
    exp_.assign(2 * static_cast<std::size_t>(n), 0);
    Elem x = 1;
    for (std::uint32_t k = 0; k < n; ++k) {
      exp_[k] = x;
      exp_[k + n] = x;
      log_[x] = k;
      x = mul_slow(x, gen);
    }
    ensure(x == 1, "primitive element has wrong order");
    for (Elem a = 1; a < q_; ++a) inv_[a] = exp_[(n - log_[a]) % n];
  }
  for (Elem a = 1; a < q_; ++a) chi_[a] = -1;
  for (Elem a = q_ - 1; a >= 1; --a) {
    Elem s = mul(a, a);
    chi_[s] = 1;
    sqrt_[s] = a;  // ends on the smallest root
  }
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw PreconditionError("division by zero in finite field");
  if (!inv_.empty()) return inv_[a];
  return pow(a, q_ - 2);
}

Elem Field::pow(Elem a, std::uint64_t k) const {
  Elem r = 1;
  while (k) {
    if (k & 1) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

Elem Field::frobenius(Elem a, unsigned k) const {
  for (unsigned i = 0; i < k % e_; ++i) a = pow(a, p_);
  return a;
}

int Field::quad_char(Elem a) const {
  if (a == 0) return 0;
  if (!chi_.empty()) return chi_[a];
  return pow(a, (q_ - 1) / 2) == 1 ? 1 : -1;
}

std::optional<Elem> Field::sqrt(Elem a) const {
  if (a == 0) return Elem{0};
  if (quad_char(a) != 1) return std::nullopt;
  if (!sqrt_.empty()) return sqrt_[a];
  // Tonelli-Shanks for fields beyond the table limit.
  std::uint64_t s = 0, t = q_ - 1;
  while (t % 2 == 0) {
    t /= 2;
    ++s;
  }
  Elem z = smallest_nonsquare();
  Elem m = static_cast<Elem>(s), c = pow(z, t), x = pow(a, (t + 1) / 2), b = pow(a, t);
  while (b != 1) {
    Elem i = 0, bb = b;
    while (bb != 1) {
      bb = mul(bb, bb);
      ++i;
    }
    Elem g = c;
    for (Elem k = 0; k + 1 < m - i; ++k) g = mul(g, g);
    x = mul(x, g);
    c = mul(g, g);
    b = mul(b, c);
    m = i;
  }
  Elem y = neg(x);
  return std::min(x, y);
}

Elem Field::smallest_nonsquare() const {
  for (Elem a = 1; a < q_; ++a)
    if (quad_char(a) == -1) return a;
  throw InternalError("field has no non-square");
}

std::string Field::to_string(Elem a) const { return std::to_string(a); }

}  // namespace ffg
