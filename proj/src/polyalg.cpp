#include "ffg/polyalg.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "ffg/error.hpp"

namespace ffg {

bool irreducible_test(const Poly& f) {
  if (f.is_zero()) throw PreconditionError("irreducible_test on zero polynomial");
  const int n = f.deg();
  if (n <= 0) return false;
  if (n == 1) return true;
  const Poly g = f.monic();
  const Poly x = Poly::t(g.F());
  const std::uint64_t q = g.F().order();
  Poly h = x;
  for (int i = 1; i <= n / 2; ++i) {
    h = powmod(h, q, g);
    if (!gcd(h - x, g).is_one()) return false;
  }
  return true;
}

std::uint64_t gauss_count(std::uint64_t q, int d) {
  auto mobius = [](int n) {
    int mu = 1;
    for (int p = 2; p * p <= n; ++p) {
      if (n % p == 0) {
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
      }
    }
    if (n > 1) mu = -mu;
    return mu;
  };
  long long total = 0;
  for (int e = 1; e <= d; ++e) {
    if (d % e) continue;
    long long pw = 1;
    for (int k = 0; k < d / e; ++k) pw *= static_cast<long long>(q);
    total += mobius(e) * pw;
  }
  return static_cast<std::uint64_t>(total / d);
}

const std::vector<Poly>& monic_irreducibles(const Field& f, int d) {
  if (d < 1) throw PreconditionError("monic_irreducibles requires d >= 1");
  static std::mutex mu;
  static std::map<std::pair<const Field*, int>, std::unique_ptr<std::vector<Poly>>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({&f, d});
    if (it != cache.end()) return *it->second;
  }
  auto out = std::make_unique<std::vector<Poly>>();
  std::uint64_t total = 1;
  for (int k = 0; k < d; ++k) total *= f.order();
  for (std::uint64_t k = 0; k < total; ++k) {
    Poly m = Poly::from_index(f, k, d);
    if (d > 1 && m.coeff(0) == 0) continue;
    if (irreducible_test(m)) out->push_back(std::move(m));
  }
  ensure(out->size() == gauss_count(f.order(), d), "irreducible count disagrees with Gauss formula");
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{&f, d}];
  if (!slot) slot = std::move(out);
  return *slot;
}

Factorization factor(const Poly& m) {
  if (m.is_zero()) throw PreconditionError("factor of zero polynomial");
  Factorization out;
  out.unit = m.lc();
  Poly r = m.monic();
  for (int d = 1; 2 * d <= r.deg(); ++d) {
    for (const Poly& p : monic_irreducibles(r.F(), d)) {
      if (2 * d > r.deg()) break;
      int e = 0;
      for (;;) {
        auto [qt, rem] = r.divmod(p);
        if (!rem.is_zero()) break;
        r = std::move(qt);
        ++e;
      }
      if (e) out.factors.emplace_back(p, e);
    }
  }
  if (r.deg() >= 1) {
    bool merged = false;
    for (auto& [p, e] : out.factors)
      if (p == r) {
        ++e;
        merged = true;
      }
    if (!merged) out.factors.emplace_back(r, 1);
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

int legendre(const Poly& a, const Poly& P) {
  if (!P.is_monic() || !irreducible_test(P)) throw PreconditionError("legendre requires P monic irreducible");
  Poly r = a % P;
  if (r.is_zero()) return 0;
  Poly v = powmod(r, (norm_of(P) - 1) / 2, P);
  if (v.is_one()) return 1;
  if (v.deg() == 0 && v.coeff(0) == P.F().neg(1)) return -1;
  throw InternalError("Euler criterion produced a value outside {+1,-1}");
}

std::optional<Poly> sqrt_mod_irreducible(const Poly& a, const Poly& m) {
  const Field& f = m.F();
  Poly r = a % m;
  if (r.is_zero()) return r;
  const std::uint64_t Q = norm_of(m);
  if (!powmod(r, (Q - 1) / 2, m).is_one()) return std::nullopt;
  // Tonelli-Shanks in F_q[t]/(m).
  std::uint64_t s = 0, odd = Q - 1;
  while (odd % 2 == 0) {
    odd /= 2;
    ++s;
  }
  Poly z(f);
  for (std::uint64_t k = 1;; ++k) {
    z = Poly::from_index(f, k);
    if (z.deg() >= m.deg()) throw InternalError("no non-residue found");
    if (!powmod(z, (Q - 1) / 2, m).is_one()) break;
  }
  std::uint64_t M = s;
  Poly c = powmod(z, odd, m), x = powmod(r, (odd + 1) / 2, m), b = powmod(r, odd, m);
  while (!b.is_one()) {
    std::uint64_t i = 0;
    Poly bb = b;
    while (!bb.is_one()) {
      bb = mulmod(bb, bb, m);
      ++i;
    }
    Poly g = c;
    for (std::uint64_t k = 0; k + 1 < M - i; ++k) g = mulmod(g, g, m);
    x = mulmod(x, g, m);
    c = mulmod(g, g, m);
    b = mulmod(b, c, m);
    M = i;
  }
  Poly y = (-x) % m;
  return y < x ? y : x;
}

std::optional<Poly> poly_sqrt(const Poly& f) {
  if (f.is_zero()) return f;
  if (f.deg() % 2) return std::nullopt;
  const Field& F = f.F();
  auto lead = F.sqrt(f.lc());
  if (!lead) return std::nullopt;
  // Cheap rejection: f must take square values at every point of F_q.
  for (Elem a = 0; a < F.order() && a < 8; ++a)
    if (F.quad_char(f.eval(a)) == -1) return std::nullopt;
  const int n = f.deg() / 2;
  std::vector<Elem> r(static_cast<std::size_t>(n) + 1, 0);
  r[n] = *lead;
  const Elem inv2r = F.inv(F.add(*lead, *lead));
  for (int k = 1; k <= n; ++k) {
    const int idx = 2 * n - k;
    Elem c = f.coeff(idx);
    for (int i = n - k + 1; i <= n; ++i) {
      const int j = idx - i;
      if (j > n - k && j <= n) c = F.sub(c, F.mul(r[i], r[j]));
    }
    r[n - k] = F.mul(c, inv2r);
  }
  Poly root = Poly::from_coeffs(F, r);
  if (root * root != f) return std::nullopt;
  return root;
}

namespace {

class Parser {
 public:
  Parser(const std::string& s, const Field& f, char var) : s_(s), f_(f), var_(var) {}

  Poly parse() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("empty polynomial", pos_);
    Poly r = expr();
    skip();
    if (pos_ < s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return r;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  Poly expr() {
    Poly r = Poly(f_);
    bool neg = false;
    if (peek('-')) {
      ++pos_;
      neg = true;
    } else if (peek('+')) {
      ++pos_;
    }
    Poly t = term();
    r = neg ? -t : t;
    for (;;) {
      if (peek('+')) {
        ++pos_;
        r = r + term();
      } else if (peek('-')) {
        ++pos_;
        r = r - term();
      } else {
        break;
      }
    }
    return r;
  }

  Poly term() {
    Poly r = factor_();
    while (peek('*')) {
      ++pos_;
      r = r * factor_();
    }
    skip();
    if (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == var_ || c == '(' || std::isdigit(static_cast<unsigned char>(c)))
        throw ParseError("missing '*'", pos_);
    }
    return r;
  }

  Poly factor_() {
    Poly base = primary();
    if (peek('^')) {
      ++pos_;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '-') throw ParseError("negative exponent", pos_);
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        throw ParseError("expected exponent", pos_);
      std::uint64_t e = 0;
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        e = e * 10 + static_cast<std::uint64_t>(s_[pos_] - '0');
        if (e > 4096) throw ParseError("exponent too large", start);
        ++pos_;
      }
      return base.pow(e);
    }
    return base;
  }

  Poly primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly r = expr();
      if (!peek(')')) throw ParseError("expected ')'", pos_);
      ++pos_;
      return r;
    }
    if (c == var_) {
      ++pos_;
      return Poly::t(f_);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long long v = 0;
      const long long mod = f_.order();
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        v = (v * 10 + (s_[pos_] - '0'));
        if (f_.is_prime_field()) v %= mod;
        else if (v >= mod) throw ParseError("coefficient out of range", pos_);
        ++pos_;
      }
      return Poly::constant(f_, static_cast<Elem>(v));
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  const std::string& s_;
  const Field& f_;
  char var_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const std::string& text, const Field& f, char var) { return Parser(text, f, var).parse(); }

std::string format_poly(const Poly& p, char var) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = p.deg(); i >= 0; --i) {
    const Elem c = p.coeff(i);
    if (c == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) {
      out += std::to_string(c);
      out += '*';
    }
    out += var;
    if (i > 1) {
      out += '^';
      out += std::to_string(i);
    }
  }
  return out;
}

}  // namespace ffg
