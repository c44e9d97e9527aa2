#include "ffg/poly.hpp"

#include <algorithm>

#include "ffg/error.hpp"

namespace ffg {

Poly::Poly(const Field& f, std::initializer_list<Elem> low_to_high) : f_(&f) {
  for (Elem c : low_to_high) c_.push_back(c % f.order());
  trim();
}

Poly Poly::from_coeffs(const Field& f, const std::vector<Elem>& low_to_high) {
  Poly r(f);
  r.c_.assign(low_to_high.begin(), low_to_high.end());
  for (auto& c : r.c_) c %= f.order();
  r.trim();
  return r;
}

Poly Poly::constant(const Field& f, Elem c) {
  Poly r(f);
  c %= f.order();
  if (c != 0) r.c_.push_back(c);
  return r;
}

Poly Poly::monomial(const Field& f, Elem c, int deg) {
  Poly r(f);
  c %= f.order();
  if (c == 0 || deg < 0) return r;
  r.c_.assign(static_cast<std::size_t>(deg) + 1, 0);
  r.c_[deg] = c;
  return r;
}

Poly Poly::from_index(const Field& f, std::uint64_t k, int monic_degree) {
  Poly r(f);
  const std::uint64_t q = f.order();
  while (k) {
    r.c_.push_back(static_cast<Elem>(k % q));
    k /= q;
  }
  if (monic_degree >= 0) {
    if (static_cast<int>(r.c_.size()) > monic_degree)
      throw PreconditionError("index too large for the requested monic degree");
    r.c_.resize(static_cast<std::size_t>(monic_degree) + 1, 0);
    r.c_[monic_degree] = 1;
  }
  r.trim();
  return r;
}

std::uint64_t Poly::index() const {
  std::uint64_t k = 0;
  const std::uint64_t q = f_ ? f_->order() : 0;
  for (int i = deg(); i >= 0; --i) k = k * q + c_[i];
  return k;
}

Poly Poly::operator+(const Poly& o) const {
  const Field* f = pick(o);
  if (!f) return Poly();
  Poly r(*f);
  const std::size_t n = std::max(c_.size(), o.c_.size());
  r.c_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Elem a = i < c_.size() ? c_[i] : 0;
    Elem b = i < o.c_.size() ? o.c_[i] : 0;
    r.c_[i] = f->add(a, b);
  }
  r.trim();
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  const Field* f = pick(o);
  if (!f) return Poly();
  Poly r(*f);
  const std::size_t n = std::max(c_.size(), o.c_.size());
  r.c_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Elem a = i < c_.size() ? c_[i] : 0;
    Elem b = i < o.c_.size() ? o.c_[i] : 0;
    r.c_[i] = f->sub(a, b);
  }
  r.trim();
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = f_->neg(c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  const Field* f = pick(o);
  if (!f || c_.empty() || o.c_.empty()) return f ? Poly(*f) : Poly();
  Poly r(*f);
  const std::size_t n = c_.size() + o.c_.size() - 1;
  if (f->is_prime_field()) {
    const std::uint64_t p = f->characteristic();
    boost::container::small_vector<std::uint64_t, 24> acc(n, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      const std::uint64_t a = c_[i];
      if (!a) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) acc[i + j] += a * o.c_[j];
    }
    r.c_.resize(n);
    for (std::size_t k = 0; k < n; ++k) r.c_[k] = static_cast<Elem>(acc[k] % p);
  } else {
    r.c_.assign(n, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (!c_[i]) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j)
        r.c_[i + j] = f->add(r.c_[i + j], f->mul(c_[i], o.c_[j]));
    }
  }
  r.trim();
  return r;
}

Poly Poly::scale(Elem c) const {
  if (!f_) return Poly();
  if (c == 0) return Poly(*f_);
  Poly r = *this;
  for (auto& x : r.c_) x = f_->mul(x, c);
  return r;
}

Poly Poly::shift(int k) const {
  if (c_.empty() || k == 0) return *this;
  Poly r(*f_);
  if (k > 0) {
    r.c_.assign(static_cast<std::size_t>(k), 0);
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  } else {
    if (-k < static_cast<int>(c_.size())) r.c_.assign(c_.begin() + (-k), c_.end());
  }
  return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& g) const {
  if (g.is_zero()) throw PreconditionError("division by zero polynomial");
  const Field& f = *g.f_;
  Poly r = *this;
  if (!r.f_) r.f_ = g.f_;
  Poly qt(f);
  const int dg = g.deg();
  if (r.deg() < dg) return {qt, r};
  const Elem ginv = f.inv(g.lc());
  qt.c_.assign(static_cast<std::size_t>(r.deg() - dg) + 1, 0);
  for (int d = r.deg(); d >= dg; --d) {
    Elem c = r.c_[d];
    if (c == 0) continue;
    c = f.mul(c, ginv);
    qt.c_[d - dg] = c;
    const Elem nc = f.neg(c);
    for (int k = 0; k <= dg; ++k) r.c_[d - dg + k] = f.add(r.c_[d - dg + k], f.mul(nc, g.c_[k]));
  }
  r.trim();
  qt.trim();
  return {qt, r};
}

Poly Poly::operator%(const Poly& g) const {
  if (g.is_zero()) throw PreconditionError("division by zero polynomial");
  if (deg() < g.deg()) {
    Poly r = *this;
    if (!r.f_) r.f_ = g.f_;
    return r;
  }
  const Field& f = *g.f_;
  Poly r = *this;
  const int dg = g.deg();
  const Elem ginv = f.inv(g.lc());
  for (int d = r.deg(); d >= dg; --d) {
    Elem c = r.c_[d];
    if (c == 0) continue;
    const Elem nc = f.neg(f.mul(c, ginv));
    for (int k = 0; k <= dg; ++k) r.c_[d - dg + k] = f.add(r.c_[d - dg + k], f.mul(nc, g.c_[k]));
  }
  r.trim();
  return r;
}

Poly Poly::monic() const {
  if (c_.empty() || c_.back() == 1) return *this;
  return scale(f_->inv(c_.back()));
}

Elem Poly::eval(Elem x) const {
  Elem r = 0;
  for (int i = deg(); i >= 0; --i) r = f_->add(f_->mul(r, x), c_[i]);
  return r;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return f_ ? Poly(*f_) : Poly();
  Poly r(*f_);
  r.c_.resize(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = f_->mul(f_->from_int(static_cast<long long>(i)), c_[i]);
  r.trim();
  return r;
}

Poly Poly::pow(std::uint64_t k) const {
  Poly r = Poly::one(*f_), b = *this;
  while (k) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

Poly Poly::substitute_power(int k) const {
  if (c_.empty()) return *this;
  Poly r(*f_);
  r.c_.assign(static_cast<std::size_t>(deg()) * k + 1, 0);
  for (int i = 0; i <= deg(); ++i) r.c_[static_cast<std::size_t>(i) * k] = c_[i];
  return r;
}

bool Poly::operator<(const Poly& o) const {
  if (deg() != o.deg()) return deg() < o.deg();
  for (int i = deg(); i >= 0; --i)
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  return false;
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

XGcd xgcd(const Poly& a, const Poly& b) {
  const Field* f = a.field() ? a.field() : b.field();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::one(*f), s1(*f), t0(*f), t1 = Poly::one(*f);
  while (!r1.is_zero()) {
    auto [qt, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s = s0 - qt * s1;
    s0 = std::move(s1);
    s1 = std::move(s);
    Poly t = t0 - qt * t1;
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const Elem li = f->inv(r0.lc());
  return {r0.scale(li), s0.scale(li), t0.scale(li)};
}

Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() ? a : b;
  return (a / gcd(a, b) * b).monic();
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

Poly powmod(const Poly& a, std::uint64_t k, const Poly& m) {
  Poly r = Poly::one(*m.field()) % m, b = a % m;
  while (k) {
    if (k & 1) r = mulmod(r, b, m);
    k >>= 1;
    if (k) b = mulmod(b, b, m);
  }
  return r;
}

Poly invmod(const Poly& a, const Poly& m) {
  XGcd e = xgcd(a % m, m);
  if (!e.g.is_one()) throw PreconditionError("polynomial not invertible modulo m");
  return e.s % m;
}

std::uint64_t norm_of(const Poly& p) {
  std::uint64_t n = 1;
  for (int i = 0; i < p.deg(); ++i) n *= p.F().order();
  return n;
}

std::size_t PolyHash::operator()(const Poly& p) const {
  std::size_t h = 1469598103934665603ull;
  for (Elem c : p.coeffs()) h = (h ^ c) * 1099511628211ull;
  return h;
}

}  // namespace ffg
