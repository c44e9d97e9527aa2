#include "ffg/lattice.hpp"

#include <algorithm>

#include "ffg/error.hpp"
#include "ffg/polyalg.hpp"

namespace ffg {

namespace {

void sub_multiple(QVec& row, const Poly& q, const QVec& piv) {
  for (int k = 0; k < 4; ++k)
    if (!piv[k].is_zero()) row[k] = row[k] - q * piv[k];
}

bool row_zero(const QVec& r) {
  return r[0].is_zero() && r[1].is_zero() && r[2].is_zero() && r[3].is_zero();
}

std::array<QVec, 4> hermite(std::vector<QVec> rows, const Field& f) {
  rows.erase(std::remove_if(rows.begin(), rows.end(), row_zero), rows.end());
  std::array<QVec, 4> H;
  for (int c = 0; c < 4; ++c) {
    for (;;) {
      int best = -1;
      for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
        if (rows[r][c].is_zero()) continue;
        if (best < 0 || rows[r][c].deg() < rows[best][c].deg()) best = r;
      }
      if (best < 0) throw PreconditionError("generators do not span a rank-4 lattice");
      bool done = true;
      for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
        if (r == best || rows[r][c].is_zero()) continue;
        Poly q = rows[r][c] / rows[best][c];
        sub_multiple(rows[r], q, rows[best]);
        if (!rows[r][c].is_zero()) done = false;
      }
      if (done) {
        QVec piv = rows[best];
        const Elem u = f.inv(piv[c].lc());
        for (auto& e : piv) e = e.scale(u);
        H[c] = std::move(piv);
        rows.erase(rows.begin() + best);
        rows.erase(std::remove_if(rows.begin(), rows.end(), row_zero), rows.end());
        break;
      }
    }
  }
  for (int c = 1; c < 4; ++c)
    for (int r = 0; r < c; ++r) {
      if (H[r][c].deg() < H[c][c].deg()) continue;
      Poly q = H[r][c] / H[c][c];
      sub_multiple(H[r], q, H[c]);
    }
  for (auto& row : H)
    for (auto& e : row)
      if (!e.field()) e = Poly(f);
  return H;
}

Poly det4(const std::array<std::array<Poly, 4>, 4>& m) {
  // Laplace expansion along the first row with 3x3 minors.
  auto det3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
    return m[r0][c0] * (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]) -
           m[r0][c1] * (m[r1][c0] * m[r2][c2] - m[r1][c2] * m[r2][c0]) +
           m[r0][c2] * (m[r1][c0] * m[r2][c1] - m[r1][c1] * m[r2][c0]);
  };
  Poly d = det3(1, 2, 3, 1, 2, 3) * m[0][0] - det3(1, 2, 3, 0, 2, 3) * m[0][1] +
           det3(1, 2, 3, 0, 1, 3) * m[0][2] - det3(1, 2, 3, 0, 1, 2) * m[0][3];
  return d;
}

}  // namespace

QLattice QLattice::from_rows(const QuatAlgebra& alg, std::vector<QVec> rows, const Poly& den) {
  require(!den.is_zero(), "lattice with zero denominator");
  QLattice L;
  L.alg_ = &alg;
  L.H_ = hermite(std::move(rows), alg.F());
  Poly g = den.monic();
  for (const auto& row : L.H_)
    for (const auto& e : row) {
      if (g.is_one()) break;
      g = gcd(g, e);
    }
  // A unit in den rescales the rows by a unit, which leaves the A-span alone.
  L.den_ = den.monic() / g;
  if (!g.is_one())
    for (auto& row : L.H_)
      for (auto& e : row) e = e / g;
  return L;
}

QLattice QLattice::from_elements(const QuatAlgebra& alg, const std::vector<Quat>& gens) {
  require(!gens.empty(), "no generators");
  Poly L = Poly::one(alg.F());
  for (const auto& x : gens) L = lcm(L, x.den);
  std::vector<QVec> rows;
  rows.reserve(gens.size());
  for (const auto& x : gens) rows.push_back(alg.scale(x.x, L / x.den));
  return from_rows(alg, std::move(rows), L);
}

QLattice QLattice::standard_order(const QuatAlgebra& alg) {
  return from_rows(alg, {alg.basis(0), alg.basis(1), alg.basis(2), alg.basis(3)}, Poly::one(alg.F()));
}

std::vector<Quat> QLattice::basis() const {
  std::vector<Quat> out;
  for (int k = 0; k < 4; ++k) out.push_back(basis(k));
  return out;
}

std::optional<std::array<Poly, 4>> QLattice::coordinates(const Quat& x) const {
  std::array<Poly, 4> a;
  QVec Y = alg_->scale(x.x, den_);
  for (int j = 0; j < 4; ++j) {
    Poly v = Y[j];
    for (int i = 0; i < j; ++i)
      if (!a[i].is_zero()) v = v - a[i] * H_[i][j];
    auto [qt, r] = v.divmod(H_[j][j]);
    if (!r.is_zero()) return std::nullopt;
    a[j] = std::move(qt);
  }
  for (auto& c : a) {
    auto [qt, r] = c.divmod(x.den);
    if (!r.is_zero()) return std::nullopt;
    c = std::move(qt);
  }
  return a;
}

QLattice QLattice::operator*(const QLattice& o) const {
  std::vector<QVec> rows;
  rows.reserve(16);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) rows.push_back(alg_->mul(H_[a], o.H_[b]));
  return from_rows(*alg_, std::move(rows), den_ * o.den_);
}

QLattice QLattice::operator+(const QLattice& o) const {
  Poly L = lcm(den_, o.den_);
  const Poly sa = L / den_, sb = L / o.den_;
  std::vector<QVec> rows;
  for (const auto& r : H_) rows.push_back(alg_->scale(r, sa));
  for (const auto& r : o.H_) rows.push_back(alg_->scale(r, sb));
  return from_rows(*alg_, std::move(rows), L);
}

QLattice QLattice::conj() const {
  std::vector<QVec> rows;
  for (const auto& r : H_) rows.push_back(alg_->conj(r));
  return from_rows(*alg_, std::move(rows), den_);
}

QLattice QLattice::scaled(const Frac& s) const {
  require(!s.is_zero(), "scaling a lattice by zero");
  std::vector<QVec> rows;
  for (const auto& r : H_) rows.push_back(alg_->scale(r, s.num));
  return from_rows(*alg_, std::move(rows), den_ * s.den);
}

QLattice QLattice::left_mul(const Quat& x) const {
  std::vector<QVec> rows;
  for (const auto& r : H_) rows.push_back(alg_->mul(x.x, r));
  return from_rows(*alg_, std::move(rows), den_ * x.den);
}

QLattice QLattice::right_mul(const Quat& x) const {
  std::vector<QVec> rows;
  for (const auto& r : H_) rows.push_back(alg_->mul(r, x.x));
  return from_rows(*alg_, std::move(rows), den_ * x.den);
}

QLattice QLattice::dual() const {
  // H upper triangular; X = adj(H) = det * H^-1, also upper triangular.
  Poly det = H_[0][0] * H_[1][1] * H_[2][2] * H_[3][3];
  std::array<std::array<Poly, 4>, 4> X;
  const Field& f = alg_->F();
  for (int j = 0; j < 4; ++j) {
    for (int i = 3; i >= 0; --i) {
      if (i > j) {
        X[i][j] = Poly(f);
        continue;
      }
      Poly v = i == j ? det : Poly(f);
      for (int k = i + 1; k <= j; ++k) v = v - H_[i][k] * X[k][j];
      auto [qt, r] = v.divmod(H_[i][i]);
      ensure(r.is_zero(), "adjugate division was not exact");
      X[i][j] = std::move(qt);
    }
  }
  // Dual basis rows are den * (H^-1)^T = den * X^T / det.
  std::vector<QVec> rows(4);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) rows[i][k] = X[k][i] * den_;
  return from_rows(*alg_, std::move(rows), det);
}

QLattice QLattice::intersect(const QLattice& o) const { return (dual() + o.dual()).dual(); }

Poly QLattice::numerator_norm_ideal() const {
  Poly g(alg_->F());
  const Elem two = alg_->F().from_int(2);
  for (int k = 0; k < 4; ++k) {
    g = gcd(g, alg_->nrd(H_[k]));
    for (int l = k + 1; l < 4; ++l) g = gcd(g, alg_->beta(H_[k], H_[l]).scale(two));
  }
  return g;
}

Frac QLattice::nrd() const { return Frac::make(numerator_norm_ideal(), den_ * den_).ideal(); }

QLattice QLattice::inverse() const { return conj().scaled(nrd().inverse()); }

QLattice QLattice::right_order() const {
  QLattice dsum;
  for (int k = 0; k < 4; ++k) {
    QLattice part = left_mul(basis(k).inverse()).dual();
    dsum = k == 0 ? part : dsum + part;
  }
  return dsum.dual();
}

QLattice QLattice::left_order() const {
  QLattice dsum;
  for (int k = 0; k < 4; ++k) {
    QLattice part = right_mul(basis(k).inverse()).dual();
    dsum = k == 0 ? part : dsum + part;
  }
  return dsum.dual();
}

QLattice QLattice::right_order_fast() const { return (conj() * *this).scaled(nrd().inverse()); }

QLattice QLattice::left_order_fast() const { return (*this * conj()).scaled(nrd().inverse()); }

bool QLattice::is_order() const {
  if (!contains(Quat::integral(*alg_, alg_->one()))) return false;
  return *this * *this == *this;
}

Poly QLattice::reduced_discriminant() const {
  std::array<std::array<Poly, 4>, 4> G;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) G[a][b] = alg_->beta(H_[a], H_[b]);
  Frac d = Frac::make(det4(G), den_.pow(8)).ideal();
  ensure(d.den.is_one(), "order discriminant is not integral");
  auto r = poly_sqrt(d.num);
  ensure(r.has_value(), "Gram determinant of an order is not a square");
  return r->monic();
}

Frac QLattice::covolume() const {
  return Frac::make(H_[0][0] * H_[1][1] * H_[2][2] * H_[3][3], den_.pow(4));
}

QLattice standard_maximal_order(const QuatAlgebra& alg) {
  QLattice R = QLattice::standard_order(alg);
  ensure(R.is_order(), "standard lattice is not an order");
  ensure(R.reduced_discriminant() == alg.P0(), "standard order does not have reduced discriminant P0");
  return R;
}

}  // namespace ffg
