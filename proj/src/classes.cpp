#include "ffg/classes.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "ffg/error.hpp"
#include "ffg/polyalg.hpp"
#include "ffg/reduce.hpp"

namespace ffg {

namespace {

using Coords = std::array<Poly, 4>;

// O/TO as an F_T-algebra in the HNF basis of O.
class OrderModT {
 public:
  OrderModT(const QLattice& O, const Poly& T) : T_(T), e_(O.basis()) {
    const QuatAlgebra& alg = O.alg();
    const Field& f = alg.F();
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        auto c = O.coordinates(e_[a] * e_[b]);
        ensure(c.has_value(), "lattice is not closed under multiplication");
        for (int k = 0; k < 4; ++k) c_[a][b][k] = (*c)[k] % T_;
        Frac g = Frac::make(alg.beta(e_[a].x, e_[b].x), e_[a].den * e_[b].den);
        ensure(g.den.is_one(), "norm form of an order is not integral");
        G_[a][b] = g.num % T_;
      }
    for (auto& row : c_)
      for (auto& col : row)
        for (auto& x : col)
          if (!x.field()) x = Poly(f);
  }

  Coords mul(const Coords& x, const Coords& y) const {
    Coords r;
    for (auto& v : r) v = Poly(T_.F());
    for (int a = 0; a < 4; ++a) {
      if (x[a].is_zero()) continue;
      for (int b = 0; b < 4; ++b) {
        if (y[b].is_zero()) continue;
        const Poly xy = mulmod(x[a], y[b], T_);
        for (int k = 0; k < 4; ++k)
          if (!c_[a][b][k].is_zero()) r[k] = r[k] + xy * c_[a][b][k];
      }
    }
    for (auto& v : r) v = v % T_;
    return r;
  }

  Poly nrd(const Coords& x) const {
    Poly s(T_.F());
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        if (!x[a].is_zero() && !x[b].is_zero()) s = s + x[a] * x[b] * G_[a][b];
    return s % T_;
  }

  // First nonzero x (in index order) with nrd(x) = 0 mod T.
  Coords first_zero_divisor() const {
    const std::uint64_t nT = norm_of(T_);
    const std::uint64_t total = nT * nT * nT * nT;
    for (std::uint64_t k = 1; k < total; ++k) {
      Coords x;
      std::uint64_t v = k;
      for (int a = 0; a < 4; ++a) {
        x[a] = Poly::from_index(T_.F(), v % nT);
        v /= nT;
      }
      if (nrd(x).is_zero()) return x;
    }
    throw InternalError("no zero divisor in O/TO");
  }

  Quat lift(const Coords& x) const {
    Quat s = Quat::integral(*e_[0].alg, e_[0].alg->zero());
    for (int a = 0; a < 4; ++a)
      if (!x[a].is_zero()) s = s + e_[a].scaled(Frac::of(x[a]));
    return s;
  }

  const std::vector<Quat>& basis() const { return e_; }
  const Poly& T() const { return T_; }

 private:
  Poly T_;
  std::vector<Quat> e_;
  Coords c_[4][4];
  Poly G_[4][4];
};

// Reduced row echelon form over F_T of the given rows; returns nonzero rows.
std::vector<Coords> row_echelon(std::vector<Coords> rows, const Poly& T) {
  std::vector<Coords> out;
  for (int col = 0; col < 4; ++col) {
    int piv = -1;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r)
      if (!rows[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    Coords p = rows[piv];
    rows.erase(rows.begin() + piv);
    const Poly inv = invmod(p[col], T);
    for (auto& v : p) v = mulmod(v, inv, T);
    for (auto& r : rows) {
      const Poly c = r[col];
      if (c.is_zero()) continue;
      for (int k = 0; k < 4; ++k) r[k] = (r[k] - mulmod(c, p[k], T)) % T;
    }
    for (auto& r : out) {
      const Poly c = r[col];
      if (c.is_zero()) continue;
      for (int k = 0; k < 4; ++k) r[k] = (r[k] - mulmod(c, p[k], T)) % T;
    }
    out.push_back(p);
  }
  return out;
}

QLattice left_ideal(const OrderModT& A, const Quat& z) {
  std::vector<Quat> gens;
  for (const auto& e : A.basis()) gens.push_back(e * z);
  for (const auto& e : A.basis()) gens.push_back(e.scaled(Frac::of(A.T())));
  return QLattice::from_elements(*z.alg, gens);
}

// Conjugation invariant of an order, used to skip hopeless equivalence tests.
std::vector<int> order_key(const QLattice& O) {
  const ReducedBasis Rb = reduce_basis(O);
  std::vector<int> d;
  for (int x : Rb.d) d.push_back(x - 2 * Rb.den.deg());
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

std::vector<int> ClassSystem::weights() const {
  std::vector<int> w;
  for (const auto& c : classes) w.push_back(c.weight);
  return w;
}

Rational ClassSystem::mass() const {
  Rational m(0);
  for (const auto& c : classes) m += Rational(1, c.weight);
  return m;
}

Rational mass_formula(const QuatAlgebra& alg) {
  long long q = alg.F().order();
  long long qd = 1;
  for (int k = 0; k < alg.P0().deg(); ++k) qd *= q;
  return Rational(qd - 1, q * q - 1);
}

long long h_P0_formula(long long q, int deg_P0) {
  require(deg_P0 >= 3, "h_P0 needs deg P0 >= 3");
  long long qd = 1;
  for (int k = 0; k < deg_P0; ++k) qd *= q;
  Rational h = Rational(qd - 1, q * q - 1) + Rational(q, 2 * (q + 1)) * Rational(deg_P0 % 2 ? 2 : 0);
  ensure(h.denominator() == 1, "h_P0 formula produced a non-integer");
  return h.numerator();
}

std::vector<Quat> units(const QLattice& order) {
  return enumerate_by_norm(order, Frac::of(Poly::one(order.alg().F())), NormMode::full);
}

int unit_weight(const QLattice& order) {
  const auto u = units(order);
  const std::size_t q1 = order.alg().F().order() - 1;
  ensure(u.size() % q1 == 0 && !u.empty(), "unit count is not a multiple of q - 1");
  return static_cast<int>(u.size() / q1);
}

std::vector<QLattice> ideals_of_norm(const QLattice& order, const Poly& T) {
  require(T.is_monic() && irreducible_test(T), "ideals_of_norm needs a monic irreducible T");
  OrderModT A(order, T);
  const Coords x0 = A.first_zero_divisor();
  std::vector<QLattice> out;
  const Frac target = Frac::of(T);
  if (T == order.alg().P0()) {
    out.push_back(left_ideal(A, A.lift(x0)));
  } else {
    std::vector<Coords> rows;
    for (int k = 0; k < 4; ++k) {
      Coords ek;
      for (int a = 0; a < 4; ++a) ek[a] = a == k ? Poly::one(T.F()) : Poly(T.F());
      rows.push_back(A.mul(x0, ek));
    }
    auto span = row_echelon(rows, T);
    ensure(span.size() == 2, "x0 O/TO is not two-dimensional");
    const std::uint64_t nT = norm_of(T);
    for (std::uint64_t k = 0; k <= nT; ++k) {
      Coords z;
      if (k < nT) {
        const Poly a = Poly::from_index(T.F(), k);
        for (int c = 0; c < 4; ++c) z[c] = (span[0][c] + mulmod(a, span[1][c], T)) % T;
      } else {
        z = span[1];
      }
      out.push_back(left_ideal(A, A.lift(z)));
    }
  }
  for (const auto& I : out) ensure(I.nrd() == target, "constructed ideal has the wrong norm");
  return out;
}

QLattice compose_ideals(const QLattice& I, const QLattice& J) {
  if (I.right_order_fast() != J.left_order_fast())
    throw PreconditionError("ideal product needs right_order(I) = left_order(J)");
  return I * J;
}

std::optional<Quat> left_equivalence(const QLattice& I, const QLattice& J) {
  const QLattice M = J.inverse() * I;
  const ReducedBasis Rb = reduce_basis(M);
  const Poly nn = M.numerator_norm_ideal();
  int g = 0;
  for (int k = 1; k < Rb.rank(); ++k)
    if (Rb.d[k] < Rb.d[g]) g = k;
  ensure(Rb.d[g] >= nn.deg(), "element of norm below the norm ideal");
  if (Rb.d[g] != nn.deg()) return std::nullopt;
  std::vector<Poly> x(4, Poly(I.alg().F()));
  x[g] = Poly::one(I.alg().F());
  Quat alpha = Rb.element(x);
  ensure(J.right_mul(alpha) == I, "norm-generating element does not give I = J alpha");
  return alpha;
}

bool is_left_equivalent(const QLattice& I, const QLattice& J) { return left_equivalence(I, J).has_value(); }

Classified classify(const ClassSystem& sys, const QLattice& I) {
  for (int j = 0; j < sys.n(); ++j)
    if (auto a = left_equivalence(I, sys.classes[j].ideal)) return {j, *a};
  throw InternalError("ideal is not equivalent to any enumerated class");
}

ClassSystem class_enumeration(const QuatAlgebra& alg, int degree_cap) {
  ClassSystem sys;
  sys.alg = &alg;
  sys.R = standard_maximal_order(alg);
  const Rational target = mass_formula(alg);
  std::vector<std::pair<int, std::vector<int>>> keys;
  auto add = [&](const QLattice& I, const QLattice& O) {
    const int w = unit_weight(O);
    sys.classes.push_back({I, O, w});
    keys.emplace_back(w, order_key(O));
  };
  add(sys.R, sys.R);
  for (int deg = 1; deg <= degree_cap; ++deg) {
    for (const Poly& T : monic_irreducibles(alg.F(), deg)) {
      if (T == alg.P0()) continue;
      for (std::size_t i = 0; i < sys.classes.size(); ++i) {
        if (sys.mass() == target) break;
        for (const QLattice& J : ideals_of_norm(sys.classes[i].order, T)) {
          const QLattice K = compose_ideals(sys.classes[i].ideal, J);
          const QLattice O = K.right_order_fast();
          const std::pair<int, std::vector<int>> key(unit_weight(O), order_key(O));
          bool known = false;
          for (std::size_t j = 0; j < sys.classes.size() && !known; ++j)
            known = keys[j] == key && is_left_equivalent(K, sys.classes[j].ideal);
          if (known) continue;
          add(K, O);
          const Rational m = sys.mass();
          if (m > target) throw InternalError("mass overshoot during class enumeration");
          if (m == target) break;
        }
      }
      if (sys.mass() == target) {
        ensure(sys.n() == h_P0_formula(alg.F().order(), alg.P0().deg()), "class count differs from h_P0");
        for (const auto& c : sys.classes) {
          const int w = c.weight;
          ensure(w == 1 || w == static_cast<int>(alg.F().order()) + 1, "unit weight outside {1, q+1}");
        }
        return sys;
      }
    }
  }
  throw InternalError("class enumeration did not reach the mass within the degree cap");
}

std::vector<Rational> measure(const ClassSystem& sys) {
  const Rational m = sys.mass();
  std::vector<Rational> mu;
  for (const auto& c : sys.classes) mu.push_back(Rational(1, c.weight) / m);
  return mu;
}

double gross_pairing(const std::vector<double>& u, const std::vector<double>& v, const ClassSystem& sys) {
  require(static_cast<int>(u.size()) == sys.n() && static_cast<int>(v.size()) == sys.n(), "vector length != class count");
  double s = 0;
  for (int i = 0; i < sys.n(); ++i) s += sys.classes[i].weight * u[i] * v[i];
  return s;
}

Rational gross_pairing(const std::vector<Rational>& u, const std::vector<Rational>& v, const ClassSystem& sys) {
  require(static_cast<int>(u.size()) == sys.n() && static_cast<int>(v.size()) == sys.n(), "vector length != class count");
  Rational s(0);
  for (int i = 0; i < sys.n(); ++i) s += Rational(sys.classes[i].weight) * u[i] * v[i];
  return s;
}

}  // namespace ffg
