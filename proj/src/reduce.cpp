#include "ffg/reduce.hpp"

#include <algorithm>
#include <numeric>

#include "ffg/error.hpp"
#include "ffg/polyalg.hpp"

namespace ffg {

namespace {

void fill_gram(ReducedBasis& R) {
  const int r = R.rank();
  R.N.assign(r, Poly());
  R.d.assign(r, 0);
  R.B.assign(r, std::vector<Poly>(r));
  for (int g = 0; g < r; ++g) {
    for (int h = g; h < r; ++h) {
      R.B[g][h] = R.alg->beta(R.b[g], R.b[h]);
      R.B[h][g] = R.B[g][h];
    }
    R.N[g] = R.B[g][g];
    ensure(!R.N[g].is_zero(), "basis vector of norm zero in a definite algebra");
    R.d[g] = R.N[g].deg();
  }
}

// Nonzero c with first nonzero entry 1 and Q(c) = 0, or empty.
std::vector<Elem> isotropic_vector(const Field& f, const std::vector<std::vector<Elem>>& M) {
  const std::size_t n = M.size();
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < n; ++k) total *= f.order();
  std::vector<Elem> c(n);
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    std::uint64_t v = idx;
    for (std::size_t k = 0; k < n; ++k) {
      c[k] = static_cast<Elem>(v % f.order());
      v /= f.order();
    }
    std::size_t first = 0;
    while (c[first] == 0) ++first;
    if (c[first] != 1) continue;
    Elem s = 0;
    for (std::size_t g = 0; g < n; ++g) {
      if (!c[g]) continue;
      for (std::size_t h = 0; h < n; ++h)
        if (c[h]) s = f.add(s, f.mul(f.mul(c[g], c[h]), M[g][h]));
    }
    if (s == 0) return c;
  }
  return {};
}

// Leading form of one parity class: entry (g,h) is the coefficient of
// t^((d_g+d_h)/2) in beta(b_g, b_h).
std::vector<std::vector<Elem>> leading_form(const ReducedBasis& R, const std::vector<int>& cls) {
  std::vector<std::vector<Elem>> M(cls.size(), std::vector<Elem>(cls.size()));
  for (std::size_t a = 0; a < cls.size(); ++a)
    for (std::size_t b = 0; b < cls.size(); ++b) {
      const int g = cls[a], h = cls[b];
      M[a][b] = R.B[g][h].coeff((R.d[g] + R.d[h]) / 2);
    }
  return M;
}

std::vector<Poly> polys_up_to(const Field& f, int k) {
  std::vector<Poly> out;
  if (k < 0) {
    out.emplace_back(f);
    return out;
  }
  std::uint64_t total = 1;
  for (int i = 0; i <= k; ++i) total *= f.order();
  out.reserve(total);
  for (std::uint64_t idx = 0; idx < total; ++idx) out.push_back(Poly::from_index(f, idx));
  return out;
}

}  // namespace

Quat ReducedBasis::element(const std::vector<Poly>& x) const {
  QVec v = alg->zero();
  for (int g = 0; g < rank(); ++g)
    if (!x[g].is_zero()) v = alg->add(v, alg->scale(b[g], x[g]));
  return Quat::make(*alg, v, den);
}

bool ReducedBasis::is_reduced() const {
  for (int par = 0; par < 2; ++par) {
    std::vector<int> cls;
    for (int g = 0; g < rank(); ++g)
      if (d[g] % 2 == par) cls.push_back(g);
    if (cls.empty()) continue;
    if (!isotropic_vector(alg->F(), leading_form(*this, cls)).empty()) return false;
  }
  return true;
}

ReducedBasis reduce_rows(const QuatAlgebra& alg, std::vector<QVec> rows, const Poly& den) {
  ReducedBasis R;
  R.alg = &alg;
  R.b = std::move(rows);
  R.den = den;
  const Field& f = alg.F();
  for (;;) {
    fill_gram(R);
    bool changed = false;
    for (int par = 0; par < 2 && !changed; ++par) {
      std::vector<int> cls;
      for (int g = 0; g < R.rank(); ++g)
        if (R.d[g] % 2 == par) cls.push_back(g);
      if (cls.empty()) continue;
      std::vector<Elem> c = isotropic_vector(f, leading_form(R, cls));
      if (c.empty()) continue;
      int top = -1;
      for (std::size_t a = 0; a < cls.size(); ++a)
        if (c[a] && (top < 0 || R.d[cls[a]] > R.d[cls[top]])) top = static_cast<int>(a);
      const int h = cls[top];
      const Elem inv = f.inv(c[top]);
      QVec nb = alg.zero();
      for (std::size_t a = 0; a < cls.size(); ++a) {
        if (!c[a]) continue;
        const int g = cls[a];
        Poly coef = Poly::monomial(f, f.mul(c[a], inv), (R.d[h] - R.d[g]) / 2);
        nb = alg.add(nb, alg.scale(R.b[g], coef));
      }
      R.b[h] = std::move(nb);
      changed = true;
    }
    if (!changed) break;
  }
  // Deterministic order: by norm degree, stable.
  std::vector<int> perm(R.rank());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) { return R.d[a] < R.d[b]; });
  std::vector<QVec> sorted;
  for (int k : perm) sorted.push_back(R.b[k]);
  R.b = std::move(sorted);
  fill_gram(R);
  return R;
}

ReducedBasis reduce_basis(const QLattice& M) {
  std::vector<QVec> rows(M.hnf().begin(), M.hnf().end());
  return reduce_rows(M.alg(), std::move(rows), M.den());
}

ReducedBasis reduce_trace_zero(const QLattice& M) {
  std::vector<QVec> rows(M.hnf().begin() + 1, M.hnf().end());
  return reduce_rows(M.alg(), std::move(rows), M.den());
}

void enumerate_numerator_norm(const ReducedBasis& R, const Poly& c_num,
                              const std::function<bool(const std::vector<Poly>&, Elem)>& visit,
                              int extra_degree, Elem only_lambda) {
  require(!c_num.is_zero(), "target norm must be nonzero");
  const QuatAlgebra& alg = *R.alg;
  const Field& f = alg.F();
  const int r = R.rank();
  const int Nd = c_num.deg();
  std::vector<int> k(r);
  for (int g = 0; g < r; ++g) {
    const int room = Nd - R.d[g];
    k[g] = room < 0 ? -1 : room / 2;
    if (k[g] >= 0 || extra_degree > 0) k[g] += extra_degree;
  }
  int s = 0;
  for (int g = 1; g < r; ++g)
    if (k[g] > k[s]) s = g;
  if (k[s] < 0) return;
  std::vector<int> others;
  for (int g = 0; g < r; ++g)
    if (g != s) others.push_back(g);
  std::vector<std::vector<Poly>> ranges;
  for (int g : others) ranges.push_back(polys_up_to(f, k[g]));

  const Poly& Ns = R.N[s];
  const Elem two = f.from_int(2), four = f.from_int(4);
  const Poly W = (Ns * c_num).scale(four);
  const Poly twoNs = Ns.scale(two);
  std::vector<Poly> x(r);
  bool stop = false;

  std::vector<QVec> partial(others.size() + 1, alg.zero());
  std::function<void(std::size_t)> rec = [&](std::size_t level) {
    if (stop) return;
    if (level == others.size()) {
      const QVec& V = partial[level];
      const Poly C = alg.nrd(V);
      const Poly Bc = alg.beta(V, R.b[s]).scale(two);
      const Poly D0 = Bc * Bc - (Ns * C).scale(four);
      const Poly negB = -Bc;
      for (Elem lam = 1; lam < f.order() && !stop; ++lam) {
        if (only_lambda && lam != only_lambda) continue;
        const Poly disc = D0 + W.scale(lam);
        auto root = poly_sqrt(disc);
        if (!root) continue;
        for (int sign = 0; sign < (root->is_zero() ? 1 : 2); ++sign) {
          const Poly numer = sign == 0 ? negB + *root : negB - *root;
          auto [xs, rem] = numer.divmod(twoNs);
          if (!rem.is_zero()) continue;
          bool all_zero = xs.is_zero();
          for (int g : others) all_zero = all_zero && x[g].is_zero();
          if (all_zero) continue;
          x[s] = xs;
          if (!visit(x, lam)) {
            stop = true;
            return;
          }
        }
      }
      return;
    }
    const int g = others[level];
    for (const Poly& v : ranges[level]) {
      x[g] = v;
      partial[level + 1] = v.is_zero() ? partial[level] : alg.add(partial[level], alg.scale(R.b[g], v));
      rec(level + 1);
      if (stop) return;
    }
  };
  rec(0);
}

std::vector<Quat> enumerate_by_norm(const ReducedBasis& R, const Frac& c, int extra_degree) {
  std::vector<Quat> out;
  Frac target = Frac::make(c.num * R.den * R.den, c.den);
  if (!target.den.is_one()) return out;
  enumerate_numerator_norm(
      R, target.num,
      [&](const std::vector<Poly>& x, Elem) {
        out.push_back(R.element(x));
        return true;
      },
      extra_degree);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Quat> enumerate_by_norm(const QLattice& M, const Frac& c, NormMode mode) {
  return enumerate_by_norm(mode == NormMode::full ? reduce_basis(M) : reduce_trace_zero(M), c);
}

std::vector<Quat> enumerate_by_norm_naive(const QLattice& M, const Frac& c, NormMode mode) {
  const QuatAlgebra& alg = M.alg();
  const Field& f = alg.F();
  std::vector<Quat> out;
  Frac target = Frac::make(c.num * M.den() * M.den(), c.den);
  if (!target.den.is_one()) return out;
  const int N = target.num.deg();
  const int p = alg.P0().deg();
  auto r01 = polys_up_to(f, N / 2);
  auto r23 = polys_up_to(f, N >= p ? (N - p) / 2 : -1);
  std::vector<Poly> zero_only{Poly(f)};
  const auto& r0 = mode == NormMode::trace_zero ? zero_only : r01;
  for (const Poly& x0 : r0)
    for (const Poly& x1 : r01)
      for (const Poly& x2 : r23)
        for (const Poly& x3 : r23) {
          QVec X{x0, x1, x2, x3};
          Poly n = alg.nrd(X);
          if (n.is_zero() || n.deg() != N) continue;
          if (n.scale(f.inv(n.lc())) != target.num.monic()) continue;
          Quat q = Quat::make(alg, X, M.den());
          if (M.contains(q)) out.push_back(q);
        }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ffg
