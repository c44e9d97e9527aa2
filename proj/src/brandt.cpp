#include "ffg/brandt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ffg/error.hpp"
#include "ffg/polyalg.hpp"
#include "ffg/reduce.hpp"

namespace ffg {

namespace {

long long count_norm(const QLattice& M, const Poly& T) {
  const ReducedBasis Rb = reduce_basis(M);
  const Poly c_num = M.numerator_norm_ideal() * T;
  long long count = 0;
  enumerate_numerator_norm(Rb, c_num, [&](const std::vector<Poly>&, Elem) {
    ++count;
    return true;
  });
  return count;
}

std::vector<Poly> polys_of_degree_at_most(const Field& f, int k) {
  std::vector<Poly> out;
  if (k < 0) return {Poly(f)};
  std::uint64_t total = 1;
  for (int i = 0; i <= k; ++i) total *= f.order();
  for (std::uint64_t idx = 0; idx < total; ++idx) out.push_back(Poly::from_index(f, idx));
  return out;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Histogram over monic m, deg m <= cap, of nonzero x in the lattice with
// (nrd x) = (nn * m), each x counted once (scalar multiples included).
std::vector<long long> theta_histogram(const QLattice& M, int cap) {
  const QuatAlgebra& alg = M.alg();
  const Field& f = alg.F();
  const std::uint64_t q = f.order();
  const ReducedBasis R = reduce_basis(M);
  const Poly nn = M.numerator_norm_ideal();
  const int top = nn.deg() + cap;
  std::vector<int> k(4);
  for (int g = 0; g < 4; ++g) k[g] = top - R.d[g] < 0 ? -1 : (top - R.d[g]) / 2;
  int s = 0;
  for (int g = 1; g < 4; ++g)
    if (k[g] > k[s]) s = g;
  std::vector<int> others;
  for (int g = 0; g < 4; ++g)
    if (g != s) others.push_back(g);

  std::vector<long long> hist(ipow(q, cap + 1), 0);
  const std::vector<Poly> xs = polys_of_degree_at_most(f, k[s]);
  std::vector<Poly> sq;  // N_s x^2
  for (const Poly& x : xs) sq.push_back(R.N[s] * x * x);
  const Elem two = f.from_int(2);

  // Only vectors whose last nonzero coordinate (in the order others..., s)
  // has a monic leading coefficient are visited; the histogram is scaled by q-1.
  std::vector<std::vector<Poly>> ranges;
  for (int g : others) ranges.push_back(polys_of_degree_at_most(f, k[g]));
  std::vector<QVec> partial(others.size() + 1, alg.zero());
  std::function<void(std::size_t, bool)> rec = [&](std::size_t level, bool normalized) {
    if (level == others.size()) {
      const QVec& V = partial[level];
      const Poly C = alg.nrd(V);
      const Poly Bc = alg.beta(V, R.b[s]).scale(two);
      for (std::size_t ix = 0; ix < xs.size(); ++ix) {
        const Poly& x = xs[ix];
        if (!normalized) {
          if (x.is_zero() || x.lc() != 1) continue;
        }
        Poly n = sq[ix] + Bc * x + C;
        if (n.is_zero() || n.deg() > top) continue;
        auto [m, r] = n.monic().divmod(nn);
        ensure(r.is_zero(), "lattice norm not divisible by the norm ideal");
        hist[m.index()] += static_cast<long long>(q - 1);
      }
      return;
    }
    const int g = others[level];
    for (const Poly& v : ranges[level]) {
      // normalization: the first nonzero coordinate in loop order is monic
      if (!normalized && !v.is_zero() && v.lc() != 1) continue;
      partial[level + 1] = v.is_zero() ? partial[level] : alg.add(partial[level], alg.scale(R.b[g], v));
      rec(level + 1, normalized || !v.is_zero());
    }
  };
  rec(0, false);
  return hist;
}

}  // namespace

IntMatrix brandt_matrix(const ClassSystem& sys, const Poly& T) {
  require(T.is_monic() && irreducible_test(T), "Brandt matrix needs a monic irreducible T");
  const int n = sys.n();
  const long long q1 = sys.alg->F().order() - 1;
  IntMatrix B(n, std::vector<long long>(n, 0));
  std::vector<std::vector<long long>> cnt(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      cnt[i][j] = count_norm(sys.classes[j].ideal.inverse() * sys.classes[i].ideal, T);
      cnt[j][i] = cnt[i][j];
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const long long d = q1 * sys.classes[j].weight;
      ensure(cnt[i][j] % d == 0, "Brandt entry is not an integer");
      B[i][j] = cnt[i][j] / d;
    }
  ensure(weighted_self_adjoint(B, sys), "Brandt matrix is not self-adjoint for the height pairing");
  return B;
}

IntMatrix brandt_matrix_neighbors(const ClassSystem& sys, const Poly& T) {
  const int n = sys.n();
  IntMatrix B(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i)
    for (const QLattice& J : ideals_of_norm(sys.classes[i].order, T)) {
      const QLattice K = compose_ideals(sys.classes[i].ideal, J);
      ++B[i][classify(sys, K).index];
    }
  return B;
}

long long ThetaCounts::count(int i, int j, const Poly& m) const {
  require(m.is_monic() && m.deg() <= cap, "theta count outside the sweep cap");
  if (i > j) std::swap(i, j);
  const auto& v = counts[i][j];
  require(!v.empty(), "theta pair was not swept");
  return v[m.index()];
}

ThetaCounts theta_sweep(const ClassSystem& sys, int cap) {
  require(cap >= 0, "negative theta cap");
  ThetaCounts th;
  th.cap = cap;
  th.n = sys.n();
  th.counts.assign(th.n, std::vector<std::vector<long long>>(th.n));
  for (int i = 0; i < th.n; ++i)
    for (int j = i; j < th.n; ++j)
      th.counts[i][j] = theta_histogram(sys.classes[j].ideal.inverse() * sys.classes[i].ideal, cap);
  return th;
}

IntMatrix brandt_from_theta(const ClassSystem& sys, const ThetaCounts& th, const Poly& m) {
  const int n = sys.n();
  const long long q1 = sys.alg->F().order() - 1;
  IntMatrix B(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const long long c = th.count(i, j, m);
      const long long d = q1 * sys.classes[j].weight;
      ensure(c % d == 0, "theta count not divisible by the unit count");
      B[i][j] = c / d;
    }
  return B;
}

bool weighted_self_adjoint(const IntMatrix& B, const ClassSystem& sys) {
  for (int i = 0; i < sys.n(); ++i)
    for (int j = 0; j < sys.n(); ++j)
      if (sys.classes[j].weight * B[i][j] != sys.classes[i].weight * B[j][i]) return false;
  return true;
}

IntMatrix multiply(const IntMatrix& A, const IntMatrix& B) {
  const std::size_t n = A.size(), m = B[0].size(), k = B.size();
  IntMatrix C(n, std::vector<long long>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t j = 0; j < m; ++j) C[i][j] += A[i][l] * B[l][j];
  return C;
}

JacobiResult jacobi_eigen(RealMatrix S, double tol, int max_sweeps) {
  const int n = static_cast<int>(S.size());
  RealMatrix V(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) V[i][i] = 1.0;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0, scale = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) (i == j ? scale : off) += S[i][j] * S[i][j];
    if (off <= tol * tol * std::max(scale, 1.0)) break;
    for (int p = 0; p < n; ++p)
      for (int r = p + 1; r < n; ++r) {
        if (std::abs(S[p][r]) < 1e-300) continue;
        const double theta = (S[r][r] - S[p][p]) / (2 * S[p][r]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (int k = 0; k < n; ++k) {
          const double a = S[k][p], b = S[k][r];
          S[k][p] = c * a - s * b;
          S[k][r] = s * a + c * b;
        }
        for (int k = 0; k < n; ++k) {
          const double a = S[p][k], b = S[r][k];
          S[p][k] = c * a - s * b;
          S[r][k] = s * a + c * b;
        }
        for (int k = 0; k < n; ++k) {
          const double a = V[k][p], b = V[k][r];
          V[k][p] = c * a - s * b;
          V[k][r] = s * a + c * b;
        }
      }
  }
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return S[a][a] < S[b][b]; });
  JacobiResult res;
  for (int k : order) {
    res.values.push_back(S[k][k]);
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = V[i][k];
    res.vectors.push_back(std::move(v));
  }
  return res;
}

std::pair<double, double> eigenvalue(const IntMatrix& B, const std::vector<double>& f, const ClassSystem& sys) {
  const int n = sys.n();
  std::vector<double> Bf(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Bf[i] += static_cast<double>(B[j][i]) * f[j];
  const double lam = gross_pairing(Bf, f, sys) / gross_pairing(f, f, sys);
  double res = 0;
  for (int i = 0; i < n; ++i) res = std::max(res, std::abs(Bf[i] - lam * f[i]));
  return {lam, res};
}

Eigenbasis hecke_eigenbasis(const ClassSystem& sys, int degree_cap) {
  const int n = sys.n();
  const Field& f = sys.alg->F();
  std::vector<double> sw(n), isw(n);
  for (int i = 0; i < n; ++i) {
    sw[i] = std::sqrt(static_cast<double>(sys.classes[i].weight));
    isw[i] = 1 / sw[i];
  }
  Eigenbasis E;
  std::vector<IntMatrix> Bs;
  RealMatrix C(n, std::vector<double>(n, 0.0));
  const double gamma = std::sqrt(2.0) - 1;
  double coef = 1;
  JacobiResult J;
  bool separated = false;
  for (int deg = 1; deg <= degree_cap && !separated; ++deg)
    for (const Poly& T : monic_irreducibles(f, deg)) {
      if (T == sys.alg->P0()) continue;
      IntMatrix B = brandt_matrix(sys, T);
      // S = W^1/2 B^t W^-1/2 is symmetric
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) C[i][j] += coef * sw[i] * static_cast<double>(B[j][i]) * isw[j];
      coef *= gamma;
      E.Ts.push_back(T);
      Bs.push_back(std::move(B));
      J = jacobi_eigen(C);
      double scale = 1;
      for (double v : J.values) scale = std::max(scale, std::abs(v));
      separated = true;
      for (int k = 0; k + 1 < n; ++k)
        if (J.values[k + 1] - J.values[k] < 1e-6 * scale) separated = false;
      if (separated) break;
    }
  if (!separated) throw InternalError("Hecke operators up to the degree cap do not separate eigenforms");

  // e* = (1/w_i), normalized
  std::vector<double> estar(n);
  for (int i = 0; i < n; ++i) estar[i] = 1.0 / sys.classes[i].weight;
  const double enorm = std::sqrt(gross_pairing(estar, estar, sys));
  for (auto& v : estar) v /= enorm;
  int eis = -1;
  double best = -1;
  std::vector<std::vector<double>> ft;
  for (int k = 0; k < n; ++k) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = isw[i] * J.vectors[k][i];
    for (double v : g)
      if (std::abs(v) > 1e-6) {
        if (v < 0)
          for (auto& x : g) x = -x;
        break;
      }
    const double ov = std::abs(gross_pairing(g, estar, sys));
    if (ov > best) {
      best = ov;
      eis = k;
    }
    ft.push_back(std::move(g));
  }
  ensure(std::abs(best - 1) < 1e-9, "no eigenvector along e*");
  E.eisenstein = estar;
  const IntMatrix AL = brandt_matrix(sys, sys.alg->P0());
  for (int k = 0; k < n; ++k) {
    if (k == eis) continue;
    std::vector<double> lam;
    for (const auto& B : Bs) {
      auto [l, res] = eigenvalue(B, ft[k], sys);
      ensure(res < 1e-9, "eigenvector residual too large");
      lam.push_back(l);
    }
    auto [al, res] = eigenvalue(AL, ft[k], sys);
    ensure(res < 1e-9 && std::abs(std::abs(al) - 1) < 1e-9, "Atkin-Lehner eigenvalue is not +-1");
    E.forms.push_back(ft[k]);
    E.lambda.push_back(std::move(lam));
    E.lambda_P0.push_back(al > 0 ? 1.0 : -1.0);
  }
  return E;
}

}  // namespace ffg
