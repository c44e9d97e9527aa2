#include "ffg/rankin.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "ffg/error.hpp"
#include "ffg/grosspoints.hpp"
#include "ffg/parallel.hpp"
#include "ffg/polyalg.hpp"
#include "ffg/roots.hpp"

namespace ffg {

double HeckeSystem::eigenvalue(const Poly& T) const {
  auto it = lambda.find(T);
  if (it == lambda.end()) throw PreconditionError("missing Hecke eigenvalue for T = " + format_poly(T));
  return it->second;
}

HeckeSystem hecke_system(const ClassSystem& sys, const std::vector<double>& form, const ThetaCounts& th) {
  const Poly& P0 = sys.alg->P0();
  require(th.cap >= P0.deg(), "theta cap below deg P0");
  require(static_cast<int>(form.size()) == sys.n(), "form has the wrong length");
  HeckeSystem hs;
  hs.sys = &sys;
  hs.form = form;
  hs.cap = th.cap;
  const Field& f = sys.alg->F();
  for (int d = 1; d <= th.cap; ++d)
    for (const Poly& T : monic_irreducibles(f, d)) {
      const auto [lam, res] = eigenvalue(brandt_from_theta(sys, th, T), form, sys);
      hs.max_residual = std::max(hs.max_residual, res);
      if (T == P0) {
        ensure(std::abs(lam * lam - 1) < 1e-9, "Atkin-Lehner eigenvalue is not +-1");
        hs.lambda_P0 = lam > 0 ? 1.0 : -1.0;
        continue;
      }
      ensure(std::abs(lam) <= 2 * std::sqrt(static_cast<double>(norm_of(T))) + 1e-9, "Ramanujan bound violated");
      hs.lambda.emplace(T, lam);
    }
  ensure(hs.max_residual < 1e-8, "form is not a Hecke eigenvector");
  return hs;
}

std::string to_string(PlaceKind k) {
  switch (k) {
    case PlaceKind::infinity: return "infinity";
    case PlaceKind::P0: return "P0";
    case PlaceKind::split: return "split";
    case PlaceKind::inert: return "inert";
    case PlaceKind::ramified: return "ramified";
  }
  return "?";
}

std::vector<Place> places_up_to(const Poly& P0, const QuadDiscriminant& D, int N) {
  std::vector<Place> out{Place{PlaceKind::infinity, Poly(P0.F()), 1}};
  for (int d = 1; d <= N; ++d)
    for (const Poly& v : monic_irreducibles(P0.F(), d)) {
      PlaceKind k;
      if (v == P0)
        k = PlaceKind::P0;
      else
        switch (splitting_type(v, D)) {
          case Splitting::split: k = PlaceKind::split; break;
          case Splitting::inert: k = PlaceKind::inert; break;
          default: k = PlaceKind::ramified;
        }
      out.push_back(Place{k, v, d});
    }
  return out;
}

namespace {

std::vector<Complex> expand(const std::vector<Complex>& gamma) {
  std::vector<Complex> c{1.0};
  for (const Complex& g : gamma) {
    c.push_back(0.0);
    for (std::size_t k = c.size() - 1; k >= 1; --k) c[k] -= g * c[k - 1];
  }
  return c;
}

Complex chi_of(const ClassCharacter& chi, const PicGroup& P, const MumfordIdeal& a) {
  return chi(P.index_of(cantor_reduce(a, P.disc())));
}

}  // namespace

LocalFactor local_factor(const Place& v, const HeckeSystem& f, const ClassCharacter& chi, const PicGroup& P) {
  const double q = static_cast<double>(f.sys->alg->F().order());
  const double qv = std::pow(q, v.deg);
  const double s = 1 / std::sqrt(qv);
  LocalFactor L{v, {}, {}};
  const QuadDiscriminant& D = P.disc();
  switch (v.kind) {
    case PlaceKind::infinity:
      // lambda_inf = 1, ramified, chi trivial on K_inf^x
      L.gamma = {s};
      break;
    case PlaceKind::P0: {
      // inert, w = P0 O_D is principal; alpha = (lambda_P0, 0)
      const Complex c = std::sqrt(chi(P.identity()));
      L.gamma = {-f.lambda_P0 * c * s, f.lambda_P0 * c * s};
      break;
    }
    default: {
      const double lam = f.eigenvalue(v.v);
      const Complex disc = std::sqrt(Complex(lam * lam - 4 * qv, 0));
      const Complex a1 = (lam + disc) / 2.0, a2 = (lam - disc) / 2.0;
      std::vector<Complex> c;
      if (v.kind == PlaceKind::split) {
        const auto b = sqrt_mod_irreducible(D.D % v.v, v.v);
        ensure(b.has_value(), "split place without a square root of D");
        c = {chi_of(chi, P, {v.v, *b}), chi_of(chi, P, {v.v, (-*b) % v.v})};
      } else if (v.kind == PlaceKind::inert) {
        // w = v O_D is principal; principal branch of the square root
        const Complex r = std::sqrt(chi(P.identity()));
        c = {-r, r};
      } else {
        c = {chi_of(chi, P, {v.v, Poly(v.v.F())})};
      }
      for (const Complex& a : {a1, a2})
        for (const Complex& ck : c) L.gamma.push_back(a * ck * s);
    }
  }
  L.coeffs = expand(L.gamma);
  return L;
}

std::vector<Complex> euler_product(const std::vector<LocalFactor>& factors, int N) {
  std::vector<Complex> b(N + 1, 0.0);
  b[0] = 1;
  for (const auto& F : factors) {
    const int d = F.place.deg;
    for (int n = 0; n <= N; ++n)
      for (std::size_t k = 1; k < F.coeffs.size() && static_cast<int>(k) * d <= n; ++k) b[n] -= F.coeffs[k] * b[n - k * d];
  }
  return b;
}

std::vector<LocalFactor> local_factors(const HeckeSystem& f, const ClassCharacter& chi, const PicGroup& P, int N) {
  require(N <= f.cap, "eigenvalue cap below the requested coefficient count");
  std::vector<LocalFactor> out;
  for (const Place& v : places_up_to(f.sys->alg->P0(), P.disc(), N)) out.push_back(local_factor(v, f, chi, P));
  return out;
}

std::vector<Complex> dirichlet_coefficients(const HeckeSystem& f, const ClassCharacter& chi, const PicGroup& P, int N) {
  return euler_product(local_factors(f, chi, P, N), N);
}

RankinL detect_polynomial(const std::vector<Complex>& b, long long q, double rel) {
  require(!b.empty() && std::abs(b[0] - 1.0) < 1e-12, "coefficients must start with b(0) = 1");
  RankinL L;
  L.q = q;
  L.b = b;
  double mx = 0;
  for (const auto& c : b) mx = std::max(mx, std::abs(c));
  const int N = static_cast<int>(b.size()) - 1;
  for (int n = 0; n <= N; ++n)
    if (std::abs(b[n]) > rel * mx) L.m = n;
  if (L.m == N && N > 0)
    throw PreconditionError("Rankin L-function tail not reached within " + std::to_string(N) +
                            " coefficients; raise the eigenvalue cap");
  for (int n = L.m + 1; n <= N; ++n) L.tail = std::max(L.tail, std::abs(b[n]) / mx);
  if (L.m > 0) {
    L.roots = poly_roots(std::vector<Complex>(b.begin(), b.begin() + L.m + 1));
    const double target = 1 / std::sqrt(static_cast<double>(q));
    for (const auto& r : L.roots) L.max_root_deviation = std::max(L.max_root_deviation, std::abs(std::abs(r) - target));
  }
  return L;
}

Complex central_value(const RankinL& L) {
  Complex v = 0;
  const double u = 1 / std::sqrt(static_cast<double>(L.q));
  for (int n = L.m; n >= 0; --n) v = v * u + L.b[n];
  return v;
}

std::vector<double> log_deriv_newton(const RankinL& L, int nmax) {
  const double lq = std::log(static_cast<double>(L.q));
  std::vector<Complex> s(nmax + 1, 0.0);
  auto b = [&](int k) { return k <= L.m ? L.b[k] : Complex(0); };
  for (int n = 1; n <= nmax; ++n) {
    Complex v = static_cast<double>(n) * b(n);
    for (int k = 1; k < n; ++k) v -= b(k) * s[n - k];
    s[n] = v;
  }
  std::vector<double> c(nmax + 1, 0.0);
  for (int n = 1; n <= nmax; ++n) c[n] = -lq * s[n].real();
  return c;
}

std::vector<double> log_deriv_roots(const RankinL& L, int nmax) {
  const double lq = std::log(static_cast<double>(L.q));
  std::vector<double> c(nmax + 1, 0.0);
  for (const auto& r : L.roots) {
    const Complex beta = 1.0 / r;
    Complex p = 1;
    for (int n = 1; n <= nmax; ++n) {
      p *= beta;
      c[n] += lq * p.real();
    }
  }
  return c;
}

std::vector<double> log_deriv_euler(const std::vector<LocalFactor>& factors, long long q, int nmax) {
  int top = 0;
  for (const auto& F : factors) top = std::max(top, F.place.deg);
  require(nmax <= top, "Euler route needs every place of degree <= nmax");
  const double lq = std::log(static_cast<double>(q));
  std::vector<Complex> c(nmax + 1, 0.0);
  for (const auto& F : factors) {
    const int d = F.place.deg;
    for (const Complex& g : F.gamma) {
      Complex p = 1;
      for (int k = 1; k * d <= nmax; ++k) {
        p *= g;
        c[k * d] -= lq * static_cast<double>(d) * p;
      }
    }
  }
  std::vector<double> out(nmax + 1, 0.0);
  for (int n = 1; n <= nmax; ++n) out[n] = c[n].real();
  return out;
}

long long sigma(long long n) {
  require(n >= 1, "sigma needs n >= 1");
  long long s = 0;
  for (long long d = 1; d * d <= n; ++d)
    if (n % d == 0) s += d + (d * d == n ? 0 : n / d);
  return s;
}

double coefficient_envelope(long long q, int deg_P0, int n) {
  return std::log(static_cast<double>(q)) *
         (1 + 2.0 * deg_P0 + 4.0 * static_cast<double>(sigma(n)) * std::pow(static_cast<double>(q), n));
}

int lindelof_h(long long q, int m) {
  int h = 0;
  for (long long p = 1; 2 * p < m; p *= q) ++h;
  return h;
}

LindelofReport lindelof_inequality_check(const RankinL& L, const std::vector<double>& c) {
  LindelofReport r;
  r.m = L.m;
  if (L.m < 3) {
    r.notice = "m < 3: h = ceil(log_q(m/2)) is not positive, check skipped";
    return r;
  }
  r.applicable = true;
  const double q = static_cast<double>(L.q), lq = std::log(q);
  r.h = lindelof_h(L.q, L.m);
  require(static_cast<int>(c.size()) > r.h, "not enough log-derivative coefficients");
  r.s0 = 0.5 + 1 / (r.h * lq);
  const double Lc = std::abs(central_value(L));
  r.lhs = Lc > 0 ? std::log(Lc) : -HUGE_VAL;
  double sum = 0;
  for (int n = 1; n <= r.h; ++n) sum += c[n] * (r.h - n) * lq / (n * std::pow(q, n * r.s0));
  r.rhs = 3.0 * L.m / (2.0 * r.h) + sum / (r.h * lq * lq);
  r.holds = r.lhs <= r.rhs;
  return r;
}

namespace {

double re_kernel(double x, double theta) {
  // Re(1/(1 - e^(-x - i theta))) - 1/2
  const double e = std::exp(-x), e2 = e * e;
  return (1 - e2) / (2 * (1 - 2 * e * std::cos(theta) + e2));
}

}  // namespace

LemmaSample log_integral_sample(double theta, double t) {
  using boost::math::quadrature::gauss_kronrod;
  LemmaSample s{theta, t, 0, 0, 0, false};
  s.lhs = gauss_kronrod<double, 61>::integrate([&](double x) { return re_kernel(x, theta); }, 0.0, t, 15, 1e-13);
  // d/dx log|e^(x + i theta) - 1| = Re(1/(1 - e^(-x - i theta)))
  const Complex z0 = std::polar(1.0, theta), zt = std::polar(std::exp(t), theta);
  s.lhs_closed = std::log(std::abs(zt - 1.0)) - std::log(std::abs(z0 - 1.0)) - t / 2;
  s.rhs = 2 * (1 + std::exp(-t)) / (1 - std::exp(-t)) * re_kernel(t, theta);
  s.holds = s.lhs >= s.rhs - 1e-6;
  return s;
}

LemmaReport log_integral_lemma_check(int samples) {
  LemmaReport rep;
  const int side = std::max(1, static_cast<int>(std::lround(std::sqrt(samples))));
  for (int a = 0; a < side; ++a)
    for (int b = 0; b < side; ++b) {
      const double theta = 2 * std::numbers::pi * (a + 0.5) / side;
      const double t = (b + 0.5) / side;
      LemmaSample s = log_integral_sample(theta, t);
      rep.max_route_gap = std::max(rep.max_route_gap, std::abs(s.lhs - s.lhs_closed));
      rep.passed += s.holds;
      rep.samples.push_back(s);
    }
  return rep;
}

LemmaReport kernel_bound_lemma_check(long long qi, int h, int samples) {
  require(h >= 1, "kernel bound needs h >= 1");
  const double q = static_cast<double>(qi), lq = std::log(q);
  LemmaReport rep;
  const int side = std::max(1, static_cast<int>(std::lround(std::sqrt(samples))));
  for (int a = 0; a < side; ++a)
    for (int b = 0; b < side; ++b) {
      const double theta = 2 * std::numbers::pi * (a + 0.5) / side;
      const double t = (b + 0.5) / side;
      const double s0 = 0.5 + t / lq;
      const Complex alpha = std::polar(1.0, theta);
      auto kernel = [&](double s) {
        const Complex r = std::conj(alpha) * std::pow(q, s - 0.5);
        return r / ((1.0 - r) * (1.0 - r));
      };
      const double bound = 1 / (lq * (s0 - 0.5)) * (1.0 / (1.0 - alpha * std::pow(q, 0.5 - s0))).real();
      bool ok = true;
      for (double ds : {1e-9, 1e-3, 1e-2, 0.1, 0.5, 1.0, 3.0, 10.0})
        if (std::abs(kernel(s0 + ds)) > bound * (1 + 1e-12)) ok = false;
      auto integrand = [&](double s) {
        const double v = (std::pow(alpha * std::pow(q, 0.5 - s), h) * kernel(s)).real();
        return std::isfinite(v) ? v : 0.0;
      };
      using boost::math::quadrature::gauss_kronrod;
      LemmaSample smp{theta, t, 0, 0, 0, false};
      smp.lhs = gauss_kronrod<double, 61>::integrate([&](double x) { return integrand(s0 + x); }, 0.0,
                                                     std::numeric_limits<double>::infinity(), 15, 1e-12);
      boost::math::quadrature::exp_sinh<double> es;
      smp.lhs_closed = es.integrate([&](double x) { return integrand(s0 + x); }, 1e-12);
      smp.rhs = bound * std::pow(q, h * (0.5 - s0)) / (h * lq * lq);
      smp.holds = ok && smp.lhs <= smp.rhs + 1e-9;
      rep.max_route_gap = std::max(rep.max_route_gap, std::abs(smp.lhs - smp.lhs_closed));
      rep.passed += smp.holds;
      rep.samples.push_back(smp);
    }
  return rep;
}

bool PeriodReport::consistent(double tol) const {
  for (const auto& f : forms)
    if (f.nonvanishing && f.spread < tol) return true;
  return false;
}

PeriodReport period_ratio(const ClassSystem& sys, const QuadDiscriminant& D, const Eigenbasis& E, const ThetaCounts& th,
                          int workers) {
  const PicGroup P(D, 1000000);
  require(P.order() > 1, "period ratio needs h(D) > 1");
  GrossContext ctx(sys, D);
  const auto x0 = ctx.first_point();
  ensure(x0.has_value(), "no Gross point for an inert discriminant");
  const Orbit orbit = pic_orbit(ctx, P, *x0);
  const auto chis = characters(P, {P.identity()});
  const std::size_t nf = E.forms.size(), nc = chis.size();
  std::vector<HeckeSystem> hs;
  for (const auto& f : E.forms) hs.push_back(hecke_system(sys, f, th));
  const long long q = sys.alg->F().order();

  auto rows = parallel_map<PeriodRow>(nf * nc, workers, [&](std::size_t k) {
    const std::size_t fi = k / nc, ci = k % nc;
    const ClassCharacter& chi = chis[ci];
    PeriodRow r;
    r.chi_id = chi.id();
    r.weyl2 = std::norm(weyl_sum(chi.conjugate(), E.forms[fi], orbit, sys));
    const RankinL L = detect_polynomial(dirichlet_coefficients(hs[fi], chi, P, th.cap), q);
    const Complex c = central_value(L);
    r.m = L.m;
    r.central = c.real();
    ensure(std::abs(c.imag()) < 1e-8, "central value is not real");
    ensure(r.central > -1e-6, "negative central value");
    const bool lz = std::abs(r.central) < 1e-8, wz = r.weyl2 < 1e-8;
    ensure(lz == wz, "central value and Weyl sum do not vanish together");
    r.rho = lz ? 0 : r.weyl2 / r.central;
    return r;
  });

  PeriodReport rep;
  for (std::size_t fi = 0; fi < nf; ++fi) {
    PeriodForm pf;
    pf.form = static_cast<int>(fi);
    double lo = HUGE_VAL, hi = 0, sum = 0;
    int cnt = 0;
    for (std::size_t ci = 0; ci < nc; ++ci) {
      const PeriodRow& r = rows[fi * nc + ci];
      pf.rows.push_back(r);
      if (r.rho == 0) continue;
      lo = std::min(lo, r.rho);
      hi = std::max(hi, r.rho);
      sum += r.rho;
      ++cnt;
    }
    pf.nonvanishing = cnt >= 2;
    if (cnt > 0) {
      const double mean = sum / cnt;
      pf.spread = (hi - lo) / mean;
      pf.petersson = std::pow(static_cast<double>(q), (D.D.deg() + 1) / 2.0) / mean;
    }
    rep.forms.push_back(std::move(pf));
  }
  return rep;
}

}  // namespace ffg
