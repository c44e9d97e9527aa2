#include "ffg/grosspoints.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ffg/error.hpp"
#include "ffg/parallel.hpp"
#include "ffg/polyalg.hpp"
#include "ffg/reduce.hpp"

namespace ffg {

GrossContext::GrossContext(const ClassSystem& sys, const QuadDiscriminant& D, bool require_inert)
    : sys_(&sys), D_(D) {
  if (require_inert && splitting_type(sys.alg->P0(), D) != Splitting::inert)
    throw PreconditionError("P0 must be inert in k(sqrt D) for Gross points to exist");
  for (const auto& c : sys.classes) units_.push_back(ffg::units(c.order));
}

Quat GrossContext::canonical_witness(int cls, const Quat& y) const {
  Quat best = y;
  for (const Quat& u : units_[cls]) {
    Quat c = u * y * u.inverse();
    if (c < best) best = c;
  }
  return best;
}

Embeddings GrossContext::optimal_embeddings(int cls) const {
  const QuatAlgebra& alg = *sys_->alg;
  const Field& f = alg.F();
  const QLattice& O = sys_->classes[cls].order;
  const ReducedBasis R = reduce_trace_zero(O);
  const Poly c_num = D_.D * R.den * R.den;
  const Frac target = Frac::of(-D_.D);
  Embeddings E;
  enumerate_numerator_norm(
      R, c_num,
      [&](const std::vector<Poly>& x, Elem) {
        Quat y = R.element(x);
        ensure(y.nrd() == target && y.trd().is_zero(), "embedding witness with the wrong norm");
        E.witnesses.push_back(canonical_witness(cls, y));
        return true;
      },
      0, f.neg(1));
  std::sort(E.witnesses.begin(), E.witnesses.end());
  E.witnesses.erase(std::unique(E.witnesses.begin(), E.witnesses.end()), E.witnesses.end());
  return E;
}

std::vector<int> GrossContext::embedding_counts() const {
  std::vector<int> m;
  for (int i = 0; i < sys_->n(); ++i) m.push_back(optimal_embeddings(i).m());
  return m;
}

std::optional<GrossPoint> GrossContext::first_point() const {
  for (int i = 0; i < sys_->n(); ++i) {
    Embeddings E = optimal_embeddings(i);
    if (E.m() > 0) return GrossPoint{i, E.witnesses.front(), true};
  }
  return std::nullopt;
}

GrossPoint GrossContext::negate(const GrossPoint& x) const {
  return GrossPoint{x.cls, canonical_witness(x.cls, -x.y), !x.plus};
}

GrossPoint GrossContext::act(const GrossPoint& x, const MumfordIdeal& a) const {
  const QuatAlgebra& alg = *sys_->alg;
  const IdealClass& C = sys_->classes[x.cls];
  require(is_mumford(a, D_), "ideal does not belong to O_D");
  const Quat qa = Quat::scalar(alg, Frac::of(a.a));
  const Quat qb = Quat::scalar(alg, Frac::of(a.b)) + x.y;
  std::vector<Quat> gens;
  for (const Quat& e : C.order.basis()) {
    gens.push_back(e * qa);
    gens.push_back(e * qb);
  }
  const QLattice J = QLattice::from_elements(alg, gens);
  const QLattice K = C.ideal * J;
  const Classified c = classify(*sys_, K);
  const Quat y2 = c.alpha * x.y * c.alpha.inverse();
  ensure(sys_->classes[c.index].order.contains(y2), "conjugated witness left the right order");
  return GrossPoint{c.index, canonical_witness(c.index, y2), x.plus};
}

Orbit pic_orbit(const GrossContext& ctx, const PicGroup& P, const GrossPoint& x0) {
  require(P.disc().D == ctx.disc().D, "Pic group of a different discriminant");
  Orbit o;
  for (const auto& a : P.elements()) o.points.push_back(ctx.act(x0, a));
  return o;
}

OrbitDistribution orbit_distribution(const Orbit& orbit, const std::vector<std::size_t>& G, int n) {
  OrbitDistribution d;
  d.G = G;
  d.N.assign(n, 0);
  for (std::size_t s : G) ++d.N[orbit.points.at(s).cls];
  return d;
}

double discrepancy(const OrbitDistribution& dist, const std::vector<Rational>& mu) {
  double best = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double v = static_cast<double>(dist.N[i]) / static_cast<double>(dist.size()) -
                     boost::rational_cast<double>(mu[i]);
    best = std::max(best, std::abs(v));
  }
  return best;
}

double discrepancy_envelope(long long q, int deg_P0, int deg_D, double index, double eps) {
  const double lq = std::log(static_cast<double>(q));
  return index * std::exp(lq * (1.25 + eps * deg_P0 + (-0.25 + eps) * deg_D));
}

std::complex<double> weyl_sum(const ClassCharacter& chi, const std::vector<double>& f, const Orbit& orbit,
                              const ClassSystem& sys) {
  std::complex<double> W = 0;
  for (std::size_t s = 0; s < orbit.points.size(); ++s) {
    const int c = orbit.points[s].cls;
    W += chi(s) * (static_cast<double>(sys.classes[c].weight) * f[c]);
  }
  return W;
}

SpectralCheck spectral_identity_check(const Orbit& orbit, const std::vector<std::size_t>& G, const PicGroup& P,
                                      const ClassSystem& sys, const Eigenbasis& E) {
  const int n = sys.n();
  const double h = static_cast<double>(P.order());
  const auto mu = measure(sys);
  const OrbitDistribution dist = orbit_distribution(orbit, G, n);
  const auto chis = characters(P, G);
  const auto all = characters(P, {P.identity()});
  SpectralCheck out;
  // W for every (chi trivial on G, f)
  std::vector<std::vector<std::complex<double>>> W(chis.size());
  for (std::size_t c = 0; c < chis.size(); ++c)
    for (const auto& f : E.forms) W[c].push_back(weyl_sum(chis[c], f, orbit, sys));
  for (int i = 0; i < n; ++i) {
    const double w = sys.classes[i].weight;
    const double lhs = static_cast<double>(dist.N[i]) / static_cast<double>(dist.size()) -
                       boost::rational_cast<double>(mu[i]);
    std::complex<double> rhs = 0;
    for (std::size_t c = 0; c < chis.size(); ++c)
      for (std::size_t k = 0; k < E.forms.size(); ++k) rhs += (w * E.forms[k][i]) * W[c][k];
    rhs /= w * h;
    out.residual = std::max(out.residual, std::abs(rhs - lhs));
    double m1 = 0;
    for (const auto& f : E.forms) m1 += (w * f[i]) * (w * f[i]);
    out.M1.push_back(m1);
    if (m1 > w + 1e-9) out.bessel = false;
  }
  // Parseval over all characters of Pic
  for (const auto& f : E.forms) {
    double lhs = 0, rhs = 0;
    for (const auto& chi : all) lhs += std::norm(weyl_sum(chi, f, orbit, sys));
    for (const auto& p : orbit.points) {
      const double v = sys.classes[p.cls].weight * f[p.cls];
      rhs += v * v;
    }
    rhs *= h;
    out.parseval = std::max(out.parseval, std::abs(lhs - rhs) / std::max(1.0, rhs));
  }
  return out;
}

std::vector<std::size_t> select_subgroup(const PicGroup& P, const std::string& spec) {
  if (spec == "pic") {
    std::vector<std::size_t> all(P.order());
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  if (spec == "1") return {P.identity()};
  if (spec.rfind("gens:", 0) == 0) {
    std::vector<std::size_t> gens;
    std::stringstream ss(spec.substr(5));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      std::size_t pos = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(tok, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != tok.size() || tok.empty()) throw PreconditionError("bad subgroup generator '" + tok + "'");
      if (v >= P.order()) throw PreconditionError("subgroup generator index out of range");
      gens.push_back(v);
    }
    return P.subgroup(gens);
  }
  if (spec.rfind("eta:", 0) == 0) {
    double eta = 0;
    try {
      eta = std::stod(spec.substr(4));
    } catch (const std::exception&) {
      throw PreconditionError("bad eta in subgroup spec");
    }
    const double bound = std::pow(static_cast<double>(P.disc().D.F().order()), eta * P.disc().D.deg());
    std::vector<std::size_t> best = select_subgroup(P, "pic");
    std::uint64_t e = 1;
    for (auto d : P.elementary_divisors()) e = std::lcm(e, d);
    for (std::uint64_t k = 2; k <= e; ++k) {
      if (e % k) continue;
      std::vector<std::size_t> img;
      for (std::size_t s = 0; s < P.order(); ++s) {
        std::size_t x = P.identity();
        for (std::uint64_t r = 0; r < k; ++r) x = P.mul(x, s);
        img.push_back(x);
      }
      std::vector<std::size_t> G = P.subgroup(img);
      const double index = static_cast<double>(P.order()) / static_cast<double>(G.size());
      if (index <= bound && G.size() < best.size()) best = G;
    }
    return best;
  }
  throw PreconditionError("unknown subgroup spec '" + spec + "'");
}

EquidistReport equidist_scan(const ClassSystem& sys, const std::vector<int>& degrees, const std::string& subgroup,
                             double eps, int workers) {
  const Field& f = sys.alg->F();
  const auto mu = measure(sys);
  EquidistReport rep;
  for (int deg : degrees) {
    require(deg % 2 == 1 && deg >= 1, "equidistribution scan needs odd degrees");
    std::vector<QuadDiscriminant> Ds;
    for (const Poly& Dp : monic_irreducibles(f, deg)) {
      QuadDiscriminant D = QuadDiscriminant::make(Dp);
      if (splitting_type(sys.alg->P0(), D) == Splitting::inert) Ds.push_back(std::move(D));
    }
    auto rows = parallel_map<EquidistRow>(Ds.size(), workers, [&](std::size_t k) {
      const auto t0 = std::chrono::steady_clock::now();
      const QuadDiscriminant& D = Ds[k];
      GrossContext ctx(sys, D);
      EquidistRow row;
      row.D = D.D;
      row.m = ctx.embedding_counts();
      const PicGroup P(D, 1000000);
      row.hD = static_cast<long long>(P.order());
      long long msum = 0;
      for (int v : row.m) msum += v;
      ensure(msum == 2 * row.hD, "embedding count differs from 2 h(D)");
      auto x0 = ctx.first_point();
      ensure(x0.has_value(), "no Gross point for an inert discriminant");
      const Orbit orbit = pic_orbit(ctx, P, *x0);
      const auto G = select_subgroup(P, subgroup);
      const OrbitDistribution dist = orbit_distribution(orbit, G, sys.n());
      row.N = dist.N;
      row.discrepancy = discrepancy(dist, mu);
      row.envelope = discrepancy_envelope(f.order(), sys.alg->P0().deg(), deg,
                                          static_cast<double>(P.order()) / static_cast<double>(G.size()), eps);
      row.runtime_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      return row;
    });
    double total = 0;
    for (const auto& r : rows) total += r.discrepancy;
    if (!rows.empty()) rep.mean_discrepancy.emplace_back(deg, total / static_cast<double>(rows.size()));
    for (auto& r : rows) rep.rows.push_back(std::move(r));
  }
  // least-squares slope of log(mean discrepancy) on log |D|
  const double lq = std::log(static_cast<double>(f.order()));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int k = 0;
  for (auto [deg, dsc] : rep.mean_discrepancy) {
    if (dsc <= 0) continue;
    const double x = deg * lq, y = std::log(dsc);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++k;
  }
  if (k >= 2) rep.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  return rep;
}

SurjectivityReport surjectivity_scan(const ClassSystem& sys, int max_deg, bool exhaustive, int workers) {
  const Field& f = sys.alg->F();
  SurjectivityReport rep;
  for (int deg = 1; deg <= max_deg; deg += 2) {
    SurjectivityDegree sd;
    sd.deg = deg;
    sd.missing.assign(sys.n(), 0);
    std::vector<QuadDiscriminant> Ds;
    for (const Poly& Dp : monic_irreducibles(f, deg)) {
      QuadDiscriminant D = QuadDiscriminant::make(Dp);
      if (splitting_type(sys.alg->P0(), D) == Splitting::inert) Ds.push_back(std::move(D));
    }
    const auto ms = parallel_map<std::vector<int>>(Ds.size(), workers, [&](std::size_t k) {
      return GrossContext(sys, Ds[k]).embedding_counts();
    });
    sd.inert = static_cast<int>(Ds.size());
    for (std::size_t k = 0; k < Ds.size(); ++k) {
      bool full = true;
      for (int i = 0; i < sys.n(); ++i)
        if (ms[k][i] == 0) {
          ++sd.missing[i];
          full = false;
        }
      if (full) {
        ++sd.full;
        if (!sd.first_full) sd.first_full = Ds[k].D;
      }
    }
    rep.degrees.push_back(sd);
    if (sd.first_full && !rep.min_degree) {
      rep.min_degree = deg;
      rep.witness = sd.first_full;
      if (!exhaustive) break;
    }
  }
  return rep;
}

}  // namespace ffg
