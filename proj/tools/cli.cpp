#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "cache.hpp"
#include "ffg/brandt.hpp"
#include "ffg/drinfeld.hpp"
#include "ffg/error.hpp"
#include "ffg/grosspoints.hpp"
#include "ffg/lseries.hpp"
#include "ffg/polyalg.hpp"
#include "ffg/rankin.hpp"
#include "suite.hpp"

#ifndef FFG_TOOLKIT_VERSION
#define FFG_TOOLKIT_VERSION "unknown"
#endif

namespace ffg::cli {

namespace {

using json = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  std::uint32_t q = 3;
  std::string P0 = "t^3-t-1";
  std::string D;
  std::optional<Elem> delta;
  std::optional<int> deg_min, deg_max;
  std::string subgroup = "pic";
  std::optional<double> eta;
  std::optional<double> tol;
  double eps = 0;
  int workers = 1;
  std::string cache_dir;
  std::string out;
  std::string format;
  bool slow = false;
  std::optional<std::uint64_t> seed;  // reserved: every sweep is deterministic
  // selftest
  bool quick = false;
  std::vector<int> only;
  // surjectivity
  bool exhaustive = false;
  // rankin
  std::optional<std::uint64_t> chi;
  std::optional<int> form;
};

struct Output {
  json result;
  std::vector<std::string> header;  // empty when there is no table form
  std::vector<std::vector<std::string>> rows;
  std::string text;
  std::string default_format = "text";
  int exit_code = 0;
};

std::string num(double x, int prec = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, x);
  return buf;
}

std::string rat(const Rational& r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Extension-field element sum c_k p^k printed as the polynomial sum c_k u^k.
std::string format_elem(const Field& L, Elem a) {
  std::vector<Elem> digits;
  const Elem p = L.characteristic();
  for (; a > 0; a /= p) digits.push_back(a % p);
  return format_poly(Poly::from_coeffs(Field::prime(p), digits), 'u');
}

std::string modulus_text(const Field& L) {
  std::vector<Elem> c(L.modulus().begin(), L.modulus().end());
  return format_poly(Poly::from_coeffs(Field::prime(L.characteristic()), c), 'u');
}

const Field& base_field(const RunConfig& c) { return Field::prime(c.q); }
Poly P0_of(const RunConfig& c) { return parse_poly(c.P0, base_field(c)); }

QuadDiscriminant disc_of(const RunConfig& c) {
  require(!c.D.empty(), "--D is required for " + c.command);
  return QuadDiscriminant::make(parse_poly(c.D, base_field(c)));
}

const QuatAlgebra& algebra_of(const RunConfig& c) {
  const Poly P0 = P0_of(c);
  return c.delta ? QuatAlgebra::get(base_field(c), P0, *c.delta) : QuatAlgebra::get(base_field(c), P0);
}

ClassSystem system_of(const RunConfig& c, std::ostream& err) {
  CachedSystem cs = load_or_build(algebra_of(c), c.cache_dir);
  if (!cs.warning.empty()) err << "warning: " << cs.warning << "\n";
  return std::move(cs.sys);
}

Output cmd_lseries(const RunConfig& c) {
  const QuadDiscriminant D = disc_of(c);
  const LPolynomial L = l_polynomial(D);
  const long long h = class_number(D, L);
  const double dev = rh_max_deviation(L);
  Output o;
  o.result["D"] = format_poly(D.D);
  o.result["genus"] = D.genus;
  o.result["coefficients"] = L.coeffs;
  o.result["h"] = h;
  o.result["functional_equation"] = L.functional_equation_holds();
  o.result["rh_max_deviation"] = dev;
  o.result["hasse_interval"] = hasse_interval_check(D, h);
  o.header = {"k", "c_k"};
  for (std::size_t k = 0; k < L.coeffs.size(); ++k) o.rows.push_back({std::to_string(k), std::to_string(L.coeffs[k])});
  std::ostringstream t;
  t << "D=" << format_poly(D.D) << "\ngenus=" << D.genus << "\ncoefficients=";
  for (std::size_t k = 0; k < L.coeffs.size(); ++k) t << (k ? "," : "") << L.coeffs[k];
  t << "\nh=" << h << "\nfunctional_equation=" << (L.functional_equation_holds() ? "yes" : "no")
    << "\nrh_max_deviation=" << num(dev, 3) << "\n";
  o.text = t.str();
  return o;
}

Output cmd_classnum(const RunConfig& c) {
  Output o;
  if (!c.D.empty()) {
    const QuadDiscriminant D = disc_of(c);
    const long long h = class_number(D);
    o.result["D"] = format_poly(D.D);
    o.result["h"] = h;
    o.header = {"D", "degD", "h"};
    o.rows.push_back({format_poly(D.D), std::to_string(D.D.deg()), std::to_string(h)});
    o.text = std::to_string(h) + "\n";
    return o;
  }
  require(c.deg_max.has_value(), "classnum needs --D or --deg-max");
  const int lo = c.deg_min.value_or(1), hi = *c.deg_max;
  require(lo >= 1 && hi >= lo, "degree range must satisfy 1 <= deg-min <= deg-max");
  o.default_format = "csv";
  o.header = {"D", "degD", "h"};
  json rows = json::array();
  for (int d = lo; d <= hi; ++d) {
    if (d % 2 == 0) continue;
    for (const Poly& p : monic_irreducibles(base_field(c), d)) {
      const long long h = class_number(QuadDiscriminant::make(p));
      o.rows.push_back({format_poly(p), std::to_string(d), std::to_string(h)});
      rows.push_back(json{{"D", format_poly(p)}, {"degD", d}, {"h", h}});
    }
  }
  o.result["rows"] = rows;
  return o;
}

Output cmd_quat_classes(const RunConfig& c, std::ostream& err) {
  const ClassSystem sys = system_of(c, err);
  const auto mu = measure(sys);
  Output o;
  o.result["q"] = c.q;
  o.result["P0"] = format_poly(sys.alg->P0());
  o.result["delta"] = sys.alg->delta();
  o.result["n"] = sys.n();
  o.result["weights"] = sys.weights();
  o.result["mass"] = rat(sys.mass());
  o.header = {"i", "weight", "mu", "ideal_den"};
  std::string w;
  for (int i = 0; i < sys.n(); ++i) {
    o.rows.push_back({std::to_string(i + 1), std::to_string(sys.classes[i].weight), rat(mu[i]),
                      format_poly(sys.classes[i].ideal.den())});
    w += (i ? "," : "") + std::to_string(sys.classes[i].weight);
  }
  o.text = "n=" + std::to_string(sys.n()) + "\nweights=" + w + "\nmass=" + rat(sys.mass()) + "\n";
  return o;
}

Output cmd_brandt(const RunConfig& c, std::ostream& err) {
  const ClassSystem sys = system_of(c, err);
  const int hi = c.deg_max.value_or(2), lo = c.deg_min.value_or(1);
  require(lo >= 1 && hi >= lo, "degree range must satisfy 1 <= deg-min <= deg-max");
  Output o;
  o.default_format = "csv";
  o.header = {"T", "i", "j", "B"};
  json mats = json::array();
  for (int d = lo; d <= hi; ++d) {
    for (const Poly& T : monic_irreducibles(sys.alg->F(), d)) {
      const IntMatrix B = brandt_matrix(sys, T);
      for (int i = 0; i < sys.n(); ++i)
        for (int j = 0; j < sys.n(); ++j)
          o.rows.push_back({format_poly(T), std::to_string(i + 1), std::to_string(j + 1), std::to_string(B[i][j])});
      mats.push_back(json{{"T", format_poly(T)}, {"matrix", B}});
    }
  }
  o.result["P0"] = format_poly(sys.alg->P0());
  o.result["matrices"] = mats;
  return o;
}

Output cmd_gross(const RunConfig& c, std::ostream& err) {
  const ClassSystem sys = system_of(c, err);
  const QuadDiscriminant D = disc_of(c);
  const PicGroup pic(D, 1000000);
  const GrossContext ctx(sys, D);
  const auto counts = ctx.embedding_counts();
  const auto x0 = ctx.first_point();
  ensure(x0.has_value(), "no Gross point for an inert discriminant");
  const Orbit orbit = pic_orbit(ctx, pic, *x0);
  const std::string spec = c.eta ? "eta:" + num(*c.eta) : c.subgroup;
  const auto G = select_subgroup(pic, spec);
  const OrbitDistribution dist = orbit_distribution(orbit, G, sys.n());
  const auto mu = measure(sys);
  const SpectralCheck sc = spectral_identity_check(orbit, G, pic, sys, hecke_eigenbasis(sys));
  const double tol = c.tol.value_or(1e-8);
  ensure(sc.residual <= tol, "spectral identity residual " + num(sc.residual, 3) + " above tolerance");
  Output o;
  o.result["q"] = c.q;
  o.result["P0"] = format_poly(sys.alg->P0());
  o.result["D"] = format_poly(D.D);
  o.result["hD"] = pic.order();
  o.result["subgroup"] = spec;
  o.result["G"] = G.size();
  o.result["m"] = counts;
  o.result["N"] = dist.N;
  o.result["discrepancy"] = discrepancy(dist, mu);
  o.result["spectral_residual"] = sc.residual;
  o.result["bessel"] = sc.bessel;
  o.header = {"i", "weight", "mu", "m", "N"};
  std::ostringstream t;
  t << "D=" << format_poly(D.D) << " h(D)=" << pic.order() << " |G|=" << G.size() << "\n";
  for (int i = 0; i < sys.n(); ++i) {
    o.rows.push_back({std::to_string(i + 1), std::to_string(sys.classes[i].weight), rat(mu[i]),
                      std::to_string(counts[i]), std::to_string(dist.N[i])});
    t << "class " << i + 1 << ": w=" << sys.classes[i].weight << " mu=" << rat(mu[i]) << " m=" << counts[i]
      << " N=" << dist.N[i] << "\n";
  }
  t << "discrepancy=" << num(discrepancy(dist, mu)) << "\nspectral_residual=" << num(sc.residual, 3)
    << "\nbessel=" << (sc.bessel ? "yes" : "no") << "\n";
  o.text = t.str();
  return o;
}

std::vector<int> odd_degrees(const RunConfig& c, int lo_default, int hi_default) {
  const int lo = c.deg_min.value_or(lo_default), hi = c.deg_max.value_or(hi_default);
  require(lo >= 1 && hi >= lo, "degree range must satisfy 1 <= deg-min <= deg-max");
  std::vector<int> out;
  for (int d = lo; d <= hi; ++d)
    if (d % 2 == 1) out.push_back(d);
  require(!out.empty(), "degree range contains no odd degree");
  return out;
}

Output cmd_equidist(const RunConfig& c, std::ostream& err) {
  const ClassSystem sys = system_of(c, err);
  const std::string spec = c.eta ? "eta:" + num(*c.eta) : c.subgroup;
  const EquidistReport r = equidist_scan(sys, odd_degrees(c, 3, 7), spec, c.eps, c.workers);
  Output o;
  o.default_format = "csv";
  const int n = sys.n();
  o.header = {"q", "P_0", "D", "degD", "hD", "n"};
  for (int i = 1; i <= n; ++i) o.header.push_back("N_" + std::to_string(i));
  for (int i = 1; i <= n; ++i) o.header.push_back("m_" + std::to_string(i));
  for (const char* h : {"discrepancy", "envelope", "runtime_ms"}) o.header.push_back(h);
  json rows = json::array();
  const std::string P0 = format_poly(sys.alg->P0());
  for (const auto& row : r.rows) {
    std::vector<std::string> v = {std::to_string(c.q), P0, format_poly(row.D), std::to_string(row.D.deg()),
                                  std::to_string(row.hD), std::to_string(n)};
    for (long long x : row.N) v.push_back(std::to_string(x));
    for (int x : row.m) v.push_back(std::to_string(x));
    v.push_back(num(row.discrepancy));
    v.push_back(num(row.envelope));
    v.push_back(num(row.runtime_ms, 4));
    o.rows.push_back(std::move(v));
    rows.push_back(json{{"D", format_poly(row.D)}, {"degD", row.D.deg()}, {"hD", row.hD}, {"N", row.N}, {"m", row.m},
                        {"discrepancy", row.discrepancy}, {"envelope", row.envelope}, {"runtime_ms", row.runtime_ms}});
  }
  json means = json::array();
  std::ostringstream summary;
  summary << "mean discrepancy per degree:";
  for (const auto& [d, m] : r.mean_discrepancy) {
    means.push_back(json{{"degD", d}, {"mean_discrepancy", m}});
    summary << " " << d << ":" << num(m, 4);
  }
  summary << "; slope " << num(r.slope, 4) << "\n";
  o.result["q"] = c.q;
  o.result["P0"] = P0;
  o.result["subgroup"] = spec;
  o.result["rows"] = rows;
  o.result["mean_discrepancy"] = means;
  o.result["slope"] = r.slope;
  o.text = summary.str();
  err << summary.str();
  return o;
}

Output cmd_surjectivity(const RunConfig& c, std::ostream& err) {
  const ClassSystem sys = system_of(c, err);
  const int hi = c.deg_max.value_or(11);
  require(hi >= 1, "--deg-max must be positive");
  const SurjectivityReport r = surjectivity_scan(sys, hi, c.exhaustive, c.workers);
  Output o;
  o.header = {"degD", "inert", "full", "first_full"};
  json degs = json::array();
  std::ostringstream t;
  for (const auto& d : r.degrees) {
    const std::string ff = d.first_full ? format_poly(*d.first_full) : "";
    o.rows.push_back({std::to_string(d.deg), std::to_string(d.inert), std::to_string(d.full), ff});
    degs.push_back(json{{"degD", d.deg}, {"inert", d.inert}, {"full", d.full},
                        {"first_full", d.first_full ? json(ff) : json()}, {"missing", d.missing}});
    t << "deg " << d.deg << ": " << d.inert << " inert D, " << d.full << " reach every class\n";
  }
  o.result["P0"] = format_poly(sys.alg->P0());
  o.result["degrees"] = degs;
  o.result["min_degree"] = r.min_degree ? json(*r.min_degree) : json();
  o.result["witness"] = r.witness ? json(format_poly(*r.witness)) : json();
  if (r.min_degree)
    t << "minimal degree " << *r.min_degree << ", witness D=" << format_poly(*r.witness) << "\n";
  else
    t << "no inert D up to degree " << hi << " reaches every class\n";
  o.text = t.str();
  return o;
}

Output cmd_drinfeld_ss(const RunConfig& c) {
  const Poly P0 = P0_of(c);
  const SupersingularSet S = supersingular_j_enum(P0, c.workers);
  ensure(S.disagreements == 0, "the two supersingularity criteria disagree on " + std::to_string(S.disagreements) + " j");
  const Field& L = *S.F.L;
  Output o;
  o.header = {"j", "weight"};
  json js = json::array();
  std::ostringstream t;
  t << "F=F_" << c.q << "[u]/(" << modulus_text(L) << ") theta=" << format_elem(L, S.F.theta) << "\n";
  for (int k = 0; k < S.count(); ++k) {
    o.rows.push_back({format_elem(L, S.j[k]), std::to_string(S.weight[k])});
    js.push_back(json{{"j", format_elem(L, S.j[k])}, {"weight", S.weight[k]}});
    t << "j=" << format_elem(L, S.j[k]) << " weight=" << S.weight[k] << "\n";
  }
  t << "count=" << S.count() << "\nmass=" << rat(S.mass()) << "\n";
  o.result["P0"] = format_poly(P0);
  o.result["modulus"] = modulus_text(L);
  o.result["theta"] = format_elem(L, S.F.theta);
  o.result["tested"] = S.tested;
  o.result["count"] = S.count();
  o.result["mass"] = rat(S.mass());
  o.result["j"] = js;
  o.text = t.str();
  return o;
}

Output cmd_cm_demo(const RunConfig& c) {
  const Field& f = base_field(c);
  const CMModule m = cm_carlitz(f);
  ensure(cm_commutes(m), "psi_x does not commute with phi_t");
  const Poly P0 = P0_of(c);
  const QuadDiscriminant Dt = QuadDiscriminant::make(Poly::t(f));
  const Splitting s = splitting_type(P0, Dt);
  Output o;
  std::ostringstream t;
  t << "phi_t = t + (" << format_poly(m.g(), 'x') << ") tau + (" << format_poly(m.Delta(), 'x') << ") tau^2 over F_"
    << c.q << "[x], x^2 = t\n";
  t << "P0=" << format_poly(P0) << " is " << to_string(s) << " in k(sqrt t)\n";
  o.header = {"prime", "residue_field", "j", "supersingular"};
  json red = json::array();
  for (const ReducedModule& r : reduce_module(m, P0)) {
    const bool ss = is_supersingular(r.phi, P0);
    ensure(ss == (s == Splitting::inert), "supersingularity of the CM reduction does not match the splitting of P0");
    const std::string j = format_elem(*r.phi.L, j_invariant(r.phi));
    const std::string fld = "F_" + std::to_string(r.phi.L->order());
    o.rows.push_back({format_poly(r.prime, 'x'), fld, j, ss ? "yes" : "no"});
    red.push_back(json{{"prime", format_poly(r.prime, 'x')}, {"residue_field", fld}, {"j", j}, {"supersingular", ss}});
    t << "prime " << format_poly(r.prime, 'x') << ": " << fld << " j=" << j << " " << (ss ? "supersingular" : "ordinary")
      << "\n";
  }
  o.result["g"] = format_poly(m.g(), 'x');
  o.result["Delta"] = format_poly(m.Delta(), 'x');
  o.result["P0"] = format_poly(P0);
  o.result["splitting"] = to_string(s);
  o.result["reductions"] = red;
  o.text = t.str();
  return o;
}

struct RankinRow {
  std::uint64_t chi_id;
  int form;
  RankinL L;
  LindelofReport lin;
  std::optional<double> ratio;
};

std::vector<RankinRow> rankin_rows(const ClassSystem& sys, const QuadDiscriminant& D, const PicGroup& pic,
                                   const Eigenbasis& E, const ThetaCounts& th, const RunConfig& c) {
  const long long q = c.q;
  std::optional<GrossContext> ctx;
  std::optional<Orbit> orbit;
  if (splitting_type(sys.alg->P0(), D) == Splitting::inert) {
    ctx.emplace(sys, D);
    if (const auto x0 = ctx->first_point()) orbit = pic_orbit(*ctx, pic, *x0);
  }
  std::vector<RankinRow> out;
  for (std::size_t fi = 0; fi < E.forms.size(); ++fi) {
    if (c.form && *c.form != static_cast<int>(fi)) continue;
    const HeckeSystem hs = hecke_system(sys, E.forms[fi], th);
    for (const ClassCharacter& chi : characters(pic, {pic.identity()})) {
      if (c.chi && *c.chi != chi.id()) continue;
      RankinRow r{chi.id(), static_cast<int>(fi), {}, {}, {}};
      r.L = detect_polynomial(dirichlet_coefficients(hs, chi, pic, th.cap), q, c.tol.value_or(1e-6));
      const int h = r.L.m >= 3 ? lindelof_h(q, r.L.m) : 1;
      r.lin = lindelof_inequality_check(r.L, log_deriv_roots(r.L, std::max(8, h)));
      if (orbit) {
        const double w2 = std::norm(weyl_sum(chi.conjugate(), E.forms[fi], *orbit, sys));
        const double cv = central_value(r.L).real();
        if (std::abs(cv) > 1e-8) r.ratio = w2 / cv;
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

Output cmd_rankin(const RunConfig& c, std::ostream& err) {
  const ClassSystem sys = system_of(c, err);
  const QuadDiscriminant D = disc_of(c);
  const PicGroup pic(D, 1000000);
  const Eigenbasis E = hecke_eigenbasis(sys);
  const int lo = c.deg_min.value_or(5), hi = c.deg_max.value_or(8);
  require(lo >= 1 && hi >= lo, "degree range must satisfy 1 <= deg-min <= deg-max");
  std::vector<RankinRow> rows;
  int cap = lo;
  // theta cost grows about ninefold per degree, so the cap moves one step at a time
  for (;; ++cap) {
    try {
      rows = rankin_rows(sys, D, pic, E, theta_sweep(sys, cap), c);
      break;
    } catch (const PreconditionError& e) {
      if (cap >= hi) throw PreconditionError(std::string(e.what()) + " at --deg-max " + std::to_string(hi));
      err << "note: cap " << cap << " too small, raising to " << cap + 1 << "\n";
    }
  }
  Output o;
  o.default_format = "json";
  o.header = {"q", "P0", "D", "chi_id", "f_id", "m", "coefficients", "central_value", "lindelof_lhs", "lindelof_rhs",
              "ratio"};
  json out = json::array();
  const std::string P0 = format_poly(sys.alg->P0()), Ds = format_poly(D.D);
  for (const RankinRow& r : rows) {
    json coeffs = json::array();
    std::string ctext;
    for (int n = 0; n <= r.L.m; ++n) {
      ensure(std::abs(r.L.b[n].imag()) < 1e-8, "Rankin coefficient is not real");
      coeffs.push_back(r.L.b[n].real());
      ctext += (n ? ";" : "") + num(r.L.b[n].real(), 12);
    }
    const double cv = central_value(r.L).real();
    json row{{"q", c.q}, {"P0", P0}, {"D", Ds}, {"chi_id", r.chi_id}, {"f_id", r.form}, {"m", r.L.m},
             {"coefficients", coeffs}, {"central_value", cv}};
    row["lindelof_lhs"] = r.lin.applicable ? json(r.lin.lhs) : json();
    row["lindelof_rhs"] = r.lin.applicable ? json(r.lin.rhs) : json();
    row["ratio"] = r.ratio ? json(*r.ratio) : json();
    out.push_back(row);
    o.rows.push_back({std::to_string(c.q), P0, Ds, std::to_string(r.chi_id), std::to_string(r.form),
                      std::to_string(r.L.m), ctext, num(cv, 12), r.lin.applicable ? num(r.lin.lhs, 12) : "",
                      r.lin.applicable ? num(r.lin.rhs, 12) : "", r.ratio ? num(*r.ratio, 12) : ""});
  }
  o.result["cap"] = cap;
  o.result["rows"] = out;
  return o;
}

Output cmd_selftest(const RunConfig& c, std::ostream& err) {
  SuiteOptions opt;
  opt.slow = c.slow;
  opt.quick = c.quick;
  opt.only.insert(c.only.begin(), c.only.end());
  opt.workers = c.workers;
  std::error_code ec;
  const auto self = std::filesystem::read_symlink("/proc/self/exe", ec);
  if (!ec) opt.cli_path = self.string();
  std::ostringstream lines;
  const auto results = run_suite(opt, lines, err);
  Output o;
  o.text = lines.str();
  json rs = json::array();
  for (const auto& r : results) {
    const char* v = r.verdict == Verdict::pass ? "pass" : r.verdict == Verdict::fail ? "fail" : "skip";
    rs.push_back(json{{"criterion", r.id}, {"verdict", v}, {"detail", r.detail}});
  }
  o.result["criteria"] = rs;
  o.exit_code = suite_passed(results) ? 0 : 3;
  return o;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

json config_echo(const RunConfig& c) {
  json j;
  j["q"] = c.q;
  j["P0"] = c.P0;
  j["D"] = c.D.empty() ? json() : json(c.D);
  j["delta"] = c.delta ? json(*c.delta) : json();
  j["deg_min"] = c.deg_min ? json(*c.deg_min) : json();
  j["deg_max"] = c.deg_max ? json(*c.deg_max) : json();
  j["subgroup"] = c.eta ? json("eta:" + num(*c.eta)) : json(c.subgroup);
  j["tol"] = c.tol ? json(*c.tol) : json();
  j["workers"] = c.workers;
  j["slow"] = c.slow;
  return j;
}

std::string render(const Output& o, const RunConfig& c, double ms) {
  const std::string fmt = c.format.empty() ? o.default_format : c.format;
  if (fmt == "csv") {
    require(!o.header.empty(), c.command + " has no CSV form");
    std::string s;
    for (std::size_t k = 0; k < o.header.size(); ++k) s += (k ? "," : "") + csv_field(o.header[k]);
    s += "\n";
    for (const auto& row : o.rows) {
      for (std::size_t k = 0; k < row.size(); ++k) s += (k ? "," : "") + csv_field(row[k]);
      s += "\n";
    }
    return s;
  }
  if (fmt == "json") {
    json env;
    env["schema_version"] = kSchemaVersion;
    env["command"] = c.command;
    env["config"] = config_echo(c);
    env["result"] = o.result;
    env["timing"] = json{{"total_ms", ms}};
    env["toolkit_version"] = FFG_TOOLKIT_VERSION;
    return env.dump(2) + "\n";
  }
  if (!o.text.empty()) return o.text;
  RunConfig fallback = c;
  fallback.format = o.header.empty() ? "json" : "csv";
  return render(o, fallback, ms);
}

void add_common(CLI::App& app, RunConfig& c) {
  app.add_option("--q", c.q, "odd prime q")->check(CLI::PositiveNumber);
  app.add_option("--P0", c.P0, "monic irreducible P_0 of odd degree >= 3");
  app.add_option("--D", c.D, "monic irreducible D of odd degree");
  app.add_option("--delta", c.delta, "non-square in F_q for the algebra (i^2 = delta)");
  app.add_option("--deg-min", c.deg_min, "smallest degree of a scan")->check(CLI::PositiveNumber);
  app.add_option("--deg-max", c.deg_max, "largest degree of a scan or theta cap")->check(CLI::PositiveNumber);
  app.add_option("--subgroup", c.subgroup, "pic, 1, gens:i,j,... or eta:x");
  app.add_option("--eta", c.eta, "choose the subgroup with [Pic:G] <= |D|^eta");
  app.add_option("--tol", c.tol, "tolerance override");
  app.add_option("--eps", c.eps, "epsilon in the discrepancy envelope");
  app.add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--cache-dir", c.cache_dir, "directory for cached class systems");
  app.add_option("--out", c.out, "write output to this file");
  app.add_option("--format", c.format, "csv, json or text")->check(CLI::IsMember({"csv", "json", "text"}));
  app.add_flag("--slow", c.slow, "enable the period-ratio criterion");
  app.add_option("--seed", c.seed, "reserved; all sweeps are deterministic");
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  if (!args.empty() && args.front() == "run") args.erase(args.begin());
  std::reverse(args.begin(), args.end());  // CLI11 consumes the vector from the back

  RunConfig c;
  CLI::App app{"Gross points and quaternionic forms over F_q[t]", "ffg"};
  app.require_subcommand(1);
  add_common(app, c);
  auto sub = [&](CLI::App& parent, const std::string& name, const std::string& help) {
    CLI::App* s = parent.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  sub(app, "lseries", "L-polynomial and class number of k(sqrt D)");
  sub(app, "classnum", "class number h(D), or a table over a degree range");
  CLI::App* quat = sub(app, "quat", "quaternion algebra commands");
  quat->require_subcommand(1);
  sub(*quat, "classes", "left ideal classes of the maximal order");
  sub(app, "brandt", "Brandt matrices for irreducible T up to --deg-max");
  sub(app, "gross", "Gross points, orbit counts and the spectral identity for one D");
  sub(app, "equidist", "discrepancy scan over inert D");
  CLI::App* surj = sub(app, "surjectivity", "smallest degree where some D reaches every class");
  surj->add_flag("--exhaustive", c.exhaustive, "scan every degree up to --deg-max");
  CLI::App* dr = sub(app, "drinfeld", "Drinfeld module commands");
  dr->require_subcommand(1);
  sub(*dr, "ss", "supersingular j-invariants in characteristic P0");
  sub(app, "cm-demo", "reductions of the CM module x^2 = t modulo P0");
  CLI::App* rk = sub(app, "rankin", "Rankin-Selberg L-polynomials and central values");
  rk->add_option("--chi", c.chi, "character id (default: all)");
  rk->add_option("--form", c.form, "cusp form index (default: all)");
  CLI::App* st = sub(app, "selftest", "acceptance suite");
  st->add_flag("--quick", c.quick, "skip the long scans");
  st->add_option("--only", c.only, "criteria to run")->delimiter(',');

  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }
  for (const CLI::App* s = &app; !s->get_subcommands().empty();) {
    s = s->get_subcommands().front();
    c.command += (c.command.empty() ? "" : " ") + s->get_name();
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    Output o;
    const std::string& cmd = c.command;
    if (cmd == "lseries") o = cmd_lseries(c);
    else if (cmd == "classnum") o = cmd_classnum(c);
    else if (cmd == "quat classes") o = cmd_quat_classes(c, err);
    else if (cmd == "brandt") o = cmd_brandt(c, err);
    else if (cmd == "gross") o = cmd_gross(c, err);
    else if (cmd == "equidist") o = cmd_equidist(c, err);
    else if (cmd == "surjectivity") o = cmd_surjectivity(c, err);
    else if (cmd == "drinfeld ss") o = cmd_drinfeld_ss(c);
    else if (cmd == "cm-demo") o = cmd_cm_demo(c);
    else if (cmd == "rankin") o = cmd_rankin(c, err);
    else if (cmd == "selftest") o = cmd_selftest(c, err);
    else throw PreconditionError("unknown command " + cmd);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    const std::string text = render(o, c, ms);
    if (c.out.empty()) {
      out << text << std::flush;
    } else {
      std::ofstream f(c.out, std::ios::binary | std::ios::trunc);
      f << text;
      if (!f) throw PreconditionError("cannot write " + c.out);
    }
    return o.exit_code;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace ffg::cli
