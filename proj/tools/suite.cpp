#include "suite.hpp"

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "cache.hpp"
#include "ffg/brandt.hpp"
#include "ffg/drinfeld.hpp"
#include "ffg/error.hpp"
#include "ffg/grosspoints.hpp"
#include "ffg/lseries.hpp"
#include "ffg/polyalg.hpp"
#include "ffg/rankin.hpp"

namespace ffg::cli {

namespace {

const Field& F3() { return Field::prime(3); }
Poly P(const std::string& s) { return parse_poly(s, F3()); }

std::string num(double x, int prec = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, x);
  return buf;
}

std::string rat(const Rational& r) { return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator()); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

Outcome mass_formula_check() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  int good = 0;
  for (const Poly& P0 : monic_irreducibles(F3(), 3)) {
    const ClassSystem s = class_enumeration(QuatAlgebra::get(F3(), P0));
    if (s.mass() == Rational(13, 4) && s.n() == 4) {
      ++good;
    } else {
      o.pass = false;
      o.detail += "P0=" + format_poly(P0) + " gives n=" + std::to_string(s.n()) + " mass " + rat(s.mass()) + "; ";
    }
  }
  const double cubic_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const Poly P5 = monic_irreducibles(F3(), 5).front();
  const ClassSystem s5 = class_enumeration(QuatAlgebra::get(F3(), P5));
  const double quintic_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() - cubic_s;
  const bool q5 = s5.mass() == Rational(121, 4) && s5.n() == 31;
  o.pass = o.pass && q5 && cubic_s < 60 && quintic_s < 600;
  o.detail += std::to_string(good) + "/8 cubic P0 with n=4 and mass 13/4; P0=" + format_poly(P5) + " n=" +
              std::to_string(s5.n()) + " mass " + rat(s5.mass());
  if (cubic_s >= 60) o.detail += "; cubic runs exceeded 60 s";
  if (quintic_s >= 600) o.detail += "; quintic run exceeded 600 s";
  return o;
}

Outcome class_number_check() {
  Outcome o;
  int count = 0;
  double worst = 0;
  for (int d : {1, 3, 5, 7}) {
    for (const Poly& D : monic_irreducibles(F3(), d)) {
      const QuadDiscriminant Q = QuadDiscriminant::make(D);
      const LPolynomial L = l_polynomial(Q);
      const long long h = class_number(Q, L), oracle = class_number_oracle(Q);
      worst = std::max(worst, rh_max_deviation(L));
      if (h != oracle) {
        o.pass = false;
        o.detail += "D=" + format_poly(D) + " h=" + std::to_string(h) + " oracle " + std::to_string(oracle) + "; ";
      }
      ++count;
    }
  }
  const long long h1 = class_number(QuadDiscriminant::make(P("t")));
  const long long h2 = class_number(QuadDiscriminant::make(P("t^3-t-1")));
  const long long h3 = class_number(QuadDiscriminant::make(P("t^3+2*t+1")));
  o.pass = o.pass && h1 == 1 && h2 == 1 && h3 == 7 && worst <= 1e-9;
  o.detail += std::to_string(count) + " discriminants match the oracle; h(t)=" + std::to_string(h1) +
              " h(t^3-t-1)=" + std::to_string(h2) + " h(t^3+2*t+1)=" + std::to_string(h3) + "; RH " +
              (worst <= 1e-9 ? "holds" : "fails, max deviation " + num(worst));
  return o;
}

Outcome gross_count_check() {
  Outcome o;
  int pairs = 0;
  for (const Poly& P0 : monic_irreducibles(F3(), 3)) {
    const ClassSystem s = class_enumeration(QuatAlgebra::get(F3(), P0));
    for (int d : {1, 3, 5}) {
      for (const Poly& D : monic_irreducibles(F3(), d)) {
        const QuadDiscriminant Q = QuadDiscriminant::make(D);
        if (splitting_type(P0, Q) != Splitting::inert) continue;
        const GrossContext ctx(s, Q);
        long long total = 0;
        for (int m : ctx.embedding_counts()) total += m;
        const long long h = class_number(Q);
        if (total != 2 * h) {
          o.pass = false;
          o.detail += "(" + format_poly(P0) + ", " + format_poly(D) + ") sum m=" + std::to_string(total) +
                      " 2h=" + std::to_string(2 * h) + "; ";
        }
        ++pairs;
      }
    }
  }
  o.detail += std::to_string(pairs) + " inert pairs checked";
  return o;
}

Outcome supersingular_check(int workers) {
  Outcome o;
  long long tested = 0, disagree = 0;
  for (const Poly& P0 : monic_irreducibles(F3(), 3)) {
    const SupersingularSet S = supersingular_j_enum(P0, workers);
    tested += S.tested;
    disagree += S.disagreements;
    const long long h = h_P0_formula(3, 3);
    if (S.count() != h || S.mass() != Rational(13, 4) || S.tested != 729 || S.disagreements != 0) {
      o.pass = false;
      o.detail += "P0=" + format_poly(P0) + " count " + std::to_string(S.count()) + " mass " + rat(S.mass()) + "; ";
    }
  }
  o.pass = o.pass && disagree == 0;
  o.detail += "8 cubic P0, " + std::to_string(tested) + " j tested, " + std::to_string(disagree) +
              " criterion disagreements, count h_P0=4 and mass 13/4 " + (o.pass ? "everywhere" : "not everywhere");
  return o;
}

Outcome spectral_check() {
  Outcome o;
  const ClassSystem s = class_enumeration(QuatAlgebra::get(F3(), P("t^3-t-1")));
  const QuadDiscriminant Q = QuadDiscriminant::make(P("t^3+2*t+1"));
  const PicGroup pic(Q);
  const GrossContext ctx(s, Q);
  const Eigenbasis E = hecke_eigenbasis(s);
  const auto x0 = ctx.first_point();
  ensure(x0.has_value(), "no Gross point in the C7 scenario");
  std::vector<std::size_t> all(pic.order());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
  double worst = 0;
  bool bessel = true;
  for (const GrossPoint& x : {*x0, ctx.negate(*x0)}) {
    const Orbit orbit = pic_orbit(ctx, pic, x);
    for (const auto& G : {all, std::vector<std::size_t>{pic.identity()}}) {
      const SpectralCheck c = spectral_identity_check(orbit, G, pic, s, E);
      worst = std::max(worst, c.residual);
      bessel = bessel && c.bessel;
    }
  }
  o.pass = worst <= 1e-8 && bessel;
  o.detail = "h(D)=" + std::to_string(pic.order()) + ", both orbit tags, G=Pic and G={1}: residual " +
             (worst <= 1e-8 ? "<= 1e-8" : num(worst)) + ", Bessel bound " + (bessel ? "holds" : "fails");
  return o;
}

Outcome brandt_check() {
  Outcome o;
  int operators = 0;
  double ram = 0;
  for (const Poly& P0 : monic_irreducibles(F3(), 3)) {
    const ClassSystem s = class_enumeration(QuatAlgebra::get(F3(), P0));
    std::vector<IntMatrix> Bs;
    for (int d = 1; d <= 3; ++d) {
      for (const Poly& T : monic_irreducibles(F3(), d)) {
        if (T == P0) continue;
        const IntMatrix B = brandt_matrix(s, T);
        const long long norm = static_cast<long long>(std::pow(3.0, d));
        bool ok = B == brandt_matrix_neighbors(s, T) && weighted_self_adjoint(B, s);
        for (const auto& row : B) {
          long long sum = 0;
          for (long long v : row) {
            ok = ok && v >= 0;
            sum += v;
          }
          ok = ok && sum == norm + 1;
        }
        // similar to the symmetric sqrt(w_j / w_i) B_ij
        RealMatrix S(s.n(), std::vector<double>(s.n()));
        for (int i = 0; i < s.n(); ++i)
          for (int j = 0; j < s.n(); ++j)
            S[i][j] = std::sqrt(double(s.classes[j].weight) / s.classes[i].weight) * B[i][j];
        auto ev = jacobi_eigen(S).values;
        ok = ok && std::abs(ev.back() - double(norm + 1)) < 1e-9;
        ev.pop_back();
        for (double l : ev) ram = std::max(ram, std::abs(l) - 2 * std::sqrt(double(norm)));
        if (!ok) {
          o.pass = false;
          o.detail += "P0=" + format_poly(P0) + " T=" + format_poly(T) + " fails; ";
        }
        Bs.push_back(B);
        ++operators;
      }
    }
    for (std::size_t a = 0; a < Bs.size(); ++a)
      for (std::size_t b = a + 1; b < Bs.size(); ++b)
        if (multiply(Bs[a], Bs[b]) != multiply(Bs[b], Bs[a])) {
          o.pass = false;
          o.detail += "P0=" + format_poly(P0) + " has non-commuting operators; ";
        }
  }
  o.pass = o.pass && ram <= 1e-9;
  o.detail += std::to_string(operators) +
              " matrices over the 8 cubic P0: integer entries match the neighbour count, row sums |T|+1, "
              "weighted self-adjoint, commuting; Ramanujan " +
              (ram <= 1e-9 ? "holds" : "exceeded by " + num(ram));
  return o;
}

Outcome equidist_check(int workers) {
  Outcome o;
  const ClassSystem s = class_enumeration(QuatAlgebra::get(F3(), P("t^3-t-1")));
  const EquidistReport r = equidist_scan(s, {3, 5, 7, 9}, "pic", 0.0, workers);
  o.pass = r.slope <= -0.15;
  o.detail = std::to_string(r.rows.size()) + " inert D; mean discrepancy";
  for (const auto& [d, m] : r.mean_discrepancy) o.detail += " deg" + std::to_string(d) + "=" + num(m, 4);
  o.detail += "; slope " + num(r.slope, 4) + " (need <= -0.15)";
  return o;
}

Outcome surjectivity_check(int workers) {
  Outcome o;
  const ClassSystem s = class_enumeration(QuatAlgebra::get(F3(), P("t^3-t-1")));
  const SurjectivityReport r = surjectivity_scan(s, 11, false, workers);
  o.pass = r.min_degree.has_value() && *r.min_degree <= 11;
  if (o.pass)
    o.detail = "minimal degree " + std::to_string(*r.min_degree) + ", witness D=" + format_poly(*r.witness);
  else
    o.detail = "no D of odd degree <= 11 reaches every class";
  return o;
}

Outcome rankin_check() {
  Outcome o;
  const ClassSystem s = class_enumeration(QuatAlgebra::get(F3(), P("t^3+2*t+1")));
  const QuadDiscriminant Q = QuadDiscriminant::make(P("t"));
  const PicGroup pic(Q);
  const ThetaCounts th = theta_sweep(s, 6);
  const Eigenbasis E = hecke_eigenbasis(s);
  const ClassCharacter chi = characters(pic, {pic.identity()})[0];
  bool tail = true, rh = true, central = true, routes = true, envelope = true, lindelof = true;
  std::string centrals, lind;
  int h = 1;
  for (const auto& form : E.forms) {
    const HeckeSystem hs = hecke_system(s, form, th);
    const auto lf = local_factors(hs, chi, pic, th.cap);
    const RankinL L = detect_polynomial(euler_product(lf, th.cap), 3);
    tail = tail && L.tail < 1e-6 && L.m < th.cap;
    rh = rh && L.max_root_deviation <= 1e-4;
    const double cv = central_value(L).real();
    central = central && cv >= -1e-6;
    centrals += (centrals.empty() ? "" : ",") + num(cv, 4);
    const auto a = log_deriv_newton(L, th.cap), b = log_deriv_roots(L, 8), c = log_deriv_euler(lf, 3, th.cap);
    for (int n = 1; n <= th.cap; ++n) routes = routes && std::abs(a[n] - b[n]) < 1e-9 && std::abs(c[n] - b[n]) < 1e-9;
    for (int n = 1; n <= 8; ++n) envelope = envelope && std::abs(b[n]) <= coefficient_envelope(3, 3, n);
    const LindelofReport r = lindelof_inequality_check(L, b);
    lindelof = lindelof && r.applicable && r.holds;
    h = r.h;
    lind += (lind.empty() ? "" : ",") + num(r.lhs, 4) + "<=" + num(r.rhs, 4);
  }
  const LemmaReport li = log_integral_lemma_check(100);
  const LemmaReport kb = kernel_bound_lemma_check(3, h, 100);
  const bool lemmas = li.all_hold() && kb.all_hold() && li.max_route_gap < 1e-9 && kb.max_route_gap < 1e-8;
  o.pass = tail && rh && central && routes && envelope && lindelof && lemmas;
  o.detail = std::to_string(E.forms.size()) + " forms: tail " + (tail ? "detected" : "not detected") + ", RH " +
             (rh ? "ok" : "fails") + ", central values " + centrals + ", log-derivative routes " +
             (routes ? "agree" : "disagree") + ", coefficient bound " + (envelope ? "ok" : "fails") +
             ", Lindelof (h=" + std::to_string(h) + ") " + lind + (lindelof ? " ok" : " fails") +
             "; log-integral inequality " + std::to_string(li.passed) + "/100";
  if (!li.all_hold()) {
    for (const auto& x : li.samples)
      if (!x.holds) {
        o.detail += " (theta=" + num(x.theta, 4) + " t=" + num(x.t, 4) + ": lhs " + num(x.lhs) + " < rhs " +
                    num(x.rhs) + ")";
        break;
      }
  }
  o.detail += ", kernel bound " + std::to_string(kb.passed) + "/100";
  return o;
}

struct PeriodRun {
  PeriodReport report;
  int cap = 0;
};

PeriodRun period_run(const ClassSystem& s, const QuadDiscriminant& Q, const Eigenbasis& E, int workers) {
  // theta cost grows about ninefold per degree, so the cap moves one step at a time
  for (int cap = 8;; ++cap) {
    try {
      return {period_ratio(s, Q, E, theta_sweep(s, cap), workers), cap};
    } catch (const PreconditionError&) {
      if (cap >= 9) throw;
    }
  }
}

Outcome period_check(int workers) {
  Outcome o;
  const ClassSystem s = class_enumeration(QuatAlgebra::get(F3(), P("t^3-t-1")));
  const Eigenbasis E = hecke_eigenbasis(s);
  const QuadDiscriminant Q = QuadDiscriminant::make(P("t^3+2*t+1"));
  const PeriodRun run = period_run(s, Q, E, workers);
  o.pass = run.report.consistent(1e-3);
  o.detail = "cap " + std::to_string(run.cap) + ", h(D)=" + std::to_string(run.report.forms.front().rows.size()) + ":";
  for (const auto& f : run.report.forms)
    o.detail += " form " + std::to_string(f.form) + " spread " + (f.spread < 1e-9 ? "<1e-9" : num(f.spread, 3)) +
                " <f,f>~" + num(f.petersson, 5) + (f.nonvanishing ? "" : " (vanishing)") + ";";
  // the implied Petersson norm should not depend on D
  for (const Poly& D2 : monic_irreducibles(F3(), 3)) {
    const QuadDiscriminant Q2 = QuadDiscriminant::make(D2);
    if (D2 == Q.D || splitting_type(s.alg->P0(), Q2) != Splitting::inert || class_number(Q2) < 2) continue;
    const PeriodRun other = period_run(s, Q2, E, workers);
    double gap = 0;
    for (std::size_t k = 0; k < run.report.forms.size(); ++k) {
      const double a = run.report.forms[k].petersson, b = other.report.forms[k].petersson;
      if (a > 0 && b > 0) gap = std::max(gap, std::abs(a - b) / a);
    }
    o.detail += " second discriminant " + format_poly(D2) + ": relative <f,f> gap " + (gap < 1e-9 ? "<1e-9" : num(gap, 3));
    break;
  }
  return o;
}

std::string run_capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  char buf[4096];
  std::size_t k;
  while ((k = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, k);
  status = pclose(p);
  return out;
}

Outcome determinism_check(const SuiteOptions& opt) {
  Outcome o;
  if (!opt.cli_path.empty()) {
    const std::string base = "'" + opt.cli_path + "' selftest --quick";
    int s1 = 0, s2 = 0, s3 = 0;
    const std::string a = run_capture(base + " 2>/dev/null", s1);
    const std::string b = run_capture(base + " 2>/dev/null", s2);
    const std::string c = run_capture(base + " --workers 2 2>/dev/null", s3);
    const bool same = !a.empty() && a == b && a == c && s1 == s2 && s1 == s3;
    o.pass = same;
    o.detail = std::string("selftest --quick repeated 3 times (workers 1,1,2): ") +
               (same ? "byte-identical output" : "outputs differ");
  } else {
    o.pass = false;
    o.detail = "no CLI binary given for the repeated-run check";
  }

  const ClassSystem s = class_enumeration(QuatAlgebra::get(F3(), P("t^3-t-1")));
  const std::string ref = serialize_class_system(s);
  bool ok = cache_roundtrip(s);
  const auto dir = std::filesystem::temp_directory_path() / ("ffg_suite_cache_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  const CachedSystem first = load_or_build(*s.alg, dir.string());
  const CachedSystem second = load_or_build(*s.alg, dir.string());
  ok = ok && !first.hit && second.hit && serialize_class_system(second.sys) == ref;
  const std::string path = cache_file(dir.string(), *s.alg);
  {
    std::ofstream f(path, std::ios::trunc);
    f << ref.substr(0, ref.size() / 2);
  }
  const CachedSystem broken = load_or_build(*s.alg, dir.string());
  ok = ok && !broken.hit && !broken.warning.empty() && serialize_class_system(broken.sys) == ref;
  {
    std::string stale = ref;
    stale.replace(stale.find("\"version\": 1"), 12, "\"version\": 0");
    std::ofstream f(path, std::ios::trunc);
    f << stale;
  }
  const CachedSystem old = load_or_build(*s.alg, dir.string());
  ok = ok && !old.hit && !old.warning.empty() && serialize_class_system(old.sys) == ref;
  std::filesystem::remove_all(dir);
  o.pass = o.pass && ok;
  o.detail += std::string("; cache roundtrip, hit, corruption and version-mismatch rebuilds ") + (ok ? "ok" : "fail");
  return o;
}

}  // namespace

std::vector<CriterionResult> run_suite(const SuiteOptions& opt, std::ostream& out, std::ostream& timing) {
  struct Entry {
    int id;
    std::string name;
    std::function<Outcome()> run;
    std::string skip_reason;
  };
  std::vector<Entry> entries = {
      {1, "mass formula", mass_formula_check, ""},
      {2, "class numbers", class_number_check, ""},
      {3, "Gross count identity", gross_count_check, ""},
      {4, "supersingular cross-check", [&] { return supersingular_check(opt.workers); }, ""},
      {5, "spectral identity", spectral_check, ""},
      {6, "Brandt properties", brandt_check, ""},
      {7, "equidistribution decay", [&] { return equidist_check(opt.workers); }, opt.quick ? "--quick" : ""},
      {8, "surjectivity scan", [&] { return surjectivity_check(opt.workers); }, ""},
      {9, "Rankin suite", rankin_check, ""},
      {10, "period-ratio consistency", [&] { return period_check(opt.workers); },
       opt.quick ? "--quick" : (opt.slow ? "" : "needs --slow")},
      {11, "determinism and persistence", [&] { return determinism_check(opt); }, opt.quick ? "--quick" : ""},
  };
  std::vector<CriterionResult> results;
  for (const Entry& e : entries) {
    if (!opt.only.empty() && !opt.only.count(e.id)) continue;
    CriterionResult r;
    r.id = e.id;
    const auto t0 = std::chrono::steady_clock::now();
    if (!e.skip_reason.empty()) {
      r.verdict = Verdict::skip;
      r.detail = "skipped (" + e.skip_reason + ")";
    } else {
      try {
        const Outcome o = e.run();
        r.verdict = o.pass ? Verdict::pass : Verdict::fail;
        r.detail = o.detail;
      } catch (const std::exception& ex) {
        r.verdict = Verdict::fail;
        r.detail = std::string("error: ") + ex.what();
      }
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const char* tag = r.verdict == Verdict::pass ? "PASS" : r.verdict == Verdict::fail ? "FAIL" : "SKIP";
    out << "[" << tag << "] criterion " << e.id << " (" << e.name << "): " << r.detail << std::endl;
    timing << "criterion " << e.id << ": " << num(r.seconds, 4) << " s" << std::endl;
    results.push_back(std::move(r));
  }
  return results;
}

bool suite_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (r.verdict == Verdict::fail) return false;
  return true;
}

}  // namespace ffg::cli
