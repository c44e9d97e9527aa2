#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "ffg/brandt.hpp"
#include "ffg/classes.hpp"
#include "ffg/lseries.hpp"
#include "ffg/pic.hpp"

namespace ffg {

using Complex = std::complex<double>;

// Hecke eigenvalues of one cusp form for every monic irreducible T of degree
// <= cap, read off the theta counts.
struct HeckeSystem {
  const ClassSystem* sys = nullptr;
  std::vector<double> form;
  int cap = 0;
  std::map<Poly, double> lambda;  // T != P0
  double lambda_P0 = 0;           // +-1
  double max_residual = 0;

  // Throws PreconditionError when T was not computed.
  double eigenvalue(const Poly& T) const;
};
HeckeSystem hecke_system(const ClassSystem& sys, const std::vector<double>& form, const ThetaCounts& th);

enum class PlaceKind { infinity, P0, split, inert, ramified };
std::string to_string(PlaceKind k);

struct Place {
  PlaceKind kind;
  Poly v;  // zero for infinity
  int deg = 1;
};
// infinity, then every monic irreducible of degree <= N in (deg, lex) order.
std::vector<Place> places_up_to(const Poly& P0, const QuadDiscriminant& D, int N);

// prod (1 - gamma X) in X = q_v^-s, with gamma = alpha c q_v^-1/2.
struct LocalFactor {
  Place place;
  std::vector<Complex> gamma;
  std::vector<Complex> coeffs;
};
LocalFactor local_factor(const Place& v, const HeckeSystem& f, const ClassCharacter& chi, const PicGroup& P);

// b(0..N) of prod_v 1/P_v(u^deg v), u = q^-s.
std::vector<Complex> euler_product(const std::vector<LocalFactor>& factors, int N);
std::vector<LocalFactor> local_factors(const HeckeSystem& f, const ClassCharacter& chi, const PicGroup& P, int N);
std::vector<Complex> dirichlet_coefficients(const HeckeSystem& f, const ClassCharacter& chi, const PicGroup& P, int N);

struct RankinL {
  long long q = 0;
  std::vector<Complex> b;  // as computed, up to the cap
  int m = 0;
  double tail = 0;           // max_{n > m} |b(n)| / max |b|
  std::vector<Complex> roots;  // of sum_{n <= m} b(n) u^n
  double max_root_deviation = 0;  // max | |u| - q^-1/2 |
};
// m = last n with |b(n)| > rel max|b|. Throws PreconditionError when b(N)
// itself is above the threshold (tail not reached; raise the cap).
RankinL detect_polynomial(const std::vector<Complex>& b, long long q, double rel = 1e-6);
// L(1/2) = sum b(n) q^-n/2.
Complex central_value(const RankinL& L);

// L'/L(s) = sum c(n) q^-ns, three ways.
std::vector<double> log_deriv_newton(const RankinL& L, int nmax);
std::vector<double> log_deriv_roots(const RankinL& L, int nmax);
std::vector<double> log_deriv_euler(const std::vector<LocalFactor>& factors, long long q, int nmax);
long long sigma(long long n);
// log q (1 + 2 deg P0 + 4 sigma(n) q^n)
double coefficient_envelope(long long q, int deg_P0, int n);

struct LindelofReport {
  bool applicable = false;
  std::string notice;
  int m = 0;
  int h = 0;
  double s0 = 0;
  double lhs = 0;  // log |L(1/2)|
  double rhs = 0;  // 3m/(2h) + h^-1 log(q)^-2 sum_{n<=h} c(n) log(q^(h-n)) / (n q^(n s0))
  bool holds = false;
};
// Smallest h with 2 q^h >= m, i.e. ceil(log_q(m/2)) for m >= 3.
int lindelof_h(long long q, int m);
// c holds c(1..) at c[1..]; needs c.size() > h.
LindelofReport lindelof_inequality_check(const RankinL& L, const std::vector<double>& c);

// int_0^t Re(1/(1-e^(-x-i theta)) - 1/2) dx >= 2 (1+e^-t)/(1-e^-t) Re(1/(1-e^(-t-i theta)) - 1/2),
// checked on a grid of samples theta in (0, 2pi), t in (0, 1).
struct LemmaSample {
  double theta, t, lhs, rhs, lhs_closed;
  bool holds;
};
struct LemmaReport {
  std::vector<LemmaSample> samples;
  int passed = 0;
  double max_route_gap = 0;  // quadrature vs closed form
  bool all_hold() const { return passed == static_cast<int>(samples.size()); }
};
LemmaSample log_integral_sample(double theta, double t);
LemmaReport log_integral_lemma_check(int samples = 100);
// |a^-1 r / (1 - a^-1 r)^2| <= log(q)^-1 (s0-1/2)^-1 Re(1/(1 - a q^(1/2-s0))) for s > s0,
// r = q^(s-1/2), |a| = 1; plus the integrated form against q^(h(1/2-s)) by quadrature.
LemmaReport kernel_bound_lemma_check(long long q, int h, int samples = 100);

struct PeriodRow {
  std::uint64_t chi_id;
  double weyl2;    // |W_{chi bar}|^2
  double central;  // L(f x chi, 1/2)
  double rho;      // weyl2 / central, 0 when both vanish
  int m;
};
struct PeriodForm {
  int form;
  std::vector<PeriodRow> rows;
  bool nonvanishing = false;  // at least two characters with data
  double spread = 0;          // (max rho - min rho) / mean rho
  double petersson = 0;       // q^((deg D + 1)/2) / mean rho
};
struct PeriodReport {
  std::vector<PeriodForm> forms;
  bool consistent(double tol = 1e-3) const;
};
// Throws InternalError when a central value vanishes against a nonzero
// Weyl sum or the reverse.
PeriodReport period_ratio(const ClassSystem& sys, const QuadDiscriminant& D, const Eigenbasis& E,
                          const ThetaCounts& th, int workers = 1);

}  // namespace ffg
