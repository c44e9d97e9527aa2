#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "ffg/brandt.hpp"
#include "ffg/classes.hpp"
#include "ffg/pic.hpp"

namespace ffg {

// Optimal embedding O_D -> R_cls given by a trace-zero y in R_cls with
// y^2 = D, stored as the smallest R_cls^x-conjugate.
struct GrossPoint {
  int cls = -1;
  Quat y;
  bool plus = true;

  bool same_as(const GrossPoint& o) const { return cls == o.cls && y == o.y; }
};

struct Embeddings {
  std::vector<Quat> witnesses;  // one canonical witness per conjugacy class, sorted
  int m() const { return static_cast<int>(witnesses.size()); }
};

class GrossContext {
 public:
  // Throws PreconditionError unless P0 is inert in k(sqrt D), unless
  // require_inert is false.
  GrossContext(const ClassSystem& sys, const QuadDiscriminant& D, bool require_inert = true);

  const ClassSystem& sys() const { return *sys_; }
  const QuadDiscriminant& disc() const { return D_; }
  const std::vector<Quat>& units(int cls) const { return units_[cls]; }

  Quat canonical_witness(int cls, const Quat& y) const;
  Embeddings optimal_embeddings(int cls) const;
  std::vector<int> embedding_counts() const;
  // Smallest witness in the first class that has one.
  std::optional<GrossPoint> first_point() const;
  GrossPoint negate(const GrossPoint& x) const;
  // x^a: the class of I_cls (R_cls a + R_cls (b + y)), witness conjugated along.
  GrossPoint act(const GrossPoint& x, const MumfordIdeal& a) const;

 private:
  const ClassSystem* sys_;
  QuadDiscriminant D_;
  std::vector<std::vector<Quat>> units_;
};

// x0^sigma for every sigma in Pic(O_D), indexed like P.elements().
struct Orbit {
  std::vector<GrossPoint> points;
};
Orbit pic_orbit(const GrossContext& ctx, const PicGroup& P, const GrossPoint& x0);

struct OrbitDistribution {
  std::vector<std::size_t> G;  // subgroup as Pic element indices
  std::vector<long long> N;    // per class
  std::size_t size() const { return G.size(); }
};
OrbitDistribution orbit_distribution(const Orbit& orbit, const std::vector<std::size_t>& G, int n);

// max_i |N_i/|G| - mu_i|
double discrepancy(const OrbitDistribution& dist, const std::vector<Rational>& mu);
// [Pic:G] q^(5/4) |P0|^eps |D|^(-1/4+eps)
double discrepancy_envelope(long long q, int deg_P0, int deg_D, double index, double eps);

// W = sum_sigma chi(sigma) w_sigma f(x^sigma)
std::complex<double> weyl_sum(const ClassCharacter& chi, const std::vector<double>& f, const Orbit& orbit,
                              const ClassSystem& sys);

struct SpectralCheck {
  double residual = 0;         // max_i |LHS_i - RHS_i|
  std::vector<double> M1;      // sum_f <e~_i, f~>^2 per class
  bool bessel = true;          // M1_i <= w_i
  double parseval = 0;         // max_f relative Parseval defect over Pic
};
SpectralCheck spectral_identity_check(const Orbit& orbit, const std::vector<std::size_t>& G, const PicGroup& P,
                                      const ClassSystem& sys, const Eigenbasis& E);

// Subgroup selection: "pic", "1", "gens:i,j,...", or "eta:x" (the subgroup
// Pic^k of largest index with [Pic:G] <= |D|^x).
std::vector<std::size_t> select_subgroup(const PicGroup& P, const std::string& spec);

struct EquidistRow {
  Poly D;
  long long hD = 0;
  std::vector<long long> N;
  std::vector<int> m;
  double discrepancy = 0;
  double envelope = 0;
  double runtime_ms = 0;
};
struct EquidistReport {
  std::vector<EquidistRow> rows;
  std::vector<std::pair<int, double>> mean_discrepancy;  // per degree
  double slope = 0;  // of log(mean discrepancy) against log |D|
};
EquidistReport equidist_scan(const ClassSystem& sys, const std::vector<int>& degrees,
                             const std::string& subgroup = "pic", double eps = 0.0, int workers = 1);

struct SurjectivityDegree {
  int deg = 0;
  int inert = 0;
  int full = 0;
  std::optional<Poly> first_full;
  std::vector<int> missing;  // per class: inert D of this degree with m_i = 0
};
struct SurjectivityReport {
  std::vector<SurjectivityDegree> degrees;
  std::optional<int> min_degree;
  std::optional<Poly> witness;
};
// Scans odd degrees up to max_deg, stopping after the first degree that has
// a D with full support unless exhaustive.
SurjectivityReport surjectivity_scan(const ClassSystem& sys, int max_deg, bool exhaustive = false, int workers = 1);

}  // namespace ffg
