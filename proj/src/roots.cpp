#include "ffg/roots.hpp"

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/cpp_int.hpp>

#include "ffg/error.hpp"

namespace ffg {

namespace {

using Rat = boost::multiprecision::cpp_rational;
using RPoly = std::vector<Rat>;  // low to high, trimmed

void trim(RPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RPoly rmod(RPoly a, const RPoly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rat c = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= c * b[k];
    a.pop_back();
    trim(a);
  }
  return a;
}

RPoly rdiv(RPoly a, const RPoly& b) {
  trim(a);
  if (a.size() < b.size()) return {};
  RPoly q(a.size() - b.size() + 1);
  while (a.size() >= b.size() && !a.empty()) {
    Rat c = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= c * b[k];
    a.pop_back();
    trim(a);
  }
  return q;
}

RPoly rgcd(RPoly a, RPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    RPoly r = rmod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

using CL = std::complex<long double>;

CL horner(const std::vector<CL>& c, CL z) {
  CL r = 0;
  for (std::size_t k = c.size(); k-- > 0;) r = r * z + c[k];
  return r;
}

}  // namespace

std::vector<std::complex<double>> poly_roots(const std::vector<std::complex<double>>& coeffs) {
  std::vector<std::complex<double>> c = coeffs;
  while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
  if (c.size() <= 1) return {};
  const int n = static_cast<int>(c.size()) - 1;
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / c[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  ensure(es.info() == Eigen::Success, "companion eigenvalue computation failed");
  std::vector<CL> cl(c.begin(), c.end());
  std::vector<CL> dl(c.size() - 1);
  for (std::size_t k = 1; k < cl.size(); ++k) dl[k - 1] = cl[k] * static_cast<long double>(k);
  std::vector<std::complex<double>> out;
  for (int i = 0; i < n; ++i) {
    CL z = es.eigenvalues()[i];
    for (int it = 0; it < 8; ++it) {
      CL d = horner(dl, z);
      if (std::abs(d) == 0) break;
      CL step = horner(cl, z) / d;
      z -= step;
      if (std::abs(step) <= 1e-18L * std::max<long double>(1, std::abs(z))) break;
    }
    out.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  }
  return out;
}

std::vector<std::complex<double>> integer_poly_roots(const std::vector<long long>& coeffs) {
  RPoly p(coeffs.begin(), coeffs.end());
  trim(p);
  if (p.size() <= 1) return {};
  RPoly dp;
  for (std::size_t k = 1; k < p.size(); ++k) dp.push_back(p[k] * static_cast<long long>(k));
  RPoly g = rgcd(p, dp);
  RPoly sf = g.size() > 1 ? rdiv(p, g) : p;
  std::vector<std::complex<double>> c;
  for (const Rat& x : sf) c.emplace_back(static_cast<double>(x), 0.0);
  return poly_roots(c);
}

}  // namespace ffg
