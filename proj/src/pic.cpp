#include "ffg/pic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "ffg/error.hpp"
#include "ffg/polyalg.hpp"

namespace ffg {

bool is_mumford(const MumfordIdeal& x, const QuadDiscriminant& D) {
  if (!x.a.is_monic() || x.b.deg() >= x.a.deg()) return false;
  return ((x.b * x.b - D.D) % x.a).is_zero();
}

bool is_reduced(const MumfordIdeal& x, const QuadDiscriminant& D) {
  return is_mumford(x, D) && x.a.deg() <= D.genus;
}

MumfordIdeal mumford_identity(const Field& f) { return {Poly::one(f), Poly(f)}; }

MumfordIdeal cantor_inverse(const MumfordIdeal& x) { return {x.a, (-x.b) % x.a}; }

MumfordIdeal cantor_reduce(MumfordIdeal x, const QuadDiscriminant& D) {
  x.b = x.b % x.a;
  while (x.a.deg() > D.genus) {
    Poly a2 = (D.D - x.b * x.b) / x.a;
    a2 = a2.monic();
    x.b = (-x.b) % a2;
    x.a = std::move(a2);
  }
  return x;
}

MumfordIdeal cantor_mul(const MumfordIdeal& x, const MumfordIdeal& y, const QuadDiscriminant& D) {
  XGcd g1 = xgcd(x.a, y.a);
  XGcd g2 = xgcd(g1.g, x.b + y.b);
  const Poly& d = g2.g;
  Poly s1 = g2.s * g1.s, s2 = g2.s * g1.t, s3 = g2.t;
  Poly a = x.a * y.a / (d * d);
  Poly b = (s1 * x.a * y.b + s2 * y.a * x.b + s3 * (x.b * y.b + D.D)) / d;
  MumfordIdeal z{a.monic(), Poly(D.D.F())};
  z.b = b % z.a;
  return cantor_reduce(std::move(z), D);
}

MumfordIdeal cantor_pow(const MumfordIdeal& x, std::uint64_t k, const QuadDiscriminant& D) {
  MumfordIdeal r = mumford_identity(D.D.F()), b = x;
  while (k) {
    if (k & 1) r = cantor_mul(r, b, D);
    k >>= 1;
    if (k) b = cantor_mul(b, b, D);
  }
  return r;
}

std::string to_string(const MumfordIdeal& x) { return "(" + format_poly(x.a) + ", " + format_poly(x.b) + ")"; }

std::vector<MumfordIdeal> reduced_mumford_pairs(const QuadDiscriminant& D) {
  const Field& f = D.D.F();
  std::vector<MumfordIdeal> out{mumford_identity(f)};
  std::uint64_t na = 1;
  for (int da = 1; da <= D.genus; ++da) {
    na *= f.order();
    for (std::uint64_t ka = 0; ka < na; ++ka) {
      Poly a = Poly::from_index(f, ka, da);
      Poly Dm = D.D % a;
      for (std::uint64_t kb = 0; kb < na; ++kb) {
        Poly b = Poly::from_index(f, kb);
        if ((b * b) % a == Dm) out.push_back({a, b});
      }
    }
  }
  return out;
}

std::uint64_t PicGroup::key(const MumfordIdeal& x) const {
  std::uint64_t qg = 1;
  for (int k = 0; k < D_.genus; ++k) qg *= D_.D.F().order();
  return x.a.index() * qg + x.b.index();
}

PicGroup::PicGroup(const QuadDiscriminant& D, std::size_t cap) : D_(D) {
  elems_ = reduced_mumford_pairs(D);
  require(elems_.size() <= cap, "class number " + std::to_string(elems_.size()) + " exceeds the configured cap");
  for (std::size_t i = 0; i < elems_.size(); ++i) index_[key(elems_[i])] = i;
}

std::size_t PicGroup::index_of(const MumfordIdeal& x) const {
  auto it = index_.find(key(x));
  ensure(it != index_.end() && elems_[it->second] == x, "Mumford pair " + to_string(x) + " is not a reduced class");
  return it->second;
}

std::size_t PicGroup::mul(std::size_t i, std::size_t j) const { return index_of(cantor_mul(elems_[i], elems_[j], D_)); }

std::size_t PicGroup::inverse(std::size_t i) const { return index_of(cantor_inverse(elems_[i])); }

std::size_t PicGroup::element_order(std::size_t i) const {
  std::size_t k = 1, x = i;
  while (x != 0) {
    x = mul(x, i);
    ++k;
    ensure(k <= elems_.size(), "element order exceeds group order");
  }
  return k;
}

void PicGroup::compute_structure() const {
  if (have_structure_) return;
  const std::size_t h = elems_.size();
  std::vector<std::size_t> ord(h);
  for (std::size_t i = 0; i < h; ++i) ord[i] = element_order(i);

  std::vector<std::uint64_t> primes;
  {
    std::size_t n = h;
    for (std::size_t p = 2; p * p <= n; ++p)
      if (n % p == 0) {
        primes.push_back(p);
        while (n % p == 0) n /= p;
      }
    if (n > 1) primes.push_back(n);
  }

  std::vector<std::size_t> basis;
  std::vector<std::uint64_t> divs;
  for (std::uint64_t ell : primes) {
    auto is_ell_power = [&](std::size_t n) {
      while (n % ell == 0) n /= ell;
      return n == 1;
    };
    std::vector<std::size_t> S;
    for (std::size_t i = 0; i < h; ++i)
      if (is_ell_power(ord[i])) S.push_back(i);
    std::vector<char> inH(h, 0);
    std::vector<std::size_t> H{0};
    inH[0] = 1;
    while (H.size() < S.size()) {
      // Largest order modulo H; among those, an element whose own order
      // equals it, so that <s> meets H trivially.
      std::size_t best_o = 0;
      std::vector<std::size_t> cands;
      for (std::size_t s : S) {
        if (inH[s]) continue;
        std::size_t o = 1, x = s;
        while (!inH[x]) {
          x = mul(x, s);
          ++o;
        }
        if (o > best_o) {
          best_o = o;
          cands.assign(1, s);
        } else if (o == best_o) {
          cands.push_back(s);
        }
      }
      std::size_t pick = h;
      for (std::size_t s : cands)
        if (ord[s] == best_o) {
          pick = s;
          break;
        }
      ensure(pick != h, "no complement generator found in Sylow subgroup");
      std::vector<std::size_t> H2;
      for (std::size_t x : H) {
        std::size_t y = x;
        for (std::size_t k = 0; k < best_o; ++k) {
          ensure(k == 0 || !inH[y], "Sylow basis is not independent");
          H2.push_back(y);
          y = mul(y, pick);
        }
      }
      for (std::size_t y : H2) inH[y] = 1;
      H = std::move(H2);
      basis.push_back(pick);
      divs.push_back(best_o);
    }
  }

  // Exponent vectors of every element in the combined basis.
  std::vector<std::vector<std::uint64_t>> coords(h);
  std::vector<char> seen(h, 0);
  std::vector<std::size_t> cur{0};
  coords[0].assign(basis.size(), 0);
  seen[0] = 1;
  for (std::size_t g = 0; g < basis.size(); ++g) {
    std::vector<std::size_t> next;
    for (std::size_t x : cur) {
      std::size_t y = x;
      for (std::uint64_t k = 0; k < divs[g]; ++k) {
        if (k > 0) {
          ensure(!seen[y], "basis does not give unique coordinates");
          seen[y] = 1;
          coords[y] = coords[x];
          coords[y][g] = k;
        }
        next.push_back(y);
        y = mul(y, basis[g]);
      }
    }
    cur = std::move(next);
  }
  ensure(cur.size() == h, "basis does not span the class group");
  std::uint64_t prod = 1;
  for (auto d : divs) prod *= d;
  ensure(prod == h, "elementary divisors do not multiply to h");
  basis_ = std::move(basis);
  divisors_ = std::move(divs);
  coords_ = std::move(coords);
  have_structure_ = true;
}

const std::vector<std::size_t>& PicGroup::basis() const {
  compute_structure();
  return basis_;
}

const std::vector<std::uint64_t>& PicGroup::elementary_divisors() const {
  compute_structure();
  return divisors_;
}

const std::vector<std::vector<std::uint64_t>>& PicGroup::coordinates() const {
  compute_structure();
  return coords_;
}

std::vector<std::size_t> PicGroup::subgroup(const std::vector<std::size_t>& gens) const {
  std::set<std::size_t> S{0};
  std::vector<std::size_t> frontier{0};
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t x : frontier)
      for (std::size_t g : gens) {
        std::size_t y = mul(x, g);
        if (S.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return {S.begin(), S.end()};
}

ClassCharacter::ClassCharacter(const PicGroup& G, std::vector<std::uint64_t> exponents)
    : G_(&G), k_(std::move(exponents)) {
  const auto& d = G.elementary_divisors();
  require(k_.size() == d.size(), "character exponent vector has the wrong length");
  for (std::size_t i = 0; i < d.size(); ++i) {
    k_[i] %= d[i];
    order_ = std::lcm(order_, d[i] / std::gcd(k_[i], d[i]));
  }
}

namespace {

// Phase of chi at exponent vector c as an exact fraction N / L of a turn.
std::pair<std::uint64_t, std::uint64_t> phase(const std::vector<std::uint64_t>& k,
                                               const std::vector<std::uint64_t>& c,
                                               const std::vector<std::uint64_t>& d) {
  std::uint64_t L = 1;
  for (auto x : d) L = std::lcm(L, x);
  std::uint64_t N = 0;
  for (std::size_t i = 0; i < d.size(); ++i) N = (N + (k[i] * c[i] % d[i]) * (L / d[i])) % L;
  return {N, L};
}

std::complex<double> turn(std::uint64_t N, std::uint64_t L) {
  if (N == 0) return {1.0, 0.0};
  const double a = 2.0 * M_PI * static_cast<double>(N) / static_cast<double>(L);
  return {std::cos(a), std::sin(a)};
}

}  // namespace

std::complex<double> ClassCharacter::operator()(std::size_t elem) const {
  auto [N, L] = phase(k_, G_->coordinates()[elem], G_->elementary_divisors());
  return turn(N, L);
}

std::complex<double> ClassCharacter::on_generator(std::size_t i) const {
  const auto& d = G_->elementary_divisors();
  return turn(k_[i] % d[i], d[i]);
}

bool ClassCharacter::is_trivial_on(const std::vector<std::size_t>& elems) const {
  for (std::size_t e : elems)
    if (phase(k_, G_->coordinates()[e], G_->elementary_divisors()).first != 0) return false;
  return true;
}

ClassCharacter ClassCharacter::conjugate() const {
  const auto& d = G_->elementary_divisors();
  std::vector<std::uint64_t> k(k_.size());
  for (std::size_t i = 0; i < k.size(); ++i) k[i] = (d[i] - k_[i]) % d[i];
  return ClassCharacter(*G_, k);
}

std::uint64_t ClassCharacter::id() const {
  const auto& d = G_->elementary_divisors();
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < d.size(); ++i) r = r * d[i] + k_[i];
  return r;
}

std::vector<ClassCharacter> characters(const PicGroup& P, const std::vector<std::size_t>& G) {
  const auto& d = P.elementary_divisors();
  std::vector<ClassCharacter> out;
  std::vector<std::uint64_t> k(d.size(), 0);
  for (;;) {
    ClassCharacter chi(P, k);
    if (chi.is_trivial_on(G)) out.push_back(chi);
    std::size_t i = d.size();
    while (i > 0) {
      --i;
      if (++k[i] < d[i]) break;
      k[i] = 0;
      if (i == 0) {
        i = d.size() + 1;
        break;
      }
    }
    if (d.empty() || i == d.size() + 1) break;
  }
  const std::size_t gsize = P.subgroup(G).size();
  ensure(out.size() * gsize == P.order(), "number of characters trivial on G is not [Pic:G]");
  return out;
}

}  // namespace ffg
