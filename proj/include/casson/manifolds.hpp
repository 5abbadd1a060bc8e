#pragma once

// Catalog of the two manifold families the invariants are computed for:
// Brieskorn spheres Sigma(m,p,q) and the Seifert manifolds M_{m,n}.  Each
// entry carries a genus-g presentation, the group-ring boundary data of the
// associated closed 3-complex, and (for Seifert) the SL2(R) representation
// family indexed by admissible trace pairs.

#include <casson/local_systems.hpp>
#include <casson/matrix.hpp>
#include <casson/sl2.hpp>
#include <casson/words.hpp>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace casson {

struct BrieskornSpec {
  int m = 0, p = 0, q = 0;
  int d = 0;  // q = d*p + 1
};

struct SeifertSpec {
  int m = 0, n = 0;
};

inline BrieskornSpec brieskorn_spec(int m, int p, int q) {
  if (m < 3 || p < 3)
    throw std::invalid_argument("brieskorn spec needs m and p at least 3");
  if (q < 1 || (q - 1) % p != 0 || (q - 1) / p < 1)
    throw std::invalid_argument("brieskorn spec needs q = d*p + 1 with d >= 1");
  if (std::gcd(m, p) != 1 || std::gcd(m, q) != 1 || std::gcd(p, q) != 1)
    throw std::invalid_argument("brieskorn spec needs pairwise coprime m, p, q");
  return BrieskornSpec{m, p, q, (q - 1) / p};
}

inline SeifertSpec seifert_spec(int m, int n) {
  if (m < 1 || n < 1 || m % 2 == 0 || n % 2 == 0)
    throw std::invalid_argument("seifert catalog needs odd positive m and n");
  return SeifertSpec{m, n};
}

// 1/m + 1/n < 1/2: the range where the fundamental-class pairing applies
inline bool seifert_aspherical(const SeifertSpec& s) {
  return 2 * (s.m + s.n) < s.m * s.n;
}

struct ManifoldData {
  std::string name;
  ChainData chain;  // presentation, boundary matrices, top boundary row
  int genus = 0;

  const Presentation& presentation() const { return chain.pres; }
  // per-relator coefficients of the two-chain whose cone is the fundamental
  // class; identical to the top boundary row of the closed complex
  const std::vector<GroupRingElt>& fundamental_expansion() const { return chain.d3; }
};

// Cyclic relator family of Sigma(m,p,q), one relator per generator
// (subscripts mod m): p blocks of d positive letters, consecutive letters a
// block stepping by p and blocks offset by q, then q negative letters
// descending by p from (q-1)p.  The junction between the positive and
// negative parts telescopes through d letter pairs; word multiplication
// performs that reduction.
inline ManifoldData brieskorn(int m, int p, int q) {
  BrieskornSpec s = brieskorn_spec(m, p, q);
  auto gen_at = [m](long long idx) {
    long long r = idx % m;
    if (r < 0) r += m;
    return static_cast<int>(r) + 1;
  };

  Presentation pres;
  pres.gens = m;
  std::vector<GroupRingElt> d3;
  for (int i = 0; i < m; ++i) {
    Word r;
    for (int k = 0; k < p; ++k)
      for (int t = 0; t < s.d; ++t)
        r = r * Word::gen(gen_at(i + 1LL * k * q + 1 + 1LL * t * p));
    for (int neg = 1; neg <= q; ++neg)
      r = r * Word::gen(gen_at(i + 1LL * (q - neg) * p), -1);
    pres.relators.push_back(r);

    // the d-letter word preceding index i in p-steps; pairs with the fox
    // rows so the closed complex composes to zero at every representation
    Word w;
    for (int t = 0; t < s.d; ++t) w = w * Word::gen(gen_at(i - 1LL * (s.d - t) * p));
    d3.push_back(one_minus(w));
  }
  pres.validate();

  ManifoldData md;
  md.name = "Sigma(" + std::to_string(m) + "," + std::to_string(p) + "," + std::to_string(q) + ")";
  md.chain = chain_data(pres, std::move(d3));
  md.genus = m;
  return md;
}

// lattice points strictly inside the open tetrahedron s/m + t/p + u/q < 1
inline long long brieskorn_lattice_count(int m, int p, int q) {
  long long count = 0;
  for (long long a = 1; a < m; ++a)
    for (long long b = 1; b < p; ++b)
      for (long long c = 1; c < q; ++c)
        if (a * p * q + b * m * q + c * m * p < 1LL * m * p * q) ++count;
  return count;
}

// (m-1)(p-1)(q-1)/4 - 2 * lattice count; the product is divisible by 4 for
// pairwise coprime triples since at most one entry is even
inline long long brieskorn_count_formula(int m, int p, int q) {
  long long cube = 1LL * (m - 1) * (p - 1) * (q - 1);
  return cube / 4 - 2 * brieskorn_lattice_count(m, p, q);
}

// number of conjugacy classes of dense SL2(R) representations
inline long long brieskorn_count(int m, int p, int q) {
  brieskorn_spec(m, p, q);
  return brieskorn_count_formula(m, p, q);
}

inline ManifoldData seifert(int m, int n) {
  seifert_spec(m, n);
  Word x = Word::gen(1), y = Word::gen(2);

  Presentation pres;
  pres.gens = 2;
  pres.relators = {y.pow(n) * (x * y).pow(-2), x.pow(m) * (y * x).pow(-2)};
  pres.validate();

  ManifoldData md;
  md.name = "M(" + std::to_string(m) + "," + std::to_string(n) + ")";
  md.chain = chain_data(pres, {one_minus(y), one_minus(x)});
  md.genus = 2;
  return md;
}

struct SeifertRep {
  int k = 0, l = 0;          // trace-pair index: beta = 2cos(2 pi k/n), gamma = 2cos(2 pi l/m)
  double beta = 0, gamma = 0;
  Rep rep;
};

// representation with tr rho(y) = -beta, tr rho(x) = -gamma, tr rho(xy) = 0;
// requires beta^2 + gamma^2 > 4 so the off-diagonal square root is real
inline Rep seifert_rep_matrices(double beta, double gamma) {
  double disc = beta * beta + gamma * gamma - 4.0;
  if (disc <= 1e-12) throw std::domain_error("trace pair is not admissible");
  double rt = std::sqrt(disc);
  Mat2 ry, rxy;
  ry << -beta / 2.0, (gamma + rt) / 2.0, (-gamma + rt) / 2.0, -beta / 2.0;
  rxy << 0, -1, 1, 0;
  return Rep{{Mat2(rxy * sl2_inverse(ry)), ry}};
}

// all dense representations of M(m,n) up to conjugacy: integer pairs with
// 0 < k <= n/2, 0 < l <= m/2 and admissible traces
inline std::vector<SeifertRep> seifert_reps(int m, int n) {
  seifert_spec(m, n);
  std::vector<SeifertRep> out;
  for (int k = 1; 2 * k < n; ++k)
    for (int l = 1; 2 * l < m; ++l) {
      double beta = 2.0 * std::cos(2.0 * M_PI * k / n);
      double gamma = 2.0 * std::cos(2.0 * M_PI * l / m);
      if (beta * beta + gamma * gamma - 4.0 <= 1e-12) continue;
      out.push_back(SeifertRep{k, l, beta, gamma, seifert_rep_matrices(beta, gamma)});
    }
  return out;
}

// closed form for the two-dimensional twisted torsion of M(m,n) at the (k,l)
// trace pair
inline double seifert_torsion_closed(int m, int n, int k, int l) {
  seifert_spec(m, n);
  if (k <= 0 || 2 * k >= n || l <= 0 || 2 * l >= m)
    throw std::domain_error("trace-pair index outside the catalog range");
  double beta = 2.0 * std::cos(2.0 * M_PI * k / n);
  double gamma = 2.0 * std::cos(2.0 * M_PI * l / m);
  return 4.0 / ((2.0 - beta) * (2.0 - gamma));
}

// |det| of the square net-exponent matrix over exact rationals: the order of
// the abelianization when finite, 0 when infinite
inline long long homology_order(const Presentation& p) {
  if (static_cast<int>(p.relators.size()) != p.gens)
    throw std::invalid_argument("homology order needs as many relators as generators");
  Mat<Rat> a(p.gens, p.gens);
  for (int i = 0; i < p.gens; ++i)
    for (int j = 0; j < p.gens; ++j)
      a(i, j) = Rat(p.relators[static_cast<size_t>(j)].exponent_sum(i + 1));
  Rat dv = det(a);
  if (dv < 0) dv = -dv;
  return dv.convert_to<long long>();
}

}  // namespace casson
