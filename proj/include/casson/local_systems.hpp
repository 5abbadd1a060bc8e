#pragma once

// Twisted cochain complexes of presentation 2- and 3-complexes.  A chain
// datum packages the group-ring boundary maps; a representation plus a
// coefficient kind turns it into a based complex over R or C ready for the
// torsion routines.

#include <casson/matrix.hpp>
#include <casson/sl2.hpp>
#include <casson/torsion.hpp>
#include <casson/words.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace casson {

enum class CoefficientKind { Standard2, Adjoint3, Trivial1 };

inline int coeff_dim(CoefficientKind k) {
  switch (k) {
    case CoefficientKind::Standard2: return 2;
    case CoefficientKind::Adjoint3: return 3;
    case CoefficientKind::Trivial1: return 1;
  }
  throw std::invalid_argument("unknown coefficient kind");
}

struct ChainData {
  Presentation pres;
  BoundaryMatrices bm;            // bm.d1[i] = 1 - x_i, bm.d2[i][j] = dr_j/dx_i
  std::vector<GroupRingElt> d3;   // empty for a 2-complex, one entry per relator otherwise

  bool closed() const { return !d3.empty(); }

  std::vector<int> cell_dims() const {
    std::vector<int> dims = {1, pres.gens, static_cast<int>(pres.relators.size())};
    if (closed()) dims.push_back(1);
    return dims;
  }
};

inline ChainData chain_data(const Presentation& p, std::vector<GroupRingElt> d3 = {}) {
  if (!d3.empty() && d3.size() != p.relators.size())
    throw std::invalid_argument("top boundary needs one entry per relator");
  return ChainData{p, boundary_matrices(p), std::move(d3)};
}

// rho_kind of a single group element
template <class M>
Mat<typename M::Scalar> rep_matrix(const RepT<M>& rep, const Word& w, CoefficientKind kind) {
  using S = typename M::Scalar;
  switch (kind) {
    case CoefficientKind::Standard2: {
      M v = evaluate_word(rep, w);
      return Mat<S>(v);
    }
    case CoefficientKind::Adjoint3: {
      M v = evaluate_word(rep, w);
      return Mat<S>(adjoint_matrix(v));
    }
    case CoefficientKind::Trivial1: {
      // still rejects words outside the generating set
      (void)evaluate_word(rep, w);
      Mat<S> one(1, 1);
      one(0, 0) = S(1);
      return one;
    }
  }
  throw std::invalid_argument("unknown coefficient kind");
}

template <class M>
Mat<typename M::Scalar> evaluate_group_ring(const GroupRingElt& e, const RepT<M>& rep,
                                            CoefficientKind kind) {
  using S = typename M::Scalar;
  int n = coeff_dim(kind);
  Mat<S> out = Mat<S>::Zero(n, n);
  for (const auto& [w, c] : e.terms()) out += S(static_cast<double>(c)) * rep_matrix(rep, w, kind);
  return out;
}

// Cochain complex Hom(C_*, V) with the blocks transposed relative to the
// group-ring boundary matrices: delta^i has block (j, k) = rho(d_{i+1}[k][j]).
template <class M>
BasedComplex<typename M::Scalar> twisted_cochain_complex(const ChainData& cd, const RepT<M>& rep,
                                                         CoefficientKind kind, double eps = 1e-9) {
  using S = typename M::Scalar;
  if (static_cast<int>(rep.gens.size()) != cd.pres.gens)
    throw std::invalid_argument("generator count does not match the representation");
  for (size_t j = 0; j < cd.pres.relators.size(); ++j) {
    M v = evaluate_word(rep, cd.pres.relators[j]);
    if ((v - M::Identity()).cwiseAbs().maxCoeff() > eps)
      throw std::domain_error("representation violates relator " + std::to_string(j + 1));
  }

  int n = coeff_dim(kind);
  int g = cd.pres.gens;
  int r = static_cast<int>(cd.pres.relators.size());

  BasedComplex<S> c;
  for (int d : cd.cell_dims()) c.dims.push_back(n * d);
  c.h.assign(c.dims.size(), {});

  Mat<S> delta0 = Mat<S>::Zero(static_cast<Eigen::Index>(n) * g, n);
  for (int i = 0; i < g; ++i)
    delta0.block(static_cast<Eigen::Index>(n) * i, 0, n, n) =
        evaluate_group_ring(cd.bm.d1[static_cast<size_t>(i)], rep, kind);
  c.coboundaries.push_back(delta0);

  Mat<S> delta1 = Mat<S>::Zero(static_cast<Eigen::Index>(n) * r, static_cast<Eigen::Index>(n) * g);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < g; ++i)
      delta1.block(static_cast<Eigen::Index>(n) * j, static_cast<Eigen::Index>(n) * i, n, n) =
          evaluate_group_ring(cd.bm.d2[static_cast<size_t>(i)][static_cast<size_t>(j)], rep, kind);
  c.coboundaries.push_back(delta1);

  if (cd.closed()) {
    Mat<S> delta2 = Mat<S>::Zero(n, static_cast<Eigen::Index>(n) * r);
    for (int j = 0; j < r; ++j)
      delta2.block(0, static_cast<Eigen::Index>(n) * j, n, n) =
          evaluate_group_ring(cd.d3[static_cast<size_t>(j)], rep, kind);
    c.coboundaries.push_back(delta2);
  }

  for (size_t i = 0; i + 1 < c.coboundaries.size(); ++i) {
    Mat<S> comp = c.coboundaries[i + 1] * c.coboundaries[i];
    double scale = (1.0 + max_abs(c.coboundaries[i + 1])) * (1.0 + max_abs(c.coboundaries[i]));
    if (max_abs(comp) > eps * scale)
      throw std::domain_error("coboundaries do not compose to zero; top boundary is inconsistent");
  }
  return c;
}

// H^1 = H^2 = 0 for the adjoint complex, by rank counting.  H^0 = 0 is
// required as well: it detects reducible representations, which are never
// transversal even when the middle cohomology happens to vanish (as it does
// for the trivial representation on a homology sphere).
template <class M>
bool transversality_check(const ChainData& cd, const RepT<M>& rep, double eps = 1e-9) {
  if (!cd.closed()) throw std::invalid_argument("transversality check needs a closed complex");
  auto c = twisted_cochain_complex(cd, rep, CoefficientKind::Adjoint3, eps);
  int r0 = static_cast<int>(rank_eps(c.coboundaries[0], eps));
  int r1 = static_cast<int>(rank_eps(c.coboundaries[1], eps));
  int r2 = static_cast<int>(rank_eps(c.coboundaries[2], eps));
  int h0 = c.dims[0] - r0;
  int h1 = (c.dims[1] - r1) - r0;
  int h2 = (c.dims[2] - r2) - r1;
  return h0 == 0 && h1 == 0 && h2 == 0;
}

}  // namespace casson
