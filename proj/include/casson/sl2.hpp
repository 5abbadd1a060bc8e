#pragma once

// 2x2 representation plumbing: word evaluation, relator verification, the
// adjoint action on sl2 in the basis {H, E, F}, the Killing form, the
// projective base point g*infinity, and the Zariski density test.
//
// Real representations target SL2(R).  The same templates run on complex
// 2x2 matrices for the unitary representations used by the surface code.

#include <casson/matrix.hpp>
#include <casson/words.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace casson {

using Mat2 = Eigen::Matrix2d;
using Mat2c = Eigen::Matrix2cd;
using Mat3 = Eigen::Matrix3d;
using Mat3c = Eigen::Matrix3cd;

template <class M>
struct RepT {
  std::vector<M> gens;  // image of x1, x2, ... in order
};

using Rep = RepT<Mat2>;
using RepC = RepT<Mat2c>;

// inverse via the adjugate; exact for unit determinant and cheaper than LU
template <class M>
M sl2_inverse(const M& g) {
  M inv;
  inv << g(1, 1), -g(0, 1), -g(1, 0), g(0, 0);
  return inv;
}

template <class M>
double unit_det_error(const M& g) {
  return std::abs(g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0) - typename M::Scalar(1));
}

template <class M>
M evaluate_word(const RepT<M>& rep, const Word& w) {
  M out = M::Identity();
  for (const Letter& l : w.letters()) {
    if (l.gen > static_cast<int>(rep.gens.size()))
      throw std::invalid_argument("word uses generator x" + std::to_string(l.gen) +
                                  " beyond the representation");
    const M& g = rep.gens[static_cast<size_t>(l.gen - 1)];
    out = out * (l.exp > 0 ? g : sl2_inverse(g));
  }
  return out;
}

template <class M>
bool verify_relators(const Presentation& p, const RepT<M>& rep, double eps) {
  if (static_cast<int>(rep.gens.size()) != p.gens)
    throw std::invalid_argument("generator count does not match the representation");
  for (const Word& r : p.relators) {
    M v = evaluate_word(rep, r);
    if ((v - M::Identity()).cwiseAbs().maxCoeff() > eps) return false;
  }
  return true;
}

// coordinates of a traceless 2x2 matrix in the basis {H, E, F}
template <class M>
Eigen::Matrix<typename M::Scalar, 3, 1> sl2_coords(const M& x) {
  Eigen::Matrix<typename M::Scalar, 3, 1> v;
  v << x(0, 0), x(0, 1), x(1, 0);
  return v;
}

template <class M>
M sl2_from_coords(const Eigen::Matrix<typename M::Scalar, 3, 1>& v) {
  M x;
  x << v(0), v(1), v(2), -v(0);
  return x;
}

// matrix of X -> g X g^-1 in the basis {H, E, F}
template <class M>
Eigen::Matrix<typename M::Scalar, 3, 3> adjoint_matrix(const M& g) {
  using S = typename M::Scalar;
  M ginv = sl2_inverse(g);
  Eigen::Matrix<S, 3, 3> ad;
  for (int k = 0; k < 3; ++k) {
    Eigen::Matrix<S, 3, 1> e = Eigen::Matrix<S, 3, 1>::Zero();
    e(k) = S(1);
    ad.col(k) = sl2_coords<M>(M(g * sl2_from_coords<M>(e) * ginv));
  }
  return ad;
}

template <class M>
typename M::Scalar killing_form(const M& x, const M& y) {
  double scale = 1.0 + x.cwiseAbs().maxCoeff() + y.cwiseAbs().maxCoeff();
  if (std::abs(x(0, 0) + x(1, 1)) > 1e-9 * scale || std::abs(y(0, 0) + y(1, 1)) > 1e-9 * scale)
    throw std::invalid_argument("killing form needs traceless arguments");
  return typename M::Scalar(4) * (x * y).trace();
}

// Image of the projective base point: b/d when d is away from zero, a/c
// otherwise (unit determinant rules out both vanishing).
inline double mobius_infinity(const Mat2& g, double eps_d = 1e-8) {
  if (std::abs(g(1, 1)) > eps_d) return g(0, 1) / g(1, 1);
  return g(0, 0) / g(1, 0);
}

namespace detail {

// All subspaces V cap ker(ad - lambda I) over real eigenvalues lambda, for
// each candidate subspace V (columns of a basis matrix).  Defective inputs
// (parabolic adjoints are 3x3 Jordan blocks) scatter their eigenvalue by
// O(machine_eps^(1/3)) with spurious imaginary parts, so the eigenvalue
// filter and the kernel rank cut are kept much looser than eps.  Loose cuts
// only ever enlarge candidate spaces, which biases the density check toward
// reporting false.
inline std::vector<MatD> eigen_refine(const std::vector<MatD>& candidates, const Mat3& ad, double eps) {
  const double lam_tol = 1e-4;
  const double ker_eps = std::max(eps, 1e-5);
  Eigen::EigenSolver<Mat3> es(ad);
  std::vector<double> lambdas;
  for (int k = 0; k < 3; ++k) {
    std::complex<double> l = es.eigenvalues()(k);
    if (std::abs(l.imag()) > lam_tol * (1.0 + std::abs(l))) continue;
    bool dup = false;
    for (double seen : lambdas)
      if (std::abs(seen - l.real()) <= lam_tol * (1.0 + std::abs(l))) dup = true;
    if (!dup) lambdas.push_back(l.real());
  }
  std::vector<MatD> out;
  for (const MatD& v : candidates) {
    for (double l : lambdas) {
      MatD shifted = MatD(ad) - l * MatD::Identity(3, 3);
      // intersection of span(v) with ker(shifted): kernel of shifted*v
      auto ker = kernel_basis<double>(MatD(shifted * v), ker_eps);
      if (ker.empty()) continue;
      MatD inter(3, static_cast<Eigen::Index>(ker.size()));
      for (size_t j = 0; j < ker.size(); ++j) inter.col(static_cast<Eigen::Index>(j)) = v * ker[j];
      out.push_back(inter);
    }
  }
  return out;
}

inline bool common_invariant_line(const std::vector<Mat3>& ads, double eps) {
  std::vector<MatD> candidates = {MatD::Identity(3, 3)};
  for (const Mat3& ad : ads) {
    candidates = eigen_refine(candidates, ad, eps);
    if (candidates.empty()) return false;
  }
  return true;
}

}  // namespace detail

// Density of the group generated by gens in SL2(R): no common invariant line
// or plane for the adjoint action, plus an infinite-order witness among the
// generators, their pairwise products and quotients, and their commutators.
// The witness test is conservative: groups of unclear order report false.
inline bool zariski_dense_check(const std::vector<Mat2>& gens, double eps) {
  if (gens.empty()) throw std::invalid_argument("density check needs at least one generator");

  auto hyperbolic = [eps](const Mat2& g) { return std::abs(g.trace()) > 2.0 + eps; };
  bool infinite = false;
  for (const Mat2& g : gens)
    if (hyperbolic(g)) infinite = true;
  for (size_t i = 0; i < gens.size() && !infinite; ++i)
    for (size_t j = 0; j < gens.size() && !infinite; ++j) {
      Mat2 gj_inv = sl2_inverse(gens[j]);
      if (hyperbolic(gens[i] * gens[j]) || hyperbolic(gens[i] * gj_inv) ||
          hyperbolic(gens[i] * gens[j] * sl2_inverse(gens[i]) * gj_inv))
        infinite = true;
    }
  if (!infinite) return false;

  std::vector<Mat3> ads, duals;
  for (const Mat2& g : gens) {
    Mat3 ad = adjoint_matrix(g);
    ads.push_back(ad);
    duals.push_back(Mat3(ad.inverse().transpose()));  // invariant planes = dual invariant lines
  }
  if (detail::common_invariant_line(ads, eps)) return false;
  if (detail::common_invariant_line(duals, eps)) return false;
  return true;
}

}  // namespace casson
