#pragma once

// Algebraic torsion of a based cochain complex
//
//   0 -> C^0 -> C^1 -> ... -> C^m -> 0
//
// with distinguished bases c_i and (optionally) chosen cocycle lifts h_i of a
// cohomology basis per degree.  The torsion is the alternating ratio
//
//   T = prod_{i even} det[b_i h_i b~_{i+1} / c_i] / prod_{i odd} det[...]
//
// where b_{i+1} runs over the images of a pivot-column subset of the i-th
// coboundary and b~_{i+1} are the corresponding standard basis vectors, which
// makes the lifts free.  Even degrees carry the numerator.  The value is
// independent of the pivot choice; tests drive that with randomized subsets.

#include <casson/matrix.hpp>

#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace casson {

template <class S>
struct BasedComplex {
  std::vector<int> dims;               // dim C^0 .. dim C^m
  std::vector<Mat<S>> coboundaries;    // coboundaries[i]: C^i -> C^{i+1}
  std::vector<std::vector<Vec<S>>> h;  // cocycle lifts of a cohomology basis

  int length() const { return static_cast<int>(dims.size()) - 1; }

  int h_dim(int i) const {
    if (h.empty()) return 0;
    return static_cast<int>(h[static_cast<size_t>(i)].size());
  }

  void validate(double eps) const {
    detail::check_eps<S>(eps);
    if (dims.empty()) throw std::invalid_argument("complex needs at least one degree");
    for (int d : dims)
      if (d < 0) throw std::invalid_argument("negative dimension");
    if (coboundaries.size() + 1 != dims.size())
      throw std::invalid_argument("coboundary count does not match degree count");
    for (size_t i = 0; i < coboundaries.size(); ++i) {
      if (coboundaries[i].rows() != dims[i + 1] || coboundaries[i].cols() != dims[i])
        throw std::invalid_argument("coboundary shape mismatch in degree " + std::to_string(i));
    }
    if (!h.empty() && h.size() != dims.size())
      throw std::invalid_argument("cohomology basis count does not match degree count");
    for (size_t i = 0; i < h.size(); ++i)
      for (const auto& v : h[i])
        if (v.size() != dims[i])
          throw std::invalid_argument("cohomology vector size mismatch in degree " + std::to_string(i));

    for (size_t i = 0; i + 1 < coboundaries.size(); ++i) {
      Mat<S> sq = coboundaries[i + 1] * coboundaries[i];
      double tol = exact_scalar_v<S>
                       ? 0.0
                       : eps * (1.0 + max_abs(coboundaries[i + 1])) * (1.0 + max_abs(coboundaries[i]));
      if (!matrix_is_zero(sq, tol))
        throw std::domain_error("not a complex: d^2 != 0 at degree " + std::to_string(i));
    }
    for (size_t i = 0; i + 1 < h.size(); ++i) {
      for (const auto& v : h[i]) {
        Vec<S> img = coboundaries[i] * v;
        double tol =
            exact_scalar_v<S> ? 0.0 : eps * (1.0 + max_abs(coboundaries[i])) * (1.0 + max_abs(Mat<S>(v)));
        if (!matrix_is_zero(Mat<S>(img), tol))
          throw std::domain_error("cohomology vector is not a cocycle in degree " + std::to_string(i));
      }
    }
  }
};

// A maximal independent column subset per coboundary, drawn in random order.
// Any such family is a valid pivot choice for compute_torsion.
template <class S>
std::vector<std::vector<Eigen::Index>> random_pivot_subsets(const BasedComplex<S>& c, double eps,
                                                            std::mt19937_64& rng) {
  std::vector<std::vector<Eigen::Index>> out;
  for (const auto& d : c.coboundaries) {
    Eigen::Index target = static_cast<Eigen::Index>(pivot_columns(d, eps).size());
    std::vector<Eigen::Index> order(d.cols());
    for (Eigen::Index j = 0; j < d.cols(); ++j) order[j] = j;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Eigen::Index> chosen;
    for (Eigen::Index j : order) {
      if (static_cast<Eigen::Index>(chosen.size()) == target) break;
      std::vector<Eigen::Index> trial = chosen;
      trial.push_back(j);
      Mat<S> sel(d.rows(), static_cast<Eigen::Index>(trial.size()));
      for (size_t k = 0; k < trial.size(); ++k) sel.col(static_cast<Eigen::Index>(k)) = d.col(trial[k]);
      if (rank_eps(sel, eps) == static_cast<Eigen::Index>(trial.size())) chosen = trial;
    }
    out.push_back(chosen);
  }
  return out;
}

template <class S>
S compute_torsion(const BasedComplex<S>& c, double eps,
                  const std::vector<std::vector<Eigen::Index>>* pivot_override = nullptr) {
  c.validate(eps);
  const int m = c.length();

  std::vector<std::vector<Eigen::Index>> piv(static_cast<size_t>(std::max(m, 0)));
  for (int i = 0; i < m; ++i) {
    std::vector<Eigen::Index> def = pivot_columns(c.coboundaries[i], eps);
    if (pivot_override) {
      const auto& ov = (*pivot_override)[static_cast<size_t>(i)];
      if (ov.size() != def.size())
        throw std::invalid_argument("pivot override has wrong rank in degree " + std::to_string(i));
      Mat<S> sel(c.coboundaries[i].rows(), static_cast<Eigen::Index>(ov.size()));
      for (size_t k = 0; k < ov.size(); ++k)
        sel.col(static_cast<Eigen::Index>(k)) = c.coboundaries[i].col(ov[k]);
      if (rank_eps(sel, eps) != static_cast<Eigen::Index>(ov.size()))
        throw std::invalid_argument("pivot override columns are dependent in degree " + std::to_string(i));
      piv[static_cast<size_t>(i)] = ov;
    } else {
      piv[static_cast<size_t>(i)] = std::move(def);
    }
  }

  S num(1), den(1);
  for (int i = 0; i <= m; ++i) {
    std::vector<Vec<S>> cols;
    if (i > 0)
      for (Eigen::Index j : piv[static_cast<size_t>(i - 1)])
        cols.push_back(c.coboundaries[static_cast<size_t>(i - 1)].col(j));
    if (!c.h.empty())
      for (const auto& v : c.h[static_cast<size_t>(i)]) cols.push_back(v);
    if (i < m)
      for (Eigen::Index j : piv[static_cast<size_t>(i)]) {
        Vec<S> e = Vec<S>::Zero(c.dims[static_cast<size_t>(i)]);
        e(j) = S(1);
        cols.push_back(e);
      }
    if (static_cast<int>(cols.size()) != c.dims[static_cast<size_t>(i)])
      throw std::domain_error(
          "complex is not acyclic relative to the given cohomology basis in degree " + std::to_string(i));

    Mat<S> mi = cols_to_mat<S>(c.dims[static_cast<size_t>(i)], cols);
    S dt = det(mi);
    bool singular;
    if constexpr (exact_scalar_v<S>) {
      singular = (dt == 0);
    } else {
      // Hadamard bound gives the right scale for "numerically singular"
      double had = 1.0;
      for (Eigen::Index j = 0; j < mi.cols(); ++j) had *= std::max(1e-300, double(mi.col(j).norm()));
      singular = !(detail::fabs_of(dt) > eps * had);
    }
    if (singular)
      throw std::domain_error("cohomology lifts do not complete a basis in degree " + std::to_string(i));
    (i % 2 == 0 ? num : den) *= dt;
  }
  return num / den;
}

// Change-of-basis law.  det_c[j] is the determinant of the matrix expressing
// the old basis c_j in the new one; det_h[j] expresses the new cohomology
// lifts in the old ones.  The rebased torsion multiplies by their product to
// the power (-1)^j, which is exactly what recomputing with the new bases
// gives.
template <class S>
S rebase_torsion(S t, const std::vector<S>& det_c, const std::vector<S>& det_h) {
  if (det_c.size() != det_h.size()) throw std::invalid_argument("determinant lists differ in length");
  for (size_t j = 0; j < det_c.size(); ++j) {
    S f = det_c[j] * det_h[j];
    if (f == S(0)) throw std::domain_error("singular change of basis in degree " + std::to_string(j));
    if (j % 2 == 0)
      t *= f;
    else
      t /= f;
  }
  return t;
}

// Parity N(X) of the sign correction (-1)^{N(X)}: inclusive top-down partial
// sums of cohomology and cochain dimensions, multiplied and accumulated mod 2.
inline int n_parity(const std::vector<int>& cell_dims, const std::vector<int>& h_dims) {
  if (cell_dims.size() != h_dims.size()) throw std::invalid_argument("dimension lists differ in length");
  const int top = static_cast<int>(cell_dims.size()) - 1;
  long long n = 0;
  for (int i = 0; i <= top; ++i) {
    long long sh = 0, sc = 0;
    for (int j = 0; j <= i; ++j) {
      sh += h_dims[static_cast<size_t>(top - j)];
      sc += cell_dims[static_cast<size_t>(top - j)];
    }
    n += sh * sc;
  }
  return static_cast<int>(n & 1);
}

template <class SR>
int real_torsion_sign(const BasedComplex<SR>& real_cx, double eps_real) {
  static_assert(!std::is_same_v<SR, Cplx>, "the sign complex must be over an ordered field");
  SR t = compute_torsion(real_cx, eps_real);
  std::vector<int> hdims(real_cx.dims.size(), 0);
  for (size_t i = 0; i < real_cx.h.size(); ++i) hdims[i] = static_cast<int>(real_cx.h[i].size());
  int sgn = (t < SR(0)) ? -1 : 1;
  if (n_parity(real_cx.dims, hdims) % 2 == 1) sgn = -sgn;
  return sgn;
}

// Refined torsion: the sign of (-1)^{N(X)} times the real (untwisted) torsion,
// applied to the twisted torsion.  Both complexes must come from the same cell
// structure.
template <class SR, class ST>
ST refined_torsion(const BasedComplex<SR>& real_cx, double eps_real, const BasedComplex<ST>& twisted,
                   double eps_twisted, int coeff_dim) {
  if (real_cx.dims.size() != twisted.dims.size())
    throw std::invalid_argument("cell structures differ in length");
  for (size_t i = 0; i < real_cx.dims.size(); ++i)
    if (real_cx.dims[i] * coeff_dim != twisted.dims[i])
      throw std::invalid_argument("cell structures differ in degree " + std::to_string(i));
  ST t = compute_torsion(twisted, eps_twisted);
  return (real_torsion_sign(real_cx, eps_real) < 0) ? ST(ST(0) - t) : t;
}

template <class S>
struct LesResult {
  BasedComplex<S> les;  // the long exact cohomology sequence as an acyclic complex
  S h_torsion;
  int eta;
  bool multiplicative;
};

namespace detail {

// Coordinates of the class of cocycle z in the given cohomology basis of
// degree i, working modulo the coboundary image.
template <class S>
Vec<S> class_coords(const BasedComplex<S>& c, int i, const Vec<S>& z, double eps) {
  const int nh = c.h_dim(i);
  std::vector<Vec<S>> cols;
  for (int k = 0; k < nh; ++k) cols.push_back(c.h[static_cast<size_t>(i)][static_cast<size_t>(k)]);
  if (i > 0) {
    const Mat<S>& d = c.coboundaries[static_cast<size_t>(i - 1)];
    for (Eigen::Index j : pivot_columns(d, eps)) cols.push_back(d.col(j));
  }
  Mat<S> a = cols_to_mat<S>(c.dims[static_cast<size_t>(i)], cols);
  Vec<S> x = solve_system(a, z);
  if constexpr (!exact_scalar_v<S>) {
    double scale = 1.0 + max_abs(Mat<S>(z)) + max_abs(a);
    if (max_abs(Mat<S>((a * x - z).eval())) > 1e3 * eps * scale)
      throw std::domain_error("vector is not a cocycle class in degree " + std::to_string(i));
    // coordinates below the certified solve accuracy are indistinguishable
    // from zero; snapping them keeps noise-only columns at exact rank 0
    for (Eigen::Index k = 0; k < x.size(); ++k)
      if (detail::fabs_of(x(k)) <= 1e3 * eps * scale) x(k) = S(0);
  }
  return x.head(nh);
}

}  // namespace detail

// Multiplicativity of torsion over a short exact sequence of based complexes
// given in split form: total.dims[i] = sub.dims[i] + quotient.dims[i], the
// total coboundary is upper block triangular with the sub and quotient
// coboundaries on the diagonal (so the basis compatibility determinant is 1).
// Returns the long exact cohomology sequence with its torsion, the sign
// exponent eta, and whether
//   (-1)^eta T(total) = T(sub) T(quotient) T(les)
// holds.
template <class S>
LesResult<S> les_torsion_and_eta(const BasedComplex<S>& sub, const BasedComplex<S>& total,
                                 const BasedComplex<S>& quotient, double eps) {
  sub.validate(eps);
  total.validate(eps);
  quotient.validate(eps);
  const int m = sub.length();
  if (total.length() != m || quotient.length() != m)
    throw std::invalid_argument("the three complexes differ in length");

  std::vector<Mat<S>> hblk;  // connecting blocks C_quot^i -> C_sub^{i+1}
  for (int i = 0; i <= m; ++i) {
    if (sub.dims[static_cast<size_t>(i)] + quotient.dims[static_cast<size_t>(i)] !=
        total.dims[static_cast<size_t>(i)])
      throw std::invalid_argument("total complex does not split the dimensions in degree " +
                                  std::to_string(i));
  }
  for (int i = 0; i < m; ++i) {
    const Mat<S>& dt = total.coboundaries[static_cast<size_t>(i)];
    int rs = sub.dims[static_cast<size_t>(i + 1)], cs = sub.dims[static_cast<size_t>(i)];
    int rq = quotient.dims[static_cast<size_t>(i + 1)], cq = quotient.dims[static_cast<size_t>(i)];
    double tol = exact_scalar_v<S> ? 0.0 : eps * (1.0 + max_abs(dt));
    if (!matrix_is_zero(Mat<S>(dt.bottomLeftCorner(rq, cs)), tol) ||
        !matrix_is_zero(Mat<S>((dt.topLeftCorner(rs, cs) - sub.coboundaries[static_cast<size_t>(i)]).eval()),
                        tol) ||
        !matrix_is_zero(
            Mat<S>((dt.bottomRightCorner(rq, cq) - quotient.coboundaries[static_cast<size_t>(i)]).eval()),
            tol))
      throw std::invalid_argument("total coboundary is not split compatible in degree " + std::to_string(i));
    hblk.push_back(dt.topRightCorner(rs, cq));
  }

  // cohomology maps in the chosen bases
  std::vector<Mat<S>> jmap, kmap, cmap;
  for (int i = 0; i <= m; ++i) {
    int ns = sub.h_dim(i), nt = total.h_dim(i), nq = quotient.h_dim(i);
    Mat<S> jm(nt, ns);
    for (int k = 0; k < ns; ++k) {
      Vec<S> z = Vec<S>::Zero(total.dims[static_cast<size_t>(i)]);
      z.head(sub.dims[static_cast<size_t>(i)]) = sub.h[static_cast<size_t>(i)][static_cast<size_t>(k)];
      jm.col(k) = detail::class_coords(total, i, z, eps);
    }
    jmap.push_back(jm);
    Mat<S> km(nq, nt);
    for (int k = 0; k < nt; ++k) {
      Vec<S> z =
          total.h[static_cast<size_t>(i)][static_cast<size_t>(k)].tail(quotient.dims[static_cast<size_t>(i)]);
      km.col(k) = detail::class_coords(quotient, i, z, eps);
    }
    kmap.push_back(km);
    int ns1 = (i < m) ? sub.h_dim(i + 1) : 0;
    Mat<S> cm(ns1, nq);
    for (int k = 0; k < nq && i < m; ++k) {
      Vec<S> z = hblk[static_cast<size_t>(i)] * quotient.h[static_cast<size_t>(i)][static_cast<size_t>(k)];
      cm.col(k) = detail::class_coords(sub, i + 1, z, eps);
    }
    cmap.push_back(cm);
  }

  // long exact sequence, flattened to a single acyclic based complex
  BasedComplex<S> les;
  for (int i = 0; i <= m; ++i) {
    les.dims.push_back(sub.h_dim(i));
    les.dims.push_back(total.h_dim(i));
    les.dims.push_back(quotient.h_dim(i));
    les.coboundaries.push_back(jmap[static_cast<size_t>(i)]);
    les.coboundaries.push_back(kmap[static_cast<size_t>(i)]);
    if (i < m) les.coboundaries.push_back(cmap[static_cast<size_t>(i)]);
  }
  S t_les = compute_torsion(les, eps);

  long long eta = 0;
  for (int i = 0; i <= m; ++i) {
    long long rj = rank_eps(jmap[static_cast<size_t>(i)], eps);
    long long rk = rank_eps(kmap[static_cast<size_t>(i)], eps);
    long long b_up = (i < m) ? static_cast<long long>(
                                   pivot_columns(sub.coboundaries[static_cast<size_t>(i)], eps).size())
                             : 0;    // dim B^{i+1} of the subcomplex
    long long b_q = (i > 0) ? static_cast<long long>(
                                  pivot_columns(quotient.coboundaries[static_cast<size_t>(i - 1)], eps).size())
                            : 0;  // dim B^i of the quotient
    eta += rj * b_q + rk * b_up + b_up * b_q;
  }
  int eta2 = static_cast<int>(eta & 1);

  S lhs = compute_torsion(total, eps);
  if (eta2) lhs = S(0) - lhs;
  S rhs = compute_torsion(sub, eps) * compute_torsion(quotient, eps) * t_les;
  bool ok;
  if constexpr (exact_scalar_v<S>) {
    ok = (lhs == rhs);
  } else {
    ok = detail::fabs_of(S(lhs - rhs)) <= 1e-6 * (1.0 + detail::fabs_of(rhs));
  }
  return {std::move(les), t_les, eta2, ok};
}

}  // namespace casson
