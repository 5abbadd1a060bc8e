#pragma once

// Dense linear algebra over the two scalar backends used throughout:
//   double            - floating point, every rank/kernel decision takes an
//                       explicit tolerance eps > 0 (pivots are compared
//                       against eps * |largest pivot|, complete pivoting)
//   Rat (GMP mpq)     - exact rationals, the tolerance must be 0 and every
//                       zero test is exact
// complex<double> is supported where the float rules make sense (det, rank,
// kernel); it shares the double tolerance semantics.
//
// Mixing backends in one expression is a compile error by construction, which
// is the intended contract.

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <complex>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace casson {

using Rat = boost::multiprecision::mpq_rational;
using Cplx = std::complex<double>;

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using MatD = Mat<double>;
using VecD = Vec<double>;
using MatQ = Mat<Rat>;
using VecQ = Vec<Rat>;
using MatC = Mat<Cplx>;
using VecC = Vec<Cplx>;

template <class S>
inline constexpr bool exact_scalar_v = std::is_same_v<S, Rat>;

inline double to_double(const Rat& x) { return x.convert_to<double>(); }
inline double to_double(double x) { return x; }

inline MatD to_double(const MatQ& m) {
  MatD out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
  return out;
}

inline Rat rat_parse(const std::string& s) {
  try {
    return Rat(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational literal: " + s);
  }
}

namespace detail {

template <class S>
double fabs_of(const S& x) {
  if constexpr (exact_scalar_v<S>)
    return to_double(Rat(abs(x)));
  else
    return std::abs(x);
}

template <class S>
void check_eps(double eps) {
  if constexpr (exact_scalar_v<S>) {
    if (eps != 0.0) throw std::invalid_argument("exact backend requires eps = 0");
  } else {
    if (!(eps > 0.0)) throw std::invalid_argument("float backend requires eps > 0");
  }
}

template <class S>
auto lu_threshold(double eps) {
  if constexpr (exact_scalar_v<S>)
    return Rat(0);
  else
    return eps;
}

}  // namespace detail

template <class S>
S det(const Mat<S>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det of a non-square matrix");
  if (m.rows() == 0) return S(1);
  if constexpr (exact_scalar_v<S>) {
    // full pivoting stops cleanly at a zero pivot, partial pivoting would divide by it
    return Eigen::FullPivLU<Mat<S>>(m).determinant();
  } else {
    return Eigen::PartialPivLU<Mat<S>>(m).determinant();
  }
}

template <class S>
Eigen::Index rank_eps(const Mat<S>& m, double eps) {
  detail::check_eps<S>(eps);
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::FullPivLU<Mat<S>> lu(m);
  lu.setThreshold(detail::lu_threshold<S>(eps));
  return lu.rank();
}

// Column indices (ascending) of a maximal independent set of columns, as
// selected by a rank-revealing decomposition. size() == rank.
template <class S>
std::vector<Eigen::Index> pivot_columns(const Mat<S>& m, double eps) {
  detail::check_eps<S>(eps);
  std::vector<Eigen::Index> cols;
  if (m.rows() == 0 || m.cols() == 0) return cols;
  if constexpr (exact_scalar_v<S>) {
    // plain row reduction; leftmost nonzero column at each step
    Mat<S> a = m;
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < a.cols() && r < a.rows(); ++c) {
      Eigen::Index piv = -1;
      for (Eigen::Index i = r; i < a.rows(); ++i)
        if (a(i, c) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) continue;
      a.row(piv).swap(a.row(r));
      for (Eigen::Index i = r + 1; i < a.rows(); ++i) {
        if (a(i, c) != 0) {
          S f = a(i, c) / a(r, c);
          a.row(i) -= f * a.row(r);
        }
      }
      cols.push_back(c);
      ++r;
    }
  } else {
    Eigen::ColPivHouseholderQR<Mat<S>> qr(m);
    qr.setThreshold(eps);
    Eigen::Index r = qr.rank();
    const auto& perm = qr.colsPermutation().indices();
    for (Eigen::Index k = 0; k < r; ++k) cols.push_back(perm(k));
    std::sort(cols.begin(), cols.end());
  }
  return cols;
}

template <class S>
std::vector<Vec<S>> kernel_basis(const Mat<S>& m, double eps) {
  detail::check_eps<S>(eps);
  std::vector<Vec<S>> out;
  if (m.cols() == 0) return out;
  if (m.rows() == 0) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      Vec<S> e = Vec<S>::Zero(m.cols());
      e(j) = S(1);
      out.push_back(e);
    }
    return out;
  }
  Eigen::FullPivLU<Mat<S>> lu(m);
  lu.setThreshold(detail::lu_threshold<S>(eps));
  Mat<S> k = lu.kernel();
  if (lu.dimensionOfKernel() == 0) return out;
  for (Eigen::Index j = 0; j < k.cols(); ++j) {
    Vec<S> v = k.col(j);
    // normalize so the leading (first non-negligible) entry is 1
    Eigen::Index lead = -1;
    if constexpr (exact_scalar_v<S>) {
      for (Eigen::Index i = 0; i < v.size(); ++i)
        if (v(i) != 0) {
          lead = i;
          break;
        }
    } else {
      double big = v.cwiseAbs().maxCoeff();
      for (Eigen::Index i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) > 1e-12 * big) {
          lead = i;
          break;
        }
    }
    if (lead >= 0) v /= v(lead);
    out.push_back(v);
  }
  return out;
}

// Solve a x = b. Float backend: least-squares solution, caller checks the
// residual if consistency matters. Exact backend: throws if inconsistent.
template <class S>
Vec<S> solve_system(const Mat<S>& a, const Vec<S>& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve: shape mismatch");
  if (a.cols() == 0) {
    if constexpr (exact_scalar_v<S>) {
      for (Eigen::Index i = 0; i < b.size(); ++i)
        if (b(i) != 0) throw std::domain_error("solve: inconsistent exact system");
    }
    return Vec<S>(0);
  }
  if (a.rows() == 0) return Vec<S>::Zero(a.cols());
  if constexpr (exact_scalar_v<S>) {
    Eigen::FullPivLU<Mat<S>> lu(a);
    lu.setThreshold(Rat(0));
    Vec<S> x = lu.solve(b);
    if (((a * x) - b).cwiseAbs().maxCoeff() != 0)
      throw std::domain_error("solve: inconsistent exact system");
    return x;
  } else {
    return a.colPivHouseholderQr().solve(b);
  }
}

template <class S>
Mat<S> hcat(const Mat<S>& a, const Mat<S>& b) {
  if (a.rows() != b.rows() && a.cols() != 0 && b.cols() != 0)
    throw std::invalid_argument("hcat: row mismatch");
  Mat<S> out(a.cols() ? a.rows() : b.rows(), a.cols() + b.cols());
  if (a.cols()) out.leftCols(a.cols()) = a;
  if (b.cols()) out.rightCols(b.cols()) = b;
  return out;
}

template <class S>
Mat<S> cols_to_mat(Eigen::Index rows, const std::vector<Vec<S>>& cols) {
  Mat<S> out(rows, static_cast<Eigen::Index>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw std::invalid_argument("cols_to_mat: row mismatch");
    out.col(static_cast<Eigen::Index>(j)) = cols[j];
  }
  return out;
}

template <class S>
double max_abs(const Mat<S>& m) {
  if (m.size() == 0) return 0.0;
  if constexpr (exact_scalar_v<S>) {
    Rat big = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        Rat a = abs(m(i, j));
        if (a > big) big = a;
      }
    return to_double(big);
  } else {
    return m.cwiseAbs().maxCoeff();
  }
}

template <class S>
bool matrix_is_zero(const Mat<S>& m, double tol) {
  if constexpr (exact_scalar_v<S>) {
    if (tol != 0.0) throw std::invalid_argument("exact backend requires tol = 0");
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        if (m(i, j) != 0) return false;
    return true;
  } else {
    return max_abs(m) <= tol;
  }
}

}  // namespace casson
