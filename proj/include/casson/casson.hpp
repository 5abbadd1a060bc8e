#pragma once

// Assembly of the SL2(R) Casson invariant from torsion signs: the homology
// orientation of the untwisted real complex, the epsilon sign of each dense
// representation, and the graded refinements keyed by the Chern-Simons
// pairing or the two-dimensional refined torsion.

#include <casson/bar_chains.hpp>
#include <casson/chern_simons.hpp>
#include <casson/local_systems.hpp>
#include <casson/manifolds.hpp>
#include <casson/torsion.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace casson {

enum class Grading { Cs24, TorsionValue };

// finite integer combination of grading values; grades within the tolerance
// accumulate into one term, circular gradings measure distance on R/Z
struct GradedInvariant {
  bool circular = false;
  std::vector<std::pair<double, long long>> terms;  // sorted by grade

  void add(double grade, long long coeff, double tol = 1e-6) {
    if (coeff == 0) return;
    for (auto it = terms.begin(); it != terms.end(); ++it) {
      double dist = circular ? ModOne{grade}.circular_distance(ModOne{it->first})
                             : std::abs(grade - it->first);
      if (dist <= tol) {
        it->second += coeff;
        if (it->second == 0) terms.erase(it);
        return;
      }
    }
    terms.emplace_back(grade, coeff);
    std::sort(terms.begin(), terms.end());
  }

  long long coefficient_sum() const {
    long long s = 0;
    for (const auto& [g, c] : terms) s += c;
    return s;
  }
};

namespace detail {

// homology-orientation sign of the closed complex: the untwisted torsion
// with the constant class in degree 0 and the top cell on top, corrected by
// (-1)^genus for the base-ordering parity of the real chain
inline int orientation_sign(const ManifoldData& md, const Rep& rep, double eps) {
  auto triv = twisted_cochain_complex(md.chain, rep, CoefficientKind::Trivial1, eps);
  triv.h.assign(triv.dims.size(), {});
  Vec<double> unit = Vec<double>::Ones(1);
  triv.h.front() = {unit};
  triv.h.back() = {unit};
  double t = compute_torsion(triv, eps);
  int sgn = t < 0 ? -1 : 1;
  return md.genus % 2 == 1 ? -sgn : sgn;
}

inline void require_closed(const ManifoldData& md) {
  if (!md.chain.closed())
    throw std::invalid_argument("invariants need a closed complex with a top boundary");
}

}  // namespace detail

// sign of the refined torsion of the adjoint twisted complex
inline int tau0_sign(const ManifoldData& md, const Rep& rep, double eps = 1e-9) {
  detail::require_closed(md);
  if (!transversality_check(md.chain, rep, eps))
    throw std::domain_error("representation is not transversal");
  auto adj = twisted_cochain_complex(md.chain, rep, CoefficientKind::Adjoint3, eps);
  int sgn = compute_torsion(adj, eps) < 0 ? -1 : 1;
  return detail::orientation_sign(md, rep, eps) * sgn;
}

inline int epsilon_f(const ManifoldData& md, const Rep& rep, double eps = 1e-9) {
  int s = tau0_sign(md, rep, eps);
  return md.genus % 2 == 1 ? -s : s;
}

// refined torsion of the two-dimensional twisted complex, sign included
inline double tau0_standard(const ManifoldData& md, const Rep& rep, double eps = 1e-9) {
  detail::require_closed(md);
  auto std2 = twisted_cochain_complex(md.chain, rep, CoefficientKind::Standard2, eps);
  return detail::orientation_sign(md, rep, eps) * compute_torsion(std2, eps);
}

inline long long lambda_sl2r(const ManifoldData& md, const std::vector<Rep>& reps,
                             double eps = 1e-9) {
  long long sum = 0;
  for (const Rep& rep : reps) sum += tau0_sign(md, rep, eps);
  return sum;
}

inline GradedInvariant graded_lambda(const ManifoldData& md, const std::vector<Rep>& reps,
                                     Grading grading, double eps = 1e-9) {
  detail::require_closed(md);
  GradedInvariant out;
  out.circular = grading == Grading::Cs24;
  BarChain oprime;
  if (grading == Grading::Cs24)
    oprime = build_fundamental_class(md.fundamental_expansion(), md.presentation());
  for (const Rep& rep : reps) {
    long long coeff = tau0_sign(md, rep, eps);
    double grade = grading == Grading::Cs24
                       ? pairing_24P1(oprime, md.presentation(), rep, eps).v
                       : tau0_standard(md, rep, eps);
    out.add(grade, coeff);
  }
  return out;
}

// everything the reporting layer prints for one representation
struct RepInvariants {
  int epsilon = 0;
  double torsion = 0.0;  // refined two-dimensional torsion
  ModOne cs24;
};

inline RepInvariants rep_invariants(const ManifoldData& md, const Rep& rep, double eps = 1e-9) {
  RepInvariants out;
  out.epsilon = epsilon_f(md, rep, eps);
  out.torsion = tau0_standard(md, rep, eps);
  BarChain oprime = build_fundamental_class(md.fundamental_expansion(), md.presentation());
  out.cs24 = pairing_24P1(oprime, md.presentation(), rep, eps);
  return out;
}

}  // namespace casson
