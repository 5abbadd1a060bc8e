// Normalized bar complex of a group in low degrees, the chain maps c1/c2
// from a presentation 2-complex, the coned 3-class O' of a closed
// presentation, and its pairing with the dilogarithm 3-cocycle.
//
// Tuples are keyed by freely reduced words. Two words that are equal in the
// presented group but differ as words stay distinct here; every consumer
// evaluates tuples through a representation, and the cocycle's degenerate
// rule (coincident projective points give zero) makes the pairing blind to
// that distinction. Chain identities that only hold in the group are
// therefore checked after evaluating entries through a representation; see
// bar_chains_match.
#pragma once

#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "casson/chern_simons.hpp"
#include "casson/sl2.hpp"
#include "casson/words.hpp"

namespace casson {

// degree n chain: integer combination of (n+1)-tuples of group elements.
// Normalized: tuples with two consecutive equal entries are zero.
struct BarChain {
  int degree = 0;
  std::map<std::vector<Word>, long long> terms;

  bool empty() const { return terms.empty(); }
};

inline void add_bar_term(BarChain& ch, std::vector<Word> tuple, long long coeff) {
  if (tuple.size() != static_cast<std::size_t>(ch.degree) + 1)
    throw std::invalid_argument("bar tuple arity does not match the chain degree");
  if (coeff == 0) return;
  for (std::size_t i = 0; i + 1 < tuple.size(); ++i)
    if (tuple[i] == tuple[i + 1]) return;  // normalized away
  auto it = ch.terms.find(tuple);
  if (it == ch.terms.end()) {
    ch.terms.emplace(std::move(tuple), coeff);
  } else if ((it->second += coeff) == 0) {
    ch.terms.erase(it);
  }
}

// simplicial boundary: alternating sum over dropped entries
inline BarChain bar_boundary(const BarChain& ch) {
  if (ch.degree < 1) throw std::invalid_argument("bar boundary needs degree at least 1");
  BarChain out;
  out.degree = ch.degree - 1;
  for (const auto& [tuple, coeff] : ch.terms) {
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      std::vector<Word> face;
      face.reserve(tuple.size() - 1);
      for (std::size_t k = 0; k < tuple.size(); ++k)
        if (k != i) face.push_back(tuple[k]);
      add_bar_term(out, std::move(face), i % 2 ? -coeff : coeff);
    }
  }
  return out;
}

// c1 on one free-module coordinate: A x_i goes to (A, A x_i)
inline BarChain chain_map_c1(const GroupRingElt& coeff, int gen) {
  BarChain out;
  out.degree = 1;
  const Word g = Word::gen(gen);
  for (const auto& [w, c] : coeff.terms()) add_bar_term(out, {w, w * g}, c);
  return out;
}

// c1 of a full C_1 element, one group-ring coordinate per generator
inline BarChain chain_map_c1(const std::vector<GroupRingElt>& column) {
  BarChain out;
  out.degree = 1;
  for (std::size_t i = 0; i < column.size(); ++i) {
    const Word g = Word::gen(static_cast<int>(i) + 1);
    for (const auto& [w, c] : column[i].terms()) add_bar_term(out, {w, w * g}, c);
  }
  return out;
}

// c2 on A·r for a single relator r spelled as letters with exponent ±1.
// A letter x at prefix p contributes +(A, Ap, Apx); a letter x^-1 at prefix p
// contributes -(A, Apx^-1, Ap). Summed over the spelling of r this telescopes
// to the Fox expansion of r plus the closing tuple (A, Ar), which is zero in
// any group where r is a relation.
inline BarChain chain_map_c2(const Word& a, const Word& r) {
  BarChain out;
  out.degree = 2;
  Word prefix;
  for (const Letter& l : r.letters()) {
    if (l.exp > 0) {
      Word next = prefix * Word::gen(l.gen);
      add_bar_term(out, {a, a * prefix, a * next}, +1);
      prefix = std::move(next);
    } else {
      Word next = prefix * Word::gen(l.gen, -1);
      add_bar_term(out, {a, a * next, a * prefix}, -1);
      prefix = std::move(next);
    }
  }
  return out;
}

// the 2-chain c2(sum_j expansion[j] · r_j)
inline BarChain relator_two_chain(const std::vector<GroupRingElt>& expansion,
                                  const Presentation& pres) {
  pres.validate();
  if (expansion.size() != pres.relators.size())
    throw std::invalid_argument("top boundary expansion needs one coefficient per relator");
  BarChain z;
  z.degree = 2;
  for (std::size_t j = 0; j < expansion.size(); ++j) {
    for (const auto& [a, c] : expansion[j].terms()) {
      BarChain part = chain_map_c2(a, pres.relators[j]);
      for (const auto& [tuple, coeff] : part.terms) add_bar_term(z, tuple, c * coeff);
    }
  }
  return z;
}

namespace detail {

// Assigns small integer ids to 2x2 matrices, merging anything within tol
// entrywise. Linear scan; chain sizes here are a few hundred entries.
class MatrixClusterer {
 public:
  explicit MatrixClusterer(double tol) : tol_(tol) {}

  int id(const Mat2& m) {
    for (std::size_t k = 0; k < mats_.size(); ++k)
      if ((mats_[k] - m).cwiseAbs().maxCoeff() <= tol_) return static_cast<int>(k);
    mats_.push_back(m);
    return static_cast<int>(mats_.size()) - 1;
  }

 private:
  double tol_;
  std::vector<Mat2> mats_;
};

class WordKeyer {
 public:
  WordKeyer(const Rep& rep, double tol) : rep_(rep), clusters_(tol) {}

  int id(const Word& w) {
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
    int k = clusters_.id(evaluate_word(rep_, w));
    cache_.emplace(w, k);
    return k;
  }

  // tuple ids with the normalization rule applied through the representation
  std::map<std::vector<int>, long long> keyed_terms(const BarChain& ch) {
    std::map<std::vector<int>, long long> out;
    for (const auto& [tuple, coeff] : ch.terms) {
      std::vector<int> ids;
      ids.reserve(tuple.size());
      for (const Word& w : tuple) ids.push_back(id(w));
      bool degenerate = false;
      for (std::size_t i = 0; i + 1 < ids.size(); ++i)
        if (ids[i] == ids[i + 1]) degenerate = true;
      if (degenerate) continue;
      auto it = out.find(ids);
      if (it == out.end())
        out.emplace(std::move(ids), coeff);
      else if ((it->second += coeff) == 0)
        out.erase(it);
    }
    return out;
  }

 private:
  const Rep& rep_;
  MatrixClusterer clusters_;
  std::map<Word, int> cache_;
};

}  // namespace detail

// Chain equality after evaluating every tuple entry through rep: tuples with
// consecutive entries that agree as matrices are dropped, the rest are keyed
// by their matrix images, and integer coefficients must cancel exactly.
inline bool bar_chains_match(const BarChain& a, const BarChain& b, const Rep& rep,
                             double tol = 1e-6) {
  if (a.degree != b.degree) return false;
  detail::WordKeyer keyer(rep, tol);
  return keyer.keyed_terms(a) == keyer.keyed_terms(b);
}

// O' = sum_i n_i (1, g0, g1, g2) for c2 of the top boundary written as
// sum_i n_i (g0, g1, g2). Coning against the identity is a contracting
// homotopy of the normalized bar complex, so the boundary of O' recovers the
// 2-chain whenever that 2-chain is a cycle.
//
// Word-level data cannot certify the cycle condition (it holds in the group,
// not in the free group), so this overload only checks net degrees: the
// augmented top boundary times the abelianized Fox matrix must vanish.
inline BarChain build_fundamental_class(const std::vector<GroupRingElt>& expansion,
                                        const Presentation& pres) {
  pres.validate();
  if (expansion.size() != pres.relators.size())
    throw std::invalid_argument("top boundary expansion needs one coefficient per relator");
  for (int i = 1; i <= pres.gens; ++i) {
    long long net = 0;
    for (std::size_t j = 0; j < expansion.size(); ++j) {
      long long aug = 0;
      for (const auto& [w, c] : expansion[j].terms()) aug += c;
      net += aug * pres.relators[j].exponent_sum(i);
    }
    if (net != 0)
      throw std::domain_error("relator two-chain is not a cycle: generator x" +
                              std::to_string(i) + " has nonzero net degree");
  }
  BarChain z = relator_two_chain(expansion, pres);
  BarChain cone;
  cone.degree = 3;
  const Word identity;
  for (const auto& [tuple, coeff] : z.terms)
    add_bar_term(cone, {identity, tuple[0], tuple[1], tuple[2]}, coeff);
  return cone;
}

// Same construction, but certifies the cycle condition through a
// representation: the boundary of the relator 2-chain must cancel to zero
// once entries are identified as matrices.
inline BarChain build_fundamental_class(const std::vector<GroupRingElt>& expansion,
                                        const Presentation& pres, const Rep& rep,
                                        double tol = 1e-6) {
  BarChain cone = build_fundamental_class(expansion, pres);
  BarChain z = relator_two_chain(expansion, pres);
  detail::WordKeyer keyer(rep, tol);
  if (!keyer.keyed_terms(bar_boundary(z)).empty())
    throw std::domain_error(
        "relator two-chain is not a cycle through the representation");
  return cone;
}

// frac(24 · sum_i n_i · l(rho(g0),...,rho(g3))) for a degree-3 chain
inline ModOne pairing_24P1(const BarChain& oprime, const Presentation& pres, const Rep& rep,
                           double eps = 1e-9, double eps_proj = eps_proj_default) {
  if (oprime.degree != 3) throw std::invalid_argument("pairing needs a degree-3 chain");
  pres.validate();
  for (std::size_t j = 0; j < pres.relators.size(); ++j) {
    Mat2 m = evaluate_word(rep, pres.relators[j]);
    if ((m - Mat2::Identity()).cwiseAbs().maxCoeff() > eps)
      throw std::domain_error("representation violates relator " + std::to_string(j + 1));
  }
  double total = 0.0;
  for (const auto& [tuple, coeff] : oprime.terms) {
    ModOne v = cocycle_l(evaluate_word(rep, tuple[0]), evaluate_word(rep, tuple[1]),
                         evaluate_word(rep, tuple[2]), evaluate_word(rep, tuple[3]), eps_proj);
    total += static_cast<double>(coeff) * v.v;
  }
  return ModOne::reduce(24.0 * total);
}

}  // namespace casson
