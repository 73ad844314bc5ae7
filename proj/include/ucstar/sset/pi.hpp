#pragma once

#include "ucstar/gpd/cstar.hpp"
#include "ucstar/gpd/fp.hpp"
#include "ucstar/sset/simplicial.hpp"

namespace ucstar {

/// The groupoid C*-category of the fundamental groupoid, with the
/// normalization it was built from.
struct PiResult {
  FPGroupoid presentation;
  FPNormalization normalization;
  CStarMax cstar;

  const CategoryPtr& category() const noexcept { return cstar.category; }
};

inline PiResult pi(const FiniteSimplicialSet& k, std::size_t budget = default_coset_budget) {
  PiResult out{fundamental_groupoid(k), {}, {}};
  out.normalization = normalize_fp(out.presentation, budget);
  if (!out.normalization.finite()) throw Error(ErrorKind::NotFiniteWithinBound, out.normalization.detail);
  out.cstar = cstar_max(*out.normalization.groupoid);
  return out;
}

/// Groupoid functor induced on normalized fundamental groupoids.
inline GroupoidFunctor pi_groupoid_map(const SimplicialMap& f, const FiniteSimplicialSet& k, const FiniteSimplicialSet& l,
                                       const PiResult& pk, const PiResult& pl) {
  validate_simplicial_map(f, k, l);
  if (k.dim_cap() < 1) {
    GroupoidFunctor out{f.maps[0], {}};
    const auto& gk = *pk.normalization.groupoid;
    const auto& gl = *pl.normalization.groupoid;
    for (std::size_t a = 0; a < gk.arrows(); ++a) out.arrow_map.push_back(gl.identity(f.maps[0][gk.arrow(a).src]));
    return out;
  }
  const auto& gl = *pl.normalization.groupoid;
  std::vector<std::size_t> images;
  for (const auto& gen : pk.presentation.generators) {
    const std::size_t e = f.maps[1][k.find(1, gen.name)];
    const auto& s = l.simplex(1, e);
    if (s.degenerate) {
      images.push_back(gl.identity(s.faces[0]));
      continue;
    }
    std::size_t idx = 0;
    while (pl.presentation.generators.at(idx).name != s.name) ++idx;
    images.push_back(pl.normalization.generator_images[idx]);
  }
  GroupoidFunctor out{f.maps[0], {}};
  const auto& gk = *pk.normalization.groupoid;
  for (std::size_t a = 0; a < gk.arrows(); ++a)
    out.arrow_map.push_back(follow(gl, f.maps[0][gk.arrow(a).src], pk.normalization.arrow_paths[a], images));
  validate_groupoid_functor(out, gk, gl);
  return out;
}

inline StarFunctor pi_map(const SimplicialMap& f, const FiniteSimplicialSet& k, const FiniteSimplicialSet& l,
                          std::size_t budget = default_coset_budget, const Tolerance& tol = {}) {
  const PiResult pk = pi(k, budget), pl = pi(l, budget);
  return cstar_map(pk.cstar, pl.cstar, pi_groupoid_map(f, k, l, pk, pl), tol);
}

/// A (x)max pi K.
inline MatCategory tensor_with_sset(const MatCategory& a, const FiniteSimplicialSet& k,
                                    std::size_t budget = default_coset_budget, const Tolerance& tol = {}) {
  return tensor_max(a, *pi(k, budget).category(), tol);
}

struct CotensorHom {
  std::size_t from = 0;
  std::size_t to = 0;
  BoundedNatSpace space;
};

/// Hom data of A^K on a finite set of probe functors pi K -> A.
inline std::vector<CotensorHom> cotensor(const PiResult& p, const std::vector<StarFunctor>& probes,
                                         const Tolerance& tol = {}) {
  for (const auto& f : probes)
    if (!same_category(f.source(), p.category())) throw Error(ErrorKind::ShapeMismatch, "probe not out of pi K");
  std::vector<CotensorHom> out;
  for (std::size_t i = 0; i < probes.size(); ++i)
    for (std::size_t j = 0; j < probes.size(); ++j) out.push_back({i, j, nat_space(probes[i], probes[j], tol)});
  return out;
}

/// Membership of a chain F0 -> F1 -> ... -> Fn of unitary natural
/// transformations in the n-simplices of Map(A, B).
inline bool map_simplex_check(const CategoryPtr& a, const CategoryPtr& b, std::size_t n,
                              const std::vector<StarFunctor>& functors, const std::vector<NatTransform>& chain,
                              const Tolerance& tol = {}) {
  if (functors.size() != n + 1 || chain.size() != n) throw Error(ErrorKind::ShapeMismatch, "simplex level mismatch");
  for (const auto& f : functors)
    if (!same_category(f.source(), a) || !same_category(f.target(), b)) {
      throw Error(ErrorKind::ShapeMismatch, "functor not between the given categories");
    }
  for (const auto& f : functors)
    if (!validate_functor(f, tol).ok()) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (chain[i].components.size() != a->size()) throw Error(ErrorKind::ShapeMismatch, "component count");
    for (std::size_t x = 0; x < a->size(); ++x) {
      const Shape want{b->dim(functors[i + 1].object(x)), b->dim(functors[i].object(x))};
      if (chain[i].components[x].shape() != want) throw Error(ErrorKind::ShapeMismatch, "component shape");
      if (!b->hom(functors[i].object(x), functors[i + 1].object(x)).contains(chain[i].components[x], tol)) return false;
    }
    if (!is_natural(functors[i], functors[i + 1], chain[i], tol) || !is_unitary_transform(chain[i], tol)) return false;
  }
  return true;
}

}  // namespace ucstar
