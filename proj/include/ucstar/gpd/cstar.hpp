#pragma once

#include <algorithm>
#include <cmath>

#include "ucstar/gpd/finite_category.hpp"
#include "ucstar/matcat.hpp"

namespace ucstar {

/// Regular representation of a finite groupoid: the category, the carrier of
/// each object (arrows into it) and the unitary image of every arrow.
struct CStarMax {
  FiniteGroupoid groupoid;
  CategoryPtr category;
  std::vector<std::vector<std::size_t>> carriers;
  std::vector<Matrix> images;

  const Matrix& embed(std::size_t g) const { return images.at(g); }
};

inline CStarMax cstar_max(const FiniteGroupoid& g) {
  validate_groupoid(g);
  CStarMax out;
  out.groupoid = g;
  const std::size_t n = g.objects();
  out.carriers.resize(n);
  for (std::size_t h = 0; h < g.arrows(); ++h) out.carriers[g.arrow(h).tgt].push_back(h);
  for (auto& c : out.carriers)
    std::sort(c.begin(), c.end(), [&](std::size_t a, std::size_t b) {
      const auto& sa = g.object_name(g.arrow(a).src);
      const auto& sb = g.object_name(g.arrow(b).src);
      return sa != sb ? sa < sb : g.arrow(a).name < g.arrow(b).name;
    });
  std::vector<std::size_t> position(g.arrows());
  for (const auto& c : out.carriers)
    for (std::size_t i = 0; i < c.size(); ++i) position[c[i]] = i;

  std::vector<MatObject> objs;
  for (std::size_t x = 0; x < n; ++x) objs.push_back({g.object_name(x), out.carriers[x].size()});
  MatCategory cat(objs);
  for (std::size_t a = 0; a < g.arrows(); ++a) {
    const auto& arr = g.arrow(a);
    Matrix m(out.carriers[arr.tgt].size(), out.carriers[arr.src].size());
    for (std::size_t h : out.carriers[arr.src]) m(position[g.compose(a, h)], position[h]) = 1.0;
    out.images.push_back(std::move(m));
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      // distinct arrows x -> y have disjoint supports, so the scaled images are orthonormal
      std::vector<Matrix> basis;
      const double scale = 1.0 / std::sqrt(static_cast<double>(out.carriers[x].size()));
      for (std::size_t a : g.hom(x, y)) basis.push_back(Complex(scale) * out.images[a]);
      cat.set_hom(x, y, Subspace::from_orthonormal({objs[y].dim, objs[x].dim}, std::move(basis)));
    }
  out.category = share(std::move(cat));
  return out;
}

inline bool uni_membership(const Matrix& a, const Tolerance& tol = {}) { return is_unitary(a, tol); }
inline bool ism_membership(const Matrix& a, const Tolerance& tol = {}) { return is_isometry(a, tol); }

/// A functor from a groupoid into the unitaries of a concrete category.
struct UnitaryAssignment {
  std::vector<std::size_t> object_map;
  std::vector<Matrix> arrow_images;
};

inline void check_assignment(const FiniteGroupoid& g, const MatCategory& a, const UnitaryAssignment& phi,
                             const Tolerance& tol = {}) {
  if (phi.object_map.size() != g.objects() || phi.arrow_images.size() != g.arrows()) {
    throw Error(ErrorKind::InvalidFunctor, "assignment sizes");
  }
  for (std::size_t x : phi.object_map)
    if (x >= a.size()) throw Error(ErrorKind::InvalidFunctor, "object image out of range");
  for (std::size_t k = 0; k < g.arrows(); ++k) {
    const auto& arr = g.arrow(k);
    const Matrix& m = phi.arrow_images[k];
    const std::size_t fx = phi.object_map[arr.src], fy = phi.object_map[arr.tgt];
    if (m.shape() != Shape{a.dim(fy), a.dim(fx)}) throw Error(ErrorKind::InvalidFunctor, "image shape of " + arr.name);
    if (!uni_membership(m, tol)) throw Error(ErrorKind::NotUnitary, arr.name);
    if (!a.hom(fx, fy).contains(m, tol)) throw Error(ErrorKind::InvalidFunctor, "image of " + arr.name + " outside hom");
  }
  for (std::size_t f = 0; f < g.arrows(); ++f)
    for (std::size_t h = 0; h < g.arrows(); ++h) {
      if (g.arrow(f).tgt != g.arrow(h).src) continue;
      const Matrix want = phi.arrow_images[h] * phi.arrow_images[f];
      const double res = distance(phi.arrow_images[g.compose(h, f)], want);
      if (res > tol.threshold(want.frobenius_norm())) {
        throw Error(ErrorKind::InvalidFunctor, "composition " + g.arrow(h).name + "." + g.arrow(f).name);
      }
    }
}

/// Linear extension of a unitary assignment to C*_max G.
inline StarFunctor adjunction_extend(const CStarMax& c, CategoryPtr a, const UnitaryAssignment& phi,
                                     const Tolerance& tol = {}) {
  check_assignment(c.groupoid, *a, phi, tol);
  const auto& g = c.groupoid;
  const std::size_t n = g.objects();
  std::vector<std::vector<Matrix>> images(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const double scale = 1.0 / std::sqrt(static_cast<double>(c.carriers[x].size()));
      for (std::size_t k : g.hom(x, y)) images[x * n + y].push_back(Complex(scale) * phi.arrow_images[k]);
    }
  return StarFunctor(c.category, std::move(a), phi.object_map, std::move(images));
}

/// Composite of a *-functor with the embedding of G.
inline UnitaryAssignment adjunction_restrict(const CStarMax& c, const StarFunctor& f) {
  if (!same_category(f.source(), c.category)) throw Error(ErrorKind::InvalidFunctor, "functor not out of C*_max G");
  UnitaryAssignment out{f.object_map(), {}};
  for (std::size_t k = 0; k < c.groupoid.arrows(); ++k) {
    const auto& arr = c.groupoid.arrow(k);
    out.arrow_images.push_back(f.apply(arr.src, arr.tgt, c.images[k]));
  }
  return out;
}

inline double assignment_residual(const UnitaryAssignment& a, const UnitaryAssignment& b) {
  if (a.object_map != b.object_map || a.arrow_images.size() != b.arrow_images.size()) {
    return std::numeric_limits<double>::infinity();
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < a.arrow_images.size(); ++k)
    worst = std::max(worst, distance(a.arrow_images[k], b.arrow_images[k]));
  return worst;
}

/// C*_max of a groupoid functor: arrows go to the images of their images.
inline StarFunctor cstar_map(const CStarMax& src, const CStarMax& tgt, const GroupoidFunctor& f,
                             const Tolerance& tol = {}) {
  validate_groupoid_functor(f, src.groupoid, tgt.groupoid);
  UnitaryAssignment phi{f.object_map, {}};
  for (std::size_t k = 0; k < src.groupoid.arrows(); ++k) phi.arrow_images.push_back(tgt.images[f.arrow_map[k]]);
  return adjunction_extend(src, tgt.category, phi, tol);
}

/// Checks that certify a *-functor as an isomorphism of C*-categories.
struct FunctorIsoVerdict {
  bool objects_bijective = false;
  bool dimensions_match = false;
  bool full_rank = false;
  bool laws_hold = false;
  double max_residual = 0.0;

  bool isomorphism() const noexcept { return objects_bijective && dimensions_match && full_rank && laws_hold; }
};

inline FunctorIsoVerdict isomorphism_verdict(const StarFunctor& f, const Tolerance& tol = {}) {
  FunctorIsoVerdict v;
  const MatCategory& a = *f.source();
  const MatCategory& b = *f.target();
  std::vector<std::size_t> om = f.object_map();
  std::sort(om.begin(), om.end());
  v.objects_bijective = a.size() == b.size() && std::adjacent_find(om.begin(), om.end()) == om.end();
  v.dimensions_match = v.objects_bijective;
  v.full_rank = true;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < a.size(); ++y) {
      const std::size_t d = a.hom(x, y).dimension();
      if (d != b.hom(f.object(x), f.object(y)).dimension()) v.dimensions_match = false;
      if (hom_rank(f, x, y, tol) != d) v.full_rank = false;
    }
  const ValidationReport r = validate_functor(f, tol);
  v.laws_hold = r.ok();
  for (const auto& viol : r.violations) v.max_residual = std::max(v.max_residual, viol.residual);
  return v;
}

/// The comparison C*_max(G1 x G2) -> C*_max G1 (x)max C*_max G2 sending
/// (g1, g2) to g1 (x) g2.
struct Comparison {
  CStarMax product;
  CStarMax left;
  CStarMax right;
  CategoryPtr tensor;
  StarFunctor functor;
  FunctorIsoVerdict verdict;
};

inline Comparison comparison_functor(const FiniteGroupoid& g1, const FiniteGroupoid& g2, const Tolerance& tol = {}) {
  Comparison c{cstar_max(groupoids::product(g1, g2)), cstar_max(g1), cstar_max(g2), nullptr, {}, {}};
  c.tensor = share(tensor_max(*c.left.category, *c.right.category, tol));
  UnitaryAssignment phi;
  const std::size_t m2 = g2.arrows();
  for (std::size_t x = 0; x < g1.objects(); ++x)
    for (std::size_t y = 0; y < g2.objects(); ++y) phi.object_map.push_back(pair_index(*c.right.category, x, y));
  for (std::size_t k = 0; k < c.product.groupoid.arrows(); ++k)
    phi.arrow_images.push_back(kron(c.left.images[k / m2], c.right.images[k % m2]));
  c.functor = adjunction_extend(c.product, c.tensor, phi, tol);
  c.verdict = isomorphism_verdict(c.functor, tol);
  return c;
}

}  // namespace ucstar
