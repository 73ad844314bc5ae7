#pragma once

#include "ucstar/matcat/natural.hpp"

namespace ucstar {

inline std::string pair_object_name(const std::string& x, const std::string& y) { return "(" + x + "," + y + ")"; }

/// Objects of A (x) B and A x B are pairs, indexed x * |B| + y.
inline std::size_t pair_index(const MatCategory& b, std::size_t x, std::size_t y) { return x * b.size() + y; }

/// Maximal tensor product, realized spatially: dims multiply and
/// hom((x,y),(x',y')) is spanned by a_i (x) b_j, ordered i-major.
inline MatCategory tensor_max(const MatCategory& a, const MatCategory& b, const Tolerance& tol = {}) {
  if (!validate_category(a, tol).ok() || !validate_category(b, tol).ok()) {
    throw Error(ErrorKind::InvalidCategory, "tensor_max operand fails validation");
  }
  MatCategory t;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y) t.add_object(pair_object_name(a.name(x), b.name(y)), a.dim(x) * b.dim(y));
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y)
      for (std::size_t x2 = 0; x2 < a.size(); ++x2)
        for (std::size_t y2 = 0; y2 < b.size(); ++y2) {
          std::vector<Matrix> basis;
          for (const auto& ai : a.hom(x, x2).basis())
            for (const auto& bj : b.hom(y, y2).basis()) basis.push_back(kron(ai, bj));
          const std::size_t s = pair_index(b, x, y);
          const std::size_t s2 = pair_index(b, x2, y2);
          t.set_hom(s, s2, Subspace::from_orthonormal({t.dim(s2), t.dim(s)}, std::move(basis)));
        }
  return t;
}

/// Finite product: pairs of objects, homs are block-diagonal pairs (a, b).
inline MatCategory product(const MatCategory& a, const MatCategory& b) {
  MatCategory p;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y) p.add_object(pair_object_name(a.name(x), b.name(y)), a.dim(x) + b.dim(y));
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y)
      for (std::size_t x2 = 0; x2 < a.size(); ++x2)
        for (std::size_t y2 = 0; y2 < b.size(); ++y2) {
          std::vector<Matrix> basis;
          const Matrix zb(b.dim(y2), b.dim(y));
          const Matrix za(a.dim(x2), a.dim(x));
          for (const auto& ai : a.hom(x, x2).basis()) basis.push_back(direct_sum(ai, zb));
          for (const auto& bj : b.hom(y, y2).basis()) basis.push_back(direct_sum(za, bj));
          const std::size_t s = pair_index(b, x, y);
          const std::size_t s2 = pair_index(b, x2, y2);
          p.set_hom(s, s2, Subspace::from_orthonormal({p.dim(s2), p.dim(s)}, std::move(basis)));
        }
  return p;
}

struct Equalizer {
  CategoryPtr category;
  StarFunctor inclusion;  // E -> source of F and G
};

/// Equalizer of parallel F, G: objects with Fx = Gx, homs {a | F(a) = G(a)}.
inline Equalizer equalizer(const StarFunctor& f, const StarFunctor& g, const Tolerance& tol = {}) {
  require_parallel(f, g);
  const MatCategory& a = *f.source();
  std::vector<std::size_t> kept;
  MatCategory e;
  for (std::size_t x = 0; x < a.size(); ++x)
    if (f.object(x) == g.object(x)) {
      kept.push_back(x);
      e.add_object(a.name(x), a.dim(x));
    }
  for (std::size_t i = 0; i < kept.size(); ++i)
    for (std::size_t j = 0; j < kept.size(); ++j) {
      const std::size_t x = kept[i], y = kept[j];
      const Subspace& h = a.hom(x, y);
      const auto& fi = f.images(x, y);
      const auto& gi = g.images(x, y);
      std::vector<Matrix> basis;
      if (!fi.empty()) {
        const std::size_t len = fi.front().size();
        Matrix diff(len, fi.size());
        for (std::size_t k = 0; k < fi.size(); ++k) {
          const Matrix d = fi[k] - gi[k];
          for (std::size_t m = 0; m < len; ++m) diff(m, k) = d.entries()[m];
        }
        // kernel vectors are orthonormal coefficient vectors, so the combinations stay HS-orthonormal
        const auto kernel = len == 0 ? std::vector<Vector>{} : nullspace(diff, tol);
        for (const auto& v : kernel) basis.push_back(h.combine(v));
      }
      e.set_hom(i, j, Subspace::from_orthonormal(h.ambient(), std::move(basis)));
    }
  Equalizer out;
  out.category = share(std::move(e));
  out.inclusion = StarFunctor::from_action(out.category, f.source(), kept,
                                           [](std::size_t, std::size_t, const Matrix& m) { return m; });
  return out;
}

/// Disjoint union: objects of A then objects of B, no arrows between the two parts.
struct CategoryCoproduct {
  CategoryPtr category;
  StarFunctor left;
  StarFunctor right;
};

inline CategoryCoproduct coproduct(const CategoryPtr& a, const CategoryPtr& b) {
  MatCategory c;
  for (std::size_t x = 0; x < a->size(); ++x) c.add_object("0:" + a->name(x), a->dim(x));
  for (std::size_t y = 0; y < b->size(); ++y) c.add_object("1:" + b->name(y), b->dim(y));
  const std::size_t na = a->size();
  for (std::size_t x = 0; x < na; ++x)
    for (std::size_t y = 0; y < na; ++y) c.set_hom(x, y, a->hom(x, y));
  for (std::size_t x = 0; x < b->size(); ++x)
    for (std::size_t y = 0; y < b->size(); ++y) c.set_hom(na + x, na + y, b->hom(x, y));
  CategoryCoproduct out;
  out.category = share(std::move(c));
  std::vector<std::size_t> la(na), lb(b->size());
  for (std::size_t x = 0; x < na; ++x) la[x] = x;
  for (std::size_t y = 0; y < lb.size(); ++y) lb[y] = na + y;
  auto same = [](std::size_t, std::size_t, const Matrix& m) { return m; };
  out.left = StarFunctor::from_action(a, out.category, std::move(la), same);
  out.right = StarFunctor::from_action(b, out.category, std::move(lb), same);
  return out;
}

/// The functor out of a coproduct restricting to f and g on the two parts.
inline StarFunctor copair(const CategoryCoproduct& c, const StarFunctor& f, const StarFunctor& g) {
  if (!same_category(f.source(), c.left.source()) || !same_category(g.source(), c.right.source()) ||
      !same_category(f.target(), g.target())) {
    throw Error(ErrorKind::NotParallel, "copair legs do not match the coproduct");
  }
  const std::size_t na = f.source()->size();
  std::vector<std::size_t> om;
  for (std::size_t x = 0; x < na; ++x) om.push_back(f.object(x));
  for (std::size_t y = 0; y < g.source()->size(); ++y) om.push_back(g.object(y));
  return StarFunctor::from_action(c.category, f.target(), std::move(om),
                                  [&](std::size_t x, std::size_t y, const Matrix& m) {
                                    if (x < na && y < na) return f.apply(x, y, m);
                                    if (x >= na && y >= na) return g.apply(x - na, y - na, m);
                                    throw Error(ErrorKind::InvalidCategory, "arrow between coproduct parts");
                                  });
}

}  // namespace ucstar
