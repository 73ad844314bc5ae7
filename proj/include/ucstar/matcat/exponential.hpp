#pragma once

#include "ucstar/matcat/limits.hpp"

namespace ucstar {

/// Functor A -> C*(B, C) in components: each object x gives a functor
/// B -> C, each basis arrow a of A(x, x') a transformation between them.
struct CurriedFunctor {
  CategoryPtr a, b, c;
  std::vector<StarFunctor> on_objects;
  std::vector<std::vector<NatTransform>> on_arrows;  // [x * |A| + x'][i] for basis i of A(x, x')

  const std::vector<NatTransform>& arrows(std::size_t x, std::size_t x2) const {
    return on_arrows.at(x * a->size() + x2);
  }

  /// Image of an arbitrary a in A(x, x').
  NatTransform apply(std::size_t x, std::size_t x2, const Matrix& m) const {
    const auto coords = a->hom(x, x2).coordinates(m);
    const auto& ts = arrows(x, x2);
    NatTransform out;
    for (std::size_t y = 0; y < b->size(); ++y) {
      Matrix comp(c->dim(on_objects[x2].object(y)), c->dim(on_objects[x].object(y)));
      for (std::size_t i = 0; i < coords.size(); ++i) comp.axpy(coords[i], ts[i][y]);
      out.components.push_back(std::move(comp));
    }
    return out;
  }
};

/// Phi F: x |-> F(1_x (x) -), a |-> (F(a (x) 1_y))_y.
inline CurriedFunctor curry(const StarFunctor& f, const CategoryPtr& a, const CategoryPtr& b,
                            const Tolerance& tol = {}) {
  const MatCategory t = tensor_max(*a, *b, tol);
  if (!f.source()->same_as(t, tol)) throw Error(ErrorKind::InvalidFunctor, "source is not A (x) B");
  if (!validate_functor(f, tol).ok()) throw Error(ErrorKind::InvalidFunctor, "functor fails validation");
  CurriedFunctor g{a, b, f.target(), {}, {}};
  for (std::size_t x = 0; x < a->size(); ++x) {
    std::vector<std::size_t> om(b->size());
    for (std::size_t y = 0; y < b->size(); ++y) om[y] = f.object(pair_index(*b, x, y));
    const Matrix ix = Matrix::identity(a->dim(x));
    g.on_objects.push_back(StarFunctor::from_action(b, f.target(), std::move(om),
                                                    [&](std::size_t y, std::size_t y2, const Matrix& m) {
                                                      return f.apply(pair_index(*b, x, y), pair_index(*b, x, y2),
                                                                     kron(ix, m));
                                                    }));
  }
  g.on_arrows.resize(a->size() * a->size());
  for (std::size_t x = 0; x < a->size(); ++x)
    for (std::size_t x2 = 0; x2 < a->size(); ++x2)
      for (const auto& m : a->hom(x, x2).basis()) {
        NatTransform t;
        for (std::size_t y = 0; y < b->size(); ++y)
          t.components.push_back(
              f.apply(pair_index(*b, x, y), pair_index(*b, x2, y), kron(m, Matrix::identity(b->dim(y)))));
        g.on_arrows[x * a->size() + x2].push_back(std::move(t));
      }
  return g;
}

/// Psi G: (a (x) b) |-> G(a)_{y'} G(x)(b), on the Kronecker basis of A (x) B.
inline StarFunctor uncurry(const CurriedFunctor& g, const CategoryPtr& tensor) {
  const MatCategory& a = *g.a;
  const MatCategory& b = *g.b;
  if (g.on_objects.size() != a.size() || g.on_arrows.size() != a.size() * a.size()) {
    throw Error(ErrorKind::InvalidFunctor, "curried data has the wrong size");
  }
  for (const auto& fx : g.on_objects)
    if (!same_category(fx.source(), g.b) || !same_category(fx.target(), g.c)) {
      throw Error(ErrorKind::InvalidFunctor, "object functor is not B -> C");
    }
  if (tensor->size() != a.size() * b.size()) throw Error(ErrorKind::InvalidFunctor, "tensor category size");
  std::vector<std::size_t> om(tensor->size());
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y) om[pair_index(b, x, y)] = g.on_objects[x].object(y);

  const std::size_t n = tensor->size();
  std::vector<std::vector<Matrix>> images(n * n);
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y)
      for (std::size_t x2 = 0; x2 < a.size(); ++x2)
        for (std::size_t y2 = 0; y2 < b.size(); ++y2) {
          auto& out = images[pair_index(b, x, y) * n + pair_index(b, x2, y2)];
          const auto& ts = g.arrows(x, x2);
          const auto& bs = g.on_objects[x].images(y, y2);
          if (ts.size() != a.hom(x, x2).dimension()) throw Error(ErrorKind::InvalidFunctor, "arrow data size");
          for (const auto& t : ts) {
            if (t.components.size() != b.size()) throw Error(ErrorKind::InvalidFunctor, "component count");
            for (const auto& gb : bs) out.push_back(t[y2] * gb);
          }
        }
  return StarFunctor(tensor, g.c, std::move(om), std::move(images));
}

/// Largest distance between the data of two curried functors.
inline double curried_residual(const CurriedFunctor& f, const CurriedFunctor& g) {
  if (f.on_objects.size() != g.on_objects.size() || f.on_arrows.size() != g.on_arrows.size()) {
    return std::numeric_limits<double>::infinity();
  }
  double worst = 0.0;
  for (std::size_t x = 0; x < f.on_objects.size(); ++x)
    worst = std::max(worst, functor_residual(f.on_objects[x], g.on_objects[x]));
  for (std::size_t k = 0; k < f.on_arrows.size(); ++k) {
    if (f.on_arrows[k].size() != g.on_arrows[k].size()) return std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < f.on_arrows[k].size(); ++i)
      for (std::size_t y = 0; y < f.on_arrows[k][i].components.size(); ++y)
        worst = std::max(worst, distance(f.on_arrows[k][i][y], g.on_arrows[k][i][y]));
  }
  return worst;
}

}  // namespace ucstar
