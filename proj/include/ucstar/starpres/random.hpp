#pragma once

#include "ucstar/numlin.hpp"
#include "ucstar/starpres/evaluate.hpp"
#include "ucstar/starpres/expr.hpp"

namespace ucstar {

/// A bounded presentation, a representation respecting its bounds and a
/// reduced element built from a random expression.
struct BoundedInstance {
  Presentation presentation;
  Representation representation;
  FreeStarElement element;
};

inline Quiver random_quiver(Rng& rng, std::size_t max_objects = 3, std::size_t max_arrows = 4) {
  Quiver q;
  const std::size_t n = rng.index(1, max_objects);
  for (std::size_t i = 0; i < n; ++i) q.objects.push_back("x" + std::to_string(i));
  const std::size_t m = rng.index(1, max_arrows);
  for (std::size_t i = 0; i < m; ++i)
    q.arrows.push_back({"a" + std::to_string(i), q.objects[rng.index(0, n - 1)], q.objects[rng.index(0, n - 1)]});
  return q;
}

inline BoundedInstance random_bounded_instance(Rng& rng, int depth = 3, std::size_t max_dim = 3) {
  BoundedInstance out;
  Presentation& p = out.presentation;
  p.quiver = random_quiver(rng);
  Representation& rep = out.representation;
  for (const auto& x : p.quiver.objects) rep.dims[x] = rng.index(1, max_dim);
  for (const auto& a : p.quiver.arrows) {
    const double bound = 0.25 + 2.75 * rng.uniform();
    p.bounds[a.name] = bound;
    Matrix m = rng.matrix(rep.dims[a.tgt], rep.dims[a.src]);
    const double n = op_norm(m);
    if (n > 0.0) m = Complex(bound * rng.uniform() / n) * m;
    rep.gens[a.name] = m;
  }
  const std::string& src = p.quiver.objects[rng.index(0, p.quiver.objects.size() - 1)];
  out.element = reduce(p.quiver, random_expr(rng, p.quiver, src, depth).first, rng.next()).element;
  return out;
}

}  // namespace ucstar
