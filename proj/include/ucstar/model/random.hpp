#pragma once

#include <utility>

#include "ucstar/matcat/random.hpp"
#include "ucstar/model/harness.hpp"

namespace ucstar {

/// Random unitary in the endomorphism algebra hom(x, x).
inline Matrix random_endo_unitary(Rng& rng, const MatCategory& c, std::size_t x) {
  const Subspace& h = c.hom(x, x);
  for (int attempt = 0; attempt < 16; ++attempt) {
    std::vector<Complex> coeffs(h.dimension());
    for (auto& z : coeffs) z = rng.complex();
    const Matrix m = h.combine(coeffs);
    if (smallest_singular_value(m) > 1e-3) return unitarize(m);
  }
  return Matrix::identity(c.dim(x));
}

inline BlockFunctor random_weak_equivalence(Rng& rng, const BlockModel& src, std::size_t max_dim = 4,
                                            std::size_t max_extra_objects = 1) {
  RandomFunctorOptions opt;
  opt.weak_equivalence = true;
  opt.max_dim = max_dim;
  opt.max_extra_objects = max_extra_objects;
  return random_block_functor(rng, src, opt);
}

/// Up to `count` random objects (x, u, y) of the path category of F, with
/// u a random unitary F(x) -> y.
inline std::vector<PathObject> random_path_objects(Rng& rng, const StarFunctor& f, std::size_t count,
                                                   std::uint64_t seed = 0) {
  const MatCategory& a = *f.source();
  const MatCategory& b = *f.target();
  std::vector<PathObject> out;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t x = rng.index(0, a.size() - 1);
    const std::size_t fx = f.object(x);
    std::vector<std::pair<std::size_t, Matrix>> ends;
    for (std::size_t y = 0; y < b.size(); ++y) {
      const IsoVerdict iso = iso_exists(b, fx, y, seed + 31 * k + y);
      if (iso.yes()) ends.emplace_back(y, *iso.unitary);
    }
    auto& [y, w] = ends[rng.index(0, ends.size() - 1)];
    out.push_back({x, w * random_endo_unitary(rng, b, fx), y});
  }
  return out;
}

/// Composable (F, G), drawn from random weak equivalences, arbitrary
/// functors and quasi-inverses.
inline std::pair<StarFunctor, StarFunctor> random_composable_pair(Rng& rng, std::size_t max_objects = 3,
                                                                  std::size_t max_dim = 4) {
  const BlockModel a = random_block_model(rng, max_objects, max_dim);
  RandomFunctorOptions any;
  any.max_dim = max_dim;
  const std::size_t kind = rng.index(0, 5);
  const bool f_weq = kind == 0 || kind == 1 || kind >= 4;
  const BlockFunctor f = f_weq ? random_weak_equivalence(rng, a, max_dim) : random_block_functor(rng, a, any);
  if (kind == 4) return {f.functor, quasi_inverse(f.functor, rng.next()).functor};
  if (kind == 5) return {quasi_inverse(f.functor, rng.next()).functor, f.functor};
  const bool g_weq = kind == 0 || kind == 2;
  const BlockFunctor g = g_weq ? random_weak_equivalence(rng, f.target, max_dim) : random_block_functor(rng, f.target, any);
  return {f.functor, g.functor};
}

/// Inner automorphism of a category: conjugation by one unitary per object.
inline StarFunctor conjugation(const CategoryPtr& c, const std::vector<Matrix>& w) {
  std::vector<std::size_t> om(c->size());
  for (std::size_t x = 0; x < om.size(); ++x) om[x] = x;
  return StarFunctor::from_action(c, c, std::move(om),
                                  [&](std::size_t x, std::size_t y, const Matrix& m) { return w[y] * m * w[x].adjoint(); });
}

/// g a random weak equivalence, f = g + (K g) on A + A -> B + B with K an
/// inner automorphism of B; i, j the first inclusions, r the fold and
/// s = (1, K^-1).
inline RetractDiagram random_retract(Rng& rng, std::size_t max_objects = 3, std::size_t max_dim = 4) {
  const BlockModel a = random_block_model(rng, max_objects, max_dim);
  const BlockFunctor g = random_weak_equivalence(rng, a, max_dim);
  const CategoryPtr& ca = g.functor.source();
  const CategoryPtr& cb = g.functor.target();
  std::vector<Matrix> w, winv;
  for (std::size_t y = 0; y < cb->size(); ++y) {
    w.push_back(random_endo_unitary(rng, *cb, y));
    winv.push_back(w.back().adjoint());
  }
  const StarFunctor k = conjugation(cb, w);
  const CategoryCoproduct pa = coproduct(ca, ca);
  const CategoryCoproduct pb = coproduct(cb, cb);
  RetractDiagram d;
  d.g = g.functor;
  d.f = copair(pa, compose(pb.left, g.functor), compose(pb.right, compose(k, g.functor)));
  d.i = pa.left;
  d.r = copair(pa, StarFunctor::identity(ca), StarFunctor::identity(ca));
  d.j = pb.left;
  d.s = copair(pb, StarFunctor::identity(cb), conjugation(cb, winv));
  return d;
}

/// A functor from a mix covering every combination of full, faithful and
/// object-surjective.
inline StarFunctor random_zoo_functor(Rng& rng, std::size_t max_objects = 3, std::size_t max_dim = 4) {
  const BlockModel a = random_block_model(rng, max_objects, max_dim);
  switch (rng.index(0, 4)) {
    case 0: return random_weak_equivalence(rng, a, max_dim, 0).functor;
    case 1: return random_weak_equivalence(rng, a, max_dim, 1).functor;
    case 2: return factor_cylinder(random_block_functor(rng, a).functor).second;
    case 3: {
      const CategoryCoproduct c = coproduct(a.category, a.category);
      return copair(c, StarFunctor::identity(a.category), StarFunctor::identity(a.category));
    }
    default: {
      RandomFunctorOptions opt;
      opt.max_dim = max_dim;
      opt.max_extra_objects = rng.index(0, 1);
      return random_block_functor(rng, a, opt).functor;
    }
  }
}

/// A commuting square with a trivial cofibration on the left and a
/// fibration on the right, built from the factorizations of F and K F.
struct SquareInstance {
  LiftingSquare square;
  LiftOracle oracle;
  std::string shape;
};

inline SquareInstance random_tcof_fib_square(Rng& rng, std::size_t max_objects = 3, std::size_t max_dim = 4) {
  const BlockModel a = random_block_model(rng, max_objects, max_dim);
  RandomFunctorOptions opt;
  opt.max_dim = max_dim;
  const BlockFunctor f = random_block_functor(rng, a, opt);
  const BlockFunctor k = random_block_functor(rng, f.target, opt);
  const StarFunctor kf = compose(k.functor, f.functor);
  const Factorization pf = factor_path(f.functor, random_path_objects(rng, f.functor, 1 + rng.index(0, 2), rng.next()));
  SquareInstance s;
  if (rng.coin(0.5)) {
    const Factorization pk = factor_path(kf);
    s.square = {pk.first, pf.first, pk.second, compose(k.functor, pf.second)};
    s.oracle = path_oracle(pk.path);
    s.shape = "path/path";
  } else {
    const Factorization ck = factor_cylinder(kf);
    s.square = {ck.first, pf.first, ck.second, compose(k.functor, pf.second)};
    s.oracle = linear_oracle(ck.second);
    s.shape = "path/cylinder";
  }
  return s;
}

/// A commuting square with a cofibration on the left and a trivial
/// fibration (a cylinder projection) on the right.
inline SquareInstance random_cof_tfib_square(Rng& rng, std::size_t max_objects = 3, std::size_t max_dim = 4) {
  const BlockModel a = random_block_model(rng, max_objects, max_dim);
  RandomFunctorOptions opt;
  opt.max_dim = max_dim;
  const BlockFunctor f = random_block_functor(rng, a, opt);
  const BlockFunctor k = random_block_functor(rng, f.target, opt);
  const Factorization ck = factor_cylinder(compose(k.functor, f.functor));
  SquareInstance s;
  if (rng.coin(0.5)) {
    const Factorization cf = factor_cylinder(f.functor);
    s.square = {ck.first, cf.first, ck.second, compose(k.functor, cf.second)};
    s.shape = "cylinder/cylinder";
  } else {
    const Factorization pf = factor_path(f.functor, random_path_objects(rng, f.functor, 1 + rng.index(0, 1), rng.next()));
    s.square = {ck.first, pf.first, ck.second, compose(k.functor, pf.second)};
    s.shape = "path/cylinder";
  }
  s.oracle = linear_oracle(ck.second);
  return s;
}

}  // namespace ucstar
