#pragma once

#include <functional>

#include "ucstar/gpd/cstar.hpp"
#include "ucstar/model/predicates.hpp"

namespace ucstar {

/// Tolerance used when certifying composites of computed functors.
inline constexpr double certify_eps = 1e-8;

struct UnitaryLift {
  Matrix unitary;      // u : x -> target in the source category
  std::size_t target;  // x', with F x' = y
};

/// A unitary u : x -> x' with F(u) = v, trying x' in F^-1(y) in order
/// (or only `only`, when given).
inline std::optional<UnitaryLift> solve_unitary_lift(const StarFunctor& f, std::size_t x, const Matrix& v,
                                                     std::size_t y, const Tolerance& tol = {},
                                                     std::optional<std::size_t> only = std::nullopt) {
  const MatCategory& a = *f.source();
  const MatCategory& b = *f.target();
  if (x >= a.size() || y >= b.size()) throw Error(ErrorKind::SquareMismatch, "object index out of range");
  if (v.shape() != Shape{b.dim(y), b.dim(f.object(x))}) {
    throw Error(ErrorKind::SquareMismatch, "unitary " + v.shape_string() + " does not start at F(" + a.name(x) +
                                               ") or end at " + b.name(y));
  }
  if (!uni_membership(v, tol)) throw Error(ErrorKind::NotUnitary, "lifting datum into " + b.name(y));
  for (std::size_t x2 = 0; x2 < a.size(); ++x2) {
    if (f.object(x2) != y || a.dim(x2) != a.dim(x) || (only && *only != x2)) continue;
    const auto pre = hom_preimage(f, x, x2, v, tol);
    if (!pre || smallest_singular_value(*pre) <= tol.threshold(op_norm(*pre))) continue;
    Matrix u = unitarize(*pre, tol);
    const Matrix fu = f.apply(x, x2, u);
    if (distance(fu, v) > certify_eps) continue;
    return UnitaryLift{std::move(u), x2};
  }
  return std::nullopt;
}

/// G with unitary natural isomorphisms unit: GF => id and counit: FG => id.
struct QuasiInverse {
  StarFunctor functor;
  NatTransform unit;
  NatTransform counit;
};

inline QuasiInverse quasi_inverse(const StarFunctor& f, const WeqResult& weq, const Tolerance& tol = {}) {
  const MatCategory& b = *f.target();
  if (!weq.yes() || weq.preimage.size() != b.size() || weq.unitaries.size() != b.size()) {
    throw Error(ErrorKind::NotAWeakEquivalence, weq.witness.empty() ? "no witnesses" : weq.witness);
  }
  const auto& g = weq.preimage;
  const auto& v = weq.unitaries;
  auto inverse = [&](std::size_t x, std::size_t y, const Matrix& m) {
    auto pre = hom_preimage(f, x, y, m, tol);
    if (!pre) throw Error(ErrorKind::NotAWeakEquivalence, "hom " + f.source()->pair_name(x, y) + " not hit");
    return *pre;
  };
  QuasiInverse q;
  q.functor = StarFunctor::from_action(f.target(), f.source(), g, [&](std::size_t y, std::size_t y2, const Matrix& m) {
    return inverse(g[y], g[y2], v[y2].adjoint() * m * v[y]);
  });
  for (std::size_t x = 0; x < f.source()->size(); ++x)
    q.unit.components.push_back(inverse(g[f.object(x)], x, v[f.object(x)]));
  q.counit.components = v;
  return q;
}

inline QuasiInverse quasi_inverse(const StarFunctor& f, std::uint64_t seed = 0, const Tolerance& tol = {}) {
  return quasi_inverse(f, is_weak_equivalence(f, seed, tol), tol);
}

/// The same object map and hom images, read into a target with the same
/// objects at the same indices (possibly more).
inline StarFunctor retarget(const StarFunctor& f, CategoryPtr target) {
  const std::size_t n = f.source()->size();
  std::vector<std::vector<Matrix>> images;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) images.push_back(f.images(x, y));
  return StarFunctor(f.source(), std::move(target), f.object_map(), std::move(images));
}

/// Commuting square: right . top = bottom . left.
///   A --top--> C
///   |left      |right
///   B --bottom-> D
struct LiftingSquare {
  StarFunctor top;
  StarFunctor left;
  StarFunctor right;
  StarFunctor bottom;
};

inline double square_residual(const LiftingSquare& s) {
  const bool shapes = same_category(s.left.source(), s.top.source()) && same_category(s.top.target(), s.right.source()) &&
                      same_category(s.left.target(), s.bottom.source()) &&
                      same_category(s.right.target(), s.bottom.target());
  if (!shapes) throw Error(ErrorKind::SquareMismatch, "legs do not form a square");
  return functor_residual(compose(s.right, s.top), compose(s.bottom, s.left));
}

inline void require_square(const LiftingSquare& s) {
  const double r = square_residual(s);
  if (!(r <= certify_eps)) throw Error(ErrorKind::SquareMismatch, "square does not commute, residual " + std::to_string(r));
}

/// Answers "lift the unitary v : right(c) -> d to c -> c'" for the right leg.
/// Oracles for lazy categories may add objects; `source` and `functor`
/// report the right leg after such additions.
struct LiftOracle {
  std::function<std::optional<UnitaryLift>(std::size_t c, const Matrix& v, std::size_t d)> lift;
  std::function<CategoryPtr()> source;
  std::function<StarFunctor()> functor;
};

inline LiftOracle linear_oracle(const StarFunctor& right, const Tolerance& tol = {}) {
  return {[right, tol](std::size_t c, const Matrix& v, std::size_t d) { return solve_unitary_lift(right, c, v, d, tol); },
          [right] { return right.source(); }, [right] { return right; }};
}

/// Diagonal filler with both triangle residuals. `top` and `right` are the
/// square's legs over the (possibly enlarged) category the lift lands in.
struct LiftResult {
  StarFunctor lift;
  StarFunctor top;
  StarFunctor right;
  double upper_residual = 0.0;  // || L . left - top ||
  double lower_residual = 0.0;  // || right . L - bottom ||
};

inline LiftResult finish_lift(const LiftingSquare& s, StarFunctor l, StarFunctor top, StarFunctor right) {
  LiftResult r{std::move(l), std::move(top), std::move(right), 0.0, 0.0};
  r.upper_residual = functor_residual(compose(r.lift, s.left), r.top);
  r.lower_residual = functor_residual(compose(r.right, r.lift), s.bottom);
  return r;
}

/// Left a trivial cofibration, right lifting unitaries through `oracle`.
/// Lx = U F'x with w_x = 1 on the image of the left leg; elsewhere
/// (Lx, w_x) lifts V(v_x), and L b = w_x' U F'(b) w_x*.
inline LiftResult lift_tcof_fib(const LiftingSquare& s, const LiftOracle& oracle, std::uint64_t seed = 0,
                                const Tolerance& tol = {}) {
  require_square(s);
  if (!is_cofibration(s.left)) throw Error(ErrorKind::PreconditionFailed, "left leg is not injective on objects");
  const WeqResult weq = is_weak_equivalence(s.left, seed, tol);
  if (!weq.yes()) throw Error(ErrorKind::PreconditionFailed, "left leg is not a weak equivalence: " + weq.witness);
  const QuasiInverse q = quasi_inverse(s.left, weq, tol);
  const MatCategory& b = *s.left.target();
  std::vector<std::size_t> lobj(b.size());
  std::vector<Matrix> w(b.size());
  for (std::size_t x = 0; x < b.size(); ++x) {
    const std::size_t z = q.functor.object(x);
    const std::size_t yx = s.top.object(z);
    if (s.left.object(z) == x) {
      lobj[x] = yx;
      w[x] = Matrix::identity(s.top.target()->dim(yx));
      continue;
    }
    const Matrix vv = s.bottom.apply(s.left.object(z), x, q.counit[x]);
    auto up = oracle.lift(yx, vv, s.bottom.object(x));
    if (!up) throw Error(ErrorKind::LiftObstruction, b.name(x));
    lobj[x] = up->target;
    w[x] = std::move(up->unitary);
  }
  const CategoryPtr c = oracle.source();
  StarFunctor top = retarget(s.top, c);
  StarFunctor l = StarFunctor::from_action(s.left.target(), c, lobj, [&](std::size_t x, std::size_t x2, const Matrix& m) {
    const std::size_t z = q.functor.object(x), z2 = q.functor.object(x2);
    return w[x2] * top.apply(z, z2, q.functor.apply(x, x2, m)) * w[x].adjoint();
  });
  return finish_lift(s, std::move(l), std::move(top), oracle.functor());
}

inline LiftResult lift_tcof_fib(const LiftingSquare& s, std::uint64_t seed = 0, const Tolerance& tol = {}) {
  return lift_tcof_fib(s, linear_oracle(s.right, tol), seed, tol);
}

/// Left a cofibration, right a trivial fibration. Objects off the image of
/// the left leg go to the first preimage of their bottom image; arrows are
/// the hom inverses of the right leg applied to the bottom leg.
inline LiftResult lift_cof_tfib(const LiftingSquare& s, const Tolerance& tol = {}) {
  require_square(s);
  if (!is_cofibration(s.left)) throw Error(ErrorKind::PreconditionFailed, "left leg is not injective on objects");
  if (!is_trivial_fibration(s.right, tol)) throw Error(ErrorKind::PreconditionFailed, "right leg is not a trivial fibration");
  const MatCategory& b = *s.left.target();
  const MatCategory& c = *s.right.source();
  std::vector<std::size_t> lobj(b.size(), c.size());
  for (std::size_t z = 0; z < s.left.source()->size(); ++z) lobj[s.left.object(z)] = s.top.object(z);
  for (std::size_t x = 0; x < b.size(); ++x) {
    if (lobj[x] != c.size()) continue;
    for (std::size_t k = 0; k < c.size(); ++k)
      if (s.right.object(k) == s.bottom.object(x)) {
        lobj[x] = k;
        break;
      }
  }
  StarFunctor l = StarFunctor::from_action(s.left.target(), s.right.source(), lobj,
                                           [&](std::size_t x, std::size_t x2, const Matrix& m) {
                                             auto pre = hom_preimage(s.right, lobj[x], lobj[x2], s.bottom.apply(x, x2, m), tol);
                                             if (!pre) throw Error(ErrorKind::LiftObstruction, b.pair_name(x, x2));
                                             return *pre;
                                           });
  return finish_lift(s, std::move(l), s.top, s.right);
}

/// The square from 0: F -> C*_max(interval): lifting the unitary v : F(x) -> y
/// through F gives the functor from the interval onto the lifted unitary.
struct GeneratorLift {
  CStarMax interval;
  StarFunctor lift;    // interval -> source of F
  StarFunctor bottom;  // interval -> target of F, u |-> v
  double residual = 0.0;
};

inline GeneratorLift lift_generator(const StarFunctor& f, std::size_t x, const Matrix& v, std::size_t y,
                                    const Tolerance& tol = {}) {
  const auto up = solve_unitary_lift(f, x, v, y, tol);
  if (!up) throw Error(ErrorKind::LiftObstruction, f.source()->name(x));
  GeneratorLift out{cstar_max(groupoids::interval()), {}, {}, 0.0};
  const auto& g = out.interval.groupoid;
  auto assign = [&](std::size_t a, std::size_t b, const Matrix& ua, const MatCategory& c) {
    UnitaryAssignment phi{{a, b}, std::vector<Matrix>(g.arrows())};
    phi.arrow_images[g.arrow_index("1_0")] = Matrix::identity(c.dim(a));
    phi.arrow_images[g.arrow_index("1_1")] = Matrix::identity(c.dim(b));
    phi.arrow_images[g.arrow_index("u")] = ua;
    phi.arrow_images[g.arrow_index("u^-1")] = ua.adjoint();
    return phi;
  };
  out.lift = adjunction_extend(out.interval, f.source(), assign(x, up->target, up->unitary, *f.source()), tol);
  out.bottom = adjunction_extend(out.interval, f.target(), assign(f.object(x), y, v, *f.target()), tol);
  out.residual = functor_residual(compose(f, out.lift), out.bottom);
  return out;
}

}  // namespace ucstar
