#pragma once

#include <functional>
#include <memory>
#include <utility>

#include "ucstar/numlin/rng.hpp"
#include "ucstar/starpres/element.hpp"

namespace ucstar {

/// Unreduced *-algebra expression over a quiver.
struct StarExpr;
using ExprPtr = std::shared_ptr<const StarExpr>;

struct StarExpr {
  enum class Kind { Gen, Id, Adj, Comp, Add, Scale };
  Kind kind;
  std::string name;  // generator name (Gen) or object (Id)
  Complex z{};       // Scale factor
  ExprPtr a, b;      // Comp(a, b) is a after b

  static ExprPtr gen(std::string g) { return std::make_shared<StarExpr>(StarExpr{Kind::Gen, std::move(g), {}, {}, {}}); }
  static ExprPtr id(std::string x) { return std::make_shared<StarExpr>(StarExpr{Kind::Id, std::move(x), {}, {}, {}}); }
  static ExprPtr adj(ExprPtr e) { return std::make_shared<StarExpr>(StarExpr{Kind::Adj, {}, {}, std::move(e), {}}); }
  static ExprPtr comp(ExprPtr after, ExprPtr before) {
    return std::make_shared<StarExpr>(StarExpr{Kind::Comp, {}, {}, std::move(after), std::move(before)});
  }
  static ExprPtr add(ExprPtr l, ExprPtr r) {
    return std::make_shared<StarExpr>(StarExpr{Kind::Add, {}, {}, std::move(l), std::move(r)});
  }
  static ExprPtr scale(Complex z, ExprPtr e) {
    return std::make_shared<StarExpr>(StarExpr{Kind::Scale, {}, z, std::move(e), {}});
  }
};

/// Direct structural evaluation with the element algebra.
inline FreeStarElement to_element(const Quiver& q, const ExprPtr& e) {
  using K = StarExpr::Kind;
  switch (e->kind) {
    case K::Gen: return FreeStarElement::generator(q, e->name);
    case K::Id: return FreeStarElement::identity(e->name);
    case K::Adj: return to_element(q, e->a).adjoint();
    case K::Comp: return compose(to_element(q, e->a), to_element(q, e->b));
    case K::Add: return to_element(q, e->a) + to_element(q, e->b);
    case K::Scale: return e->z * to_element(q, e->a);
  }
  throw Error(ErrorKind::Unsupported, "expression kind");
}

namespace detail {

/// One rewrite at the root, or nullptr when the root is not a redex.
inline ExprPtr rewrite_root(const ExprPtr& e) {
  using K = StarExpr::Kind;
  using E = StarExpr;
  if (e->kind == K::Adj) {
    const ExprPtr& x = e->a;
    switch (x->kind) {
      case K::Adj: return x->a;
      case K::Id: return x;
      case K::Comp: return E::comp(E::adj(x->b), E::adj(x->a));
      case K::Add: return E::add(E::adj(x->a), E::adj(x->b));
      case K::Scale: return E::scale(std::conj(x->z), E::adj(x->a));
      case K::Gen: return nullptr;
    }
  }
  if (e->kind == K::Comp) {
    const ExprPtr &l = e->a, &r = e->b;
    if (l->kind == K::Id) return r;
    if (r->kind == K::Id) return l;
    if (l->kind == K::Add) return E::add(E::comp(l->a, r), E::comp(l->b, r));
    if (r->kind == K::Add) return E::add(E::comp(l, r->a), E::comp(l, r->b));
    if (l->kind == K::Scale) return E::scale(l->z, E::comp(l->a, r));
    if (r->kind == K::Scale) return E::scale(r->z, E::comp(l, r->a));
    return nullptr;
  }
  if (e->kind == K::Scale) {
    if (e->a->kind == K::Scale) return E::scale(e->z * e->a->z, e->a->a);
    if (e->a->kind == K::Add) return E::add(E::scale(e->z, e->a->a), E::scale(e->z, e->a->b));
  }
  return nullptr;
}

inline void collect_redexes(const ExprPtr& e, std::vector<std::vector<int>>& out, std::vector<int>& path) {
  if (rewrite_root(e)) out.push_back(path);
  if (e->a) {
    path.push_back(0);
    collect_redexes(e->a, out, path);
    path.pop_back();
  }
  if (e->b) {
    path.push_back(1);
    collect_redexes(e->b, out, path);
    path.pop_back();
  }
}

inline ExprPtr rewrite_at(const ExprPtr& e, const std::vector<int>& path, std::size_t depth) {
  if (depth == path.size()) return rewrite_root(e);
  auto copy = std::make_shared<StarExpr>(*e);
  if (path[depth] == 0) {
    copy->a = rewrite_at(e->a, path, depth + 1);
  } else {
    copy->b = rewrite_at(e->b, path, depth + 1);
  }
  return copy;
}

/// Flattens an expression with no redexes into its term map.
inline void flatten_normal(const Quiver& q, const ExprPtr& e, Complex coeff, FreeStarElement& acc) {
  using K = StarExpr::Kind;
  if (e->kind == K::Add) {
    flatten_normal(q, e->a, coeff, acc);
    flatten_normal(q, e->b, coeff, acc);
    return;
  }
  if (e->kind == K::Scale) {
    flatten_normal(q, e->a, coeff * e->z, acc);
    return;
  }
  if (e->kind == K::Id) {
    acc.add_term({}, coeff);
    return;
  }
  StarWord w;
  std::function<void(const ExprPtr&)> walk = [&](const ExprPtr& p) {
    if (p->kind == K::Comp) {
      walk(p->a);
      walk(p->b);
    } else if (p->kind == K::Gen) {
      w.push_back({p->name, false});
    } else if (p->kind == K::Adj && p->a->kind == K::Gen) {
      w.push_back({p->a->name, true});
    } else {
      throw Error(ErrorKind::Unsupported, "expression is not in normal form");
    }
  };
  walk(e);
  acc.add_term(w, coeff);
}

}  // namespace detail

struct Reduction {
  FreeStarElement element;
  std::size_t steps = 0;
};

/// Rewrites unit elimination, adjoint distribution and bilinearity expansion
/// one redex at a time, choosing the redex with a seeded generator, then reads
/// off the term map.
inline Reduction reduce(const Quiver& q, ExprPtr e, std::uint64_t seed) {
  const FreeStarElement shape = to_element(q, e);
  Rng rng(seed);
  Reduction out;
  for (;;) {
    std::vector<std::vector<int>> redexes;
    std::vector<int> path;
    detail::collect_redexes(e, redexes, path);
    if (redexes.empty()) break;
    e = detail::rewrite_at(e, redexes[rng.index(0, redexes.size() - 1)], 0);
    ++out.steps;
  }
  out.element = FreeStarElement::zero(shape.src(), shape.tgt());
  detail::flatten_normal(q, e, 1.0, out.element);
  return out;
}

/// Random expression starting at `src`; returns it with its target.
inline std::pair<ExprPtr, std::string> random_expr(Rng& rng, const Quiver& q, const std::string& src, int depth) {
  using E = StarExpr;
  if (depth <= 0) {
    std::vector<Letter> options;
    for (const auto& a : q.arrows) {
      if (a.src == src) options.push_back({a.name, false});
      if (a.tgt == src) options.push_back({a.name, true});
    }
    if (options.empty() || rng.coin(0.1)) return {E::id(src), src};
    const Letter l = options[rng.index(0, options.size() - 1)];
    ExprPtr g = E::gen(l.gen);
    return {l.adj ? E::adj(g) : g, letter_tgt(q, l)};
  }
  switch (rng.index(0, 5)) {
    case 0: {
      auto [e1, t1] = random_expr(rng, q, src, depth - 1);
      auto [e2, t2] = random_expr(rng, q, t1, depth - 1);
      return {E::comp(e2, e1), t2};
    }
    case 1: {
      auto [g1, t1] = random_expr(rng, q, src, depth - 1);
      auto [g2, t2] = random_expr(rng, q, t1, depth - 1);
      return {E::adj(E::comp(E::adj(g1), E::adj(g2))), t2};
    }
    case 2: {
      auto [e, t] = random_expr(rng, q, src, depth - 1);
      auto [f, u] = random_expr(rng, q, t, depth - 1);
      (void)u;
      return {E::add(e, E::comp(E::adj(f), E::comp(f, e))), t};
    }
    case 3: {
      auto [e, t] = random_expr(rng, q, src, depth - 1);
      // small Gaussian integers keep every coefficient exact, so term maps compare bitwise
      const Complex z(static_cast<double>(rng.index(0, 6)) - 3.0, static_cast<double>(rng.index(0, 6)) - 3.0);
      return {E::scale(z, e), t};
    }
    case 4: {
      auto [e, t] = random_expr(rng, q, src, depth - 1);
      return {rng.coin() ? E::comp(E::id(t), e) : E::comp(e, E::id(src)), t};
    }
    default: {
      auto [e, t] = random_expr(rng, q, src, depth - 1);
      return {E::adj(E::adj(e)), t};
    }
  }
}

}  // namespace ucstar
