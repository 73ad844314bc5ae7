#pragma once

#include <memory>
#include <mutex>

#include "ucstar/model/lifts.hpp"

namespace ucstar {

/// Object (x, u, y) of the path category: x in A and u : F(x) -> y unitary in B.
struct PathObject {
  std::size_t x = 0;
  Matrix u;
  std::size_t y = 0;
};

/// The path category of F : A -> B. Its objects form a proper class in
/// principle; only materialized ones are kept, starting with (x, 1, Fx) for
/// every x in A. hom((x,u,y), (x',u',y')) = A(x, x'). Safe to share
/// between threads.
class PathCategory {
 public:
  explicit PathCategory(StarFunctor f, Tolerance tol = {}) : f_(std::move(f)), tol_(tol) {
    const MatCategory& b = *f_.target();
    for (std::size_t x = 0; x < f_.source()->size(); ++x)
      objects_.push_back({x, Matrix::identity(b.dim(f_.object(x))), f_.object(x)});
  }

  const StarFunctor& functor() const noexcept { return f_; }

  std::size_t size() const {
    std::lock_guard<std::mutex> lock(m_);
    return objects_.size();
  }

  PathObject object(std::size_t i) const {
    std::lock_guard<std::mutex> lock(m_);
    return objects_.at(i);
  }

  const Subspace& hom(std::size_t i, std::size_t j) const {
    std::lock_guard<std::mutex> lock(m_);
    return f_.source()->hom(objects_.at(i).x, objects_.at(j).x);
  }

  /// Index of (x, u, y), adding it if no materialized object matches.
  std::size_t materialize(std::size_t x, const Matrix& u, std::size_t y) {
    const MatCategory& a = *f_.source();
    const MatCategory& b = *f_.target();
    if (x >= a.size() || y >= b.size()) throw Error(ErrorKind::InvalidParams, "path object index out of range");
    const std::size_t fx = f_.object(x);
    if (u.shape() != Shape{b.dim(y), b.dim(fx)}) throw Error(ErrorKind::ShapeMismatch, "path object unitary shape");
    if (!uni_membership(u, tol_)) throw Error(ErrorKind::NotUnitary, "path object over " + a.name(x));
    if (!b.hom(fx, y).contains(u, tol_)) throw Error(ErrorKind::InvalidParams, "path object unitary outside hom");
    std::lock_guard<std::mutex> lock(m_);
    for (std::size_t i = 0; i < objects_.size(); ++i) {
      const auto& o = objects_[i];
      if (o.x == x && o.y == y && distance(o.u, u) <= tol_.threshold(1.0)) return i;
    }
    objects_.push_back({x, u, y});
    snapshot_.reset();
    return objects_.size() - 1;
  }

  /// Full subcategory on everything materialized so far. Object i of one
  /// snapshot is object i of every later one.
  CategoryPtr snapshot() const {
    std::lock_guard<std::mutex> lock(m_);
    if (snapshot_ && snapshot_->size() == objects_.size()) return snapshot_;
    const MatCategory& a = *f_.source();
    const MatCategory& b = *f_.target();
    MatCategory c;
    for (std::size_t i = 0; i < objects_.size(); ++i) {
      const auto& o = objects_[i];
      const std::string tag = i < a.size() ? "1" : "u" + std::to_string(i);
      c.add_object("(" + a.name(o.x) + "," + tag + "," + b.name(o.y) + ")", a.dim(o.x));
    }
    for (std::size_t i = 0; i < objects_.size(); ++i)
      for (std::size_t j = 0; j < objects_.size(); ++j) c.set_hom(i, j, a.hom(objects_[i].x, objects_[j].x));
    snapshot_ = share(std::move(c));
    return snapshot_;
  }

  /// I : A -> snapshot, x |-> (x, 1, Fx), the identity on arrows.
  StarFunctor inclusion(const CategoryPtr& snap) const {
    std::vector<std::size_t> om(f_.source()->size());
    for (std::size_t x = 0; x < om.size(); ++x) om[x] = x;
    return StarFunctor::from_action(f_.source(), snap, std::move(om),
                                    [](std::size_t, std::size_t, const Matrix& m) { return m; });
  }

  /// P : snapshot -> B, (x,u,y) |-> y and a |-> u' F(a) u*.
  StarFunctor projection(const CategoryPtr& snap) const {
    std::vector<PathObject> objs;
    {
      std::lock_guard<std::mutex> lock(m_);
      objs.assign(objects_.begin(), objects_.begin() + static_cast<std::ptrdiff_t>(snap->size()));
    }
    std::vector<std::size_t> om;
    for (const auto& o : objs) om.push_back(o.y);
    return StarFunctor::from_action(snap, f_.target(), std::move(om), [&](std::size_t i, std::size_t j, const Matrix& m) {
      return objs[j].u * f_.apply(objs[i].x, objs[j].x, m) * objs[i].u.adjoint();
    });
  }

 private:
  StarFunctor f_;
  Tolerance tol_;
  mutable std::mutex m_;
  std::vector<PathObject> objects_;
  mutable CategoryPtr snapshot_;
};

/// F = second . first through a midway category. For the path
/// factorization `path` holds the lazy category and `midway` a snapshot.
struct Factorization {
  StarFunctor first;
  CategoryPtr midway;
  StarFunctor second;
  std::shared_ptr<PathCategory> path;
  double residual = 0.0;  // || second . first - F ||
};

/// Re-read the snapshot and both legs after objects were materialized.
inline void refresh(Factorization& r, const StarFunctor& f) {
  if (!r.path) return;
  r.midway = r.path->snapshot();
  r.first = r.path->inclusion(r.midway);
  r.second = r.path->projection(r.midway);
  r.residual = functor_residual(compose(r.second, r.first), f);
}

/// Constant paths followed by evaluation at the end point. `extra` lists
/// further (x, u, y) to materialize in the snapshot.
inline Factorization factor_path(const StarFunctor& f, const std::vector<PathObject>& extra = {},
                                 const Tolerance& tol = {}) {
  Factorization r;
  r.path = std::make_shared<PathCategory>(f, tol);
  for (const auto& o : extra) r.path->materialize(o.x, o.u, o.y);
  refresh(r, f);
  return r;
}

/// Lifts through P by materializing: v : y -> y' lifts (x,u,y) along 1_x
/// to (x, vu, y').
inline LiftOracle path_oracle(const std::shared_ptr<PathCategory>& path, const Tolerance& tol = {}) {
  LiftOracle o;
  o.lift = [path, tol](std::size_t c, const Matrix& v, std::size_t d) -> std::optional<UnitaryLift> {
    const PathObject p = path->object(c);
    const MatCategory& b = *path->functor().target();
    if (v.shape() != Shape{b.dim(d), b.dim(p.y)}) throw Error(ErrorKind::SquareMismatch, "unitary does not start at P(c)");
    if (!uni_membership(v, tol) || !b.hom(p.y, d).contains(v, tol)) return std::nullopt;
    const std::size_t j = path->materialize(p.x, v * p.u, d);
    return UnitaryLift{Matrix::identity(path->functor().source()->dim(p.x)), j};
  };
  o.source = [path] { return path->snapshot(); };
  o.functor = [path] {
    const auto s = path->snapshot();
    return path->projection(s);
  };
  return o;
}

/// The mapping cylinder: objects of A then of B, each standing for its
/// image in B, with all homs read in B.
inline Factorization factor_cylinder(const StarFunctor& f) {
  const MatCategory& a = *f.source();
  const MatCategory& b = *f.target();
  std::vector<std::size_t> q;
  MatCategory c;
  for (std::size_t x = 0; x < a.size(); ++x) {
    q.push_back(f.object(x));
    c.add_object("a:" + a.name(x), b.dim(f.object(x)));
  }
  for (std::size_t y = 0; y < b.size(); ++y) {
    q.push_back(y);
    c.add_object("b:" + b.name(y), b.dim(y));
  }
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) c.set_hom(i, j, b.hom(q[i], q[j]));
  Factorization r;
  r.midway = share(std::move(c));
  std::vector<std::size_t> jo(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) jo[x] = x;
  r.first = StarFunctor::from_action(f.source(), r.midway, std::move(jo),
                                     [&](std::size_t x, std::size_t y, const Matrix& m) { return f.apply(x, y, m); });
  r.second = StarFunctor::from_action(r.midway, f.target(), q, [](std::size_t, std::size_t, const Matrix& m) { return m; });
  r.residual = functor_residual(compose(r.second, r.first), f);
  return r;
}

}  // namespace ucstar
