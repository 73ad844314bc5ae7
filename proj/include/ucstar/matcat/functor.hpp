#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "ucstar/matcat/category.hpp"

namespace ucstar {

using CategoryPtr = std::shared_ptr<const MatCategory>;

inline CategoryPtr share(MatCategory c) { return std::make_shared<const MatCategory>(std::move(c)); }

/// Pointer identity, or structural equality when the two were built separately.
inline bool same_category(const CategoryPtr& a, const CategoryPtr& b, const Tolerance& tol = {}) {
  return a == b || (a && b && a->same_as(*b, tol));
}

/// *-functor between concrete C*-categories: an object map plus, for every
/// pair (x, y), the images of the stored orthonormal basis of hom(x, y).
class StarFunctor {
 public:
  StarFunctor() = default;

  /// images[x * n + y][i] is the image of source->hom(x, y).basis(i).
  StarFunctor(CategoryPtr source, CategoryPtr target, std::vector<std::size_t> object_map,
              std::vector<std::vector<Matrix>> images)
      : source_(std::move(source)), target_(std::move(target)), object_map_(std::move(object_map)),
        images_(std::move(images)) {
    check_shapes();
  }

  using Action = std::function<Matrix(std::size_t x, std::size_t y, const Matrix& a)>;

  /// Builds the functor by evaluating `act` on every source basis element.
  static StarFunctor from_action(CategoryPtr source, CategoryPtr target, std::vector<std::size_t> object_map,
                                 const Action& act) {
    const std::size_t n = source->size();
    std::vector<std::vector<Matrix>> images(n * n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (const auto& b : source->hom(x, y).basis()) images[x * n + y].push_back(act(x, y, b));
    return StarFunctor(std::move(source), std::move(target), std::move(object_map), std::move(images));
  }

  static StarFunctor identity(CategoryPtr a) {
    std::vector<std::size_t> om(a->size());
    for (std::size_t i = 0; i < om.size(); ++i) om[i] = i;
    return from_action(a, a, std::move(om), [](std::size_t, std::size_t, const Matrix& m) { return m; });
  }

  const CategoryPtr& source() const noexcept { return source_; }
  const CategoryPtr& target() const noexcept { return target_; }
  const std::vector<std::size_t>& object_map() const noexcept { return object_map_; }
  std::size_t object(std::size_t x) const { return object_map_.at(x); }

  const std::vector<Matrix>& images(std::size_t x, std::size_t y) const {
    return images_.at(x * source_->size() + y);
  }

  /// F(a) for a in hom(x, y); a is first projected onto the hom subspace.
  Matrix apply(std::size_t x, std::size_t y, const Matrix& a) const {
    const Subspace& h = source_->hom(x, y);
    const auto coords = h.coordinates(a);
    const auto& imgs = images(x, y);
    Matrix out(target_->dim(object(y)), target_->dim(object(x)));
    for (std::size_t i = 0; i < coords.size(); ++i) out.axpy(coords[i], imgs[i]);
    return out;
  }

 private:
  void check_shapes() const {
    if (!source_ || !target_) throw Error(ErrorKind::InvalidFunctor, "missing source or target");
    const std::size_t n = source_->size();
    if (object_map_.size() != n) throw Error(ErrorKind::InvalidFunctor, "object map size");
    for (auto o : object_map_)
      if (o >= target_->size()) throw Error(ErrorKind::InvalidFunctor, "object map out of range");
    if (images_.size() != n * n) throw Error(ErrorKind::InvalidFunctor, "hom map table size");
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        const auto& imgs = images_[x * n + y];
        if (imgs.size() != source_->hom(x, y).dimension()) {
          throw Error(ErrorKind::InvalidFunctor, "hom " + source_->pair_name(x, y) + ": expected " +
                                                     std::to_string(source_->hom(x, y).dimension()) +
                                                     " images, got " + std::to_string(imgs.size()));
        }
        const Shape want{target_->dim(object_map_[y]), target_->dim(object_map_[x])};
        for (const auto& m : imgs)
          if (m.shape() != want) {
            throw Error(ErrorKind::InvalidFunctor, "image shape " + m.shape_string() + " on hom " +
                                                       source_->pair_name(x, y));
          }
      }
  }

  CategoryPtr source_;
  CategoryPtr target_;
  std::vector<std::size_t> object_map_;
  std::vector<std::vector<Matrix>> images_;
};

/// G after F.
inline StarFunctor compose(const StarFunctor& g, const StarFunctor& f) {
  if (!same_category(f.target(), g.source())) throw Error(ErrorKind::NotParallel, "functors not composable");
  std::vector<std::size_t> om(f.source()->size());
  for (std::size_t x = 0; x < om.size(); ++x) om[x] = g.object(f.object(x));
  return StarFunctor::from_action(f.source(), g.target(), std::move(om),
                                  [&](std::size_t x, std::size_t y, const Matrix& a) {
                                    return g.apply(f.object(x), f.object(y), f.apply(x, y, a));
                                  });
}

/// Largest basis-image distance between two functors with the same source;
/// infinite when the object maps differ.
inline double functor_residual(const StarFunctor& f, const StarFunctor& g) {
  if (f.object_map() != g.object_map()) return std::numeric_limits<double>::infinity();
  const std::size_t n = f.source()->size();
  double worst = 0.0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto& a = f.images(x, y);
      const auto& b = g.images(x, y);
      if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].shape() != b[i].shape()) return std::numeric_limits<double>::infinity();
        worst = std::max(worst, distance(a[i], b[i]));
      }
    }
  return worst;
}

/// Rank of the linear map F: hom(x, y) -> hom(Fx, Fy).
inline std::size_t hom_rank(const StarFunctor& f, std::size_t x, std::size_t y, const Tolerance& tol = {}) {
  const auto& imgs = f.images(x, y);
  if (imgs.empty()) return 0;
  const std::size_t len = imgs.front().size();
  Matrix cols(len, imgs.size());
  for (std::size_t i = 0; i < imgs.size(); ++i) {
    const auto e = imgs[i].entries();
    for (std::size_t k = 0; k < len; ++k) cols(k, i) = e[k];
  }
  return rank(cols, tol);
}

inline ValidationReport validate_functor(const StarFunctor& f, const Tolerance& tol = {}) {
  ValidationReport r;
  const MatCategory& a = *f.source();
  const MatCategory& b = *f.target();
  const std::size_t n = a.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto& imgs = f.images(x, y);
      const Subspace& h = b.hom(f.object(x), f.object(y));
      for (std::size_t i = 0; i < imgs.size(); ++i) {
        const double res = h.residual(imgs[i]);
        if (res > tol.threshold(imgs[i].frobenius_norm())) {
          r.add("membership", a.pair_name(x, y), res, "basis element " + std::to_string(i));
        }
      }
    }
  for (std::size_t x = 0; x < n; ++x) {
    const Matrix img = f.apply(x, x, Matrix::identity(a.dim(x)));
    const double res = distance(img, Matrix::identity(b.dim(f.object(x))));
    if (res > tol.threshold(1.0)) r.add("unit", a.pair_name(x, x), res);
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto& basis = a.hom(x, y).basis();
      for (std::size_t i = 0; i < basis.size(); ++i) {
        const Matrix lhs = f.apply(y, x, basis[i].adjoint());
        const Matrix rhs = f.images(x, y)[i].adjoint();
        const double res = distance(lhs, rhs);
        if (res > tol.threshold(rhs.frobenius_norm())) {
          r.add("involution", a.pair_name(x, y), res, "basis element " + std::to_string(i));
        }
      }
    }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        const auto& first = a.hom(x, y).basis();
        const auto& second = a.hom(y, z).basis();
        for (std::size_t i = 0; i < first.size(); ++i)
          for (std::size_t j = 0; j < second.size(); ++j) {
            const Matrix lhs = f.apply(x, z, second[j] * first[i]);
            const Matrix rhs = f.images(y, z)[j] * f.images(x, y)[i];
            const double res = distance(lhs, rhs);
            if (res > tol.threshold(std::max(lhs.frobenius_norm(), rhs.frobenius_norm()))) {
              r.add("composition", a.name(x) + "|" + a.name(y) + "|" + a.name(z), res,
                    "basis pair " + std::to_string(j) + "," + std::to_string(i));
            }
          }
      }
  return r;
}

}  // namespace ucstar
