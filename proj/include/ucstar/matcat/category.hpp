#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ucstar/numlin.hpp"
#include "ucstar/report.hpp"

namespace ucstar {

struct MatObject {
  std::string name;
  std::size_t dim = 1;
  friend bool operator==(const MatObject&, const MatObject&) = default;
};

/// Concrete finite-dimensional C*-category: objects are Hilbert spaces C^dim
/// and hom(x, y) is a subspace of dim(y) x dim(x) matrices.
/// Objects are addressed by index; names are for IO and diagnostics.
class MatCategory {
 public:
  MatCategory() = default;

  explicit MatCategory(std::vector<MatObject> objects) {
    for (auto& o : objects) add_object(std::move(o.name), o.dim);
  }

  /// Every hom is the full matrix space.
  static MatCategory full(const std::vector<MatObject>& objects) {
    MatCategory c(objects);
    for (std::size_t x = 0; x < c.size(); ++x)
      for (std::size_t y = 0; y < c.size(); ++y) c.set_hom(x, y, Subspace::full({c.dim(y), c.dim(x)}));
    return c;
  }

  /// One object of dimension 1 with scalar endomorphisms: the unit for the tensor product.
  static MatCategory unit(std::string name = "*") { return full({{std::move(name), 1}}); }

  std::size_t add_object(std::string name, std::size_t dim) {
    if (dim == 0) throw Error(ErrorKind::InvalidCategory, "object " + name + " has dimension 0");
    if (index_.count(name)) throw Error(ErrorKind::NameClash, "duplicate object " + name);
    const std::size_t n = objects_.size();
    index_.emplace(name, n);
    objects_.push_back({std::move(name), dim});
    // re-layout hom table as (n+1)^2, new homs start at zero
    std::vector<Subspace> homs((n + 1) * (n + 1));
    for (std::size_t x = 0; x <= n; ++x)
      for (std::size_t y = 0; y <= n; ++y)
        homs[x * (n + 1) + y] =
            (x < n && y < n) ? std::move(homs_[x * n + y]) : Subspace::zero({dim_of(y), dim_of(x)});
    homs_ = std::move(homs);
    return n;
  }

  void set_hom(std::size_t x, std::size_t y, Subspace s) {
    check_index(x);
    check_index(y);
    if (s.ambient() != Shape{dim(y), dim(x)}) {
      throw Error(ErrorKind::ShapeMismatch, "hom " + name(x) + "|" + name(y) + " must be " +
                                                std::to_string(dim(y)) + "x" + std::to_string(dim(x)));
    }
    homs_[x * size() + y] = std::move(s);
  }

  std::size_t size() const noexcept { return objects_.size(); }
  const std::vector<MatObject>& objects() const noexcept { return objects_; }
  const MatObject& object(std::size_t i) const { return objects_.at(i); }
  const std::string& name(std::size_t i) const { return objects_.at(i).name; }
  std::size_t dim(std::size_t i) const { return objects_.at(i).dim; }

  std::optional<std::size_t> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index_of(const std::string& name) const {
    auto i = find(name);
    if (!i) throw Error(ErrorKind::InvalidCategory, "unknown object " + name);
    return *i;
  }

  const Subspace& hom(std::size_t x, std::size_t y) const {
    check_index(x);
    check_index(y);
    return homs_[x * size() + y];
  }

  std::string pair_name(std::size_t x, std::size_t y) const { return name(x) + "|" + name(y); }

  /// Same objects in the same order and the same hom subspaces.
  bool same_as(const MatCategory& other, const Tolerance& tol = {}) const {
    if (objects_ != other.objects_) return false;
    for (std::size_t k = 0; k < homs_.size(); ++k)
      if (!homs_[k].same_space(other.homs_[k], tol)) return false;
    return true;
  }

 private:
  std::size_t dim_of(std::size_t i) const { return objects_[i].dim; }
  void check_index(std::size_t i) const {
    if (i >= objects_.size()) throw Error(ErrorKind::InvalidCategory, "object index out of range");
  }

  std::vector<MatObject> objects_;
  std::map<std::string, std::size_t> index_;
  std::vector<Subspace> homs_;  // homs_[x * n + y] = hom(x, y)
};

/// Checks unitality, adjoint closure and composition closure on basis
/// elements. Closure under linear combinations is automatic for subspaces,
/// and norm completeness and positivity are automatic for matrices.
inline ValidationReport validate_category(const MatCategory& a, const Tolerance& tol = {}) {
  ValidationReport r;
  const std::size_t n = a.size();
  for (std::size_t x = 0; x < n; ++x) {
    const Matrix id = Matrix::identity(a.dim(x));
    const double res = a.hom(x, x).residual(id);
    if (res > tol.threshold(id.frobenius_norm())) r.add("unitality", a.pair_name(x, x), res);
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto& basis = a.hom(x, y).basis();
      for (std::size_t i = 0; i < basis.size(); ++i) {
        const Matrix adj = basis[i].adjoint();
        const double res = a.hom(y, x).residual(adj);
        if (res > tol.threshold(adj.frobenius_norm())) {
          r.add("adjoint-closure", a.pair_name(x, y), res, "basis element " + std::to_string(i));
        }
      }
    }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        const auto& first = a.hom(x, y).basis();
        const auto& second = a.hom(y, z).basis();
        const Subspace& target = a.hom(x, z);
        for (std::size_t i = 0; i < first.size(); ++i)
          for (std::size_t j = 0; j < second.size(); ++j) {
            const Matrix c = second[j] * first[i];
            const double res = target.residual(c);
            if (res > tol.threshold(c.frobenius_norm())) {
              r.add("composition-closure", a.name(x) + "|" + a.name(y) + "|" + a.name(z), res,
                    "basis pair " + std::to_string(j) + "," + std::to_string(i));
            }
          }
      }
  return r;
}

}  // namespace ucstar
