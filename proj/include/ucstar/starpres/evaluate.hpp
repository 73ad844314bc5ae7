#pragma once

#include "ucstar/numlin.hpp"
#include "ucstar/starpres/presentation.hpp"

namespace ucstar {

/// Quiver morphism into matrices: a Hilbert dimension per object and a
/// dim(tgt) x dim(src) matrix per generator.
struct Representation {
  std::map<std::string, std::size_t> dims;
  std::map<std::string, Matrix> gens;
};

/// Evaluation map of a checked representation, by structural recursion.
class Evaluation {
 public:
  explicit Evaluation(Representation rep) : rep_(std::move(rep)) {}

  std::size_t dim(const std::string& x) const {
    auto it = rep_.dims.find(x);
    if (it == rep_.dims.end()) throw Error(ErrorKind::ShapeMismatch, "object " + x + " has no dimension");
    return it->second;
  }

  Matrix operator()(const FreeStarElement& e) const {
    Matrix out(dim(e.tgt()), dim(e.src()));
    for (const auto& [w, c] : e.terms()) {
      Matrix term = Matrix::identity(dim(e.src()));
      for (auto it = w.rbegin(); it != w.rend(); ++it) {
        const Matrix& g = rep_.gens.at(it->gen);
        term = (it->adj ? g.adjoint() : g) * term;
      }
      out.axpy(c, term);
    }
    return out;
  }

  const Representation& representation() const noexcept { return rep_; }

 private:
  Representation rep_;
};

/// Checks shapes, every relation and every bound; returns the evaluation map.
inline Evaluation evaluate(const Presentation& p, const Representation& rep, const Tolerance& tol = {}) {
  p.validate();
  for (const auto& x : p.quiver.objects) {
    auto it = rep.dims.find(x);
    if (it == rep.dims.end() || it->second == 0) throw Error(ErrorKind::ShapeMismatch, "object " + x + " not represented");
  }
  for (const auto& a : p.quiver.arrows) {
    auto it = rep.gens.find(a.name);
    if (it == rep.gens.end()) throw Error(ErrorKind::ShapeMismatch, "generator " + a.name + " not represented");
    const Shape want{rep.dims.at(a.tgt), rep.dims.at(a.src)};
    if (it->second.shape() != want) {
      throw Error(ErrorKind::ShapeMismatch, "generator " + a.name + " has shape " + it->second.shape_string());
    }
    it->second.check_finite();
  }
  Evaluation ev(rep);
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    const auto& r = p.relations[i];
    const Matrix l = ev(r.lhs), m = ev(r.rhs);
    const double res = distance(l, m);
    if (res > tol.threshold(std::max(l.frobenius_norm(), m.frobenius_norm()))) {
      throw Error(ErrorKind::RelationFailed, "relation " + std::to_string(i) + ": " + to_string(r.lhs) + " = " +
                                                 to_string(r.rhs) + ", residual " + std::to_string(res));
    }
  }
  for (const auto& [g, c] : p.bounds) {
    const double n = op_norm(rep.gens.at(g));
    if (n > c + tol.threshold(c)) {
      throw Error(ErrorKind::BoundFailed, g + ": norm " + std::to_string(n) + " exceeds " + std::to_string(c));
    }
  }
  return ev;
}

}  // namespace ucstar
