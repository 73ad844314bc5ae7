#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ucstar/matcat.hpp"

namespace ucstar {

/// Columns are the flattened images of the source basis of hom(x, y).
inline Matrix hom_image_columns(const StarFunctor& f, std::size_t x, std::size_t y) {
  const auto& imgs = f.images(x, y);
  const MatCategory& b = *f.target();
  const std::size_t len = b.dim(f.object(y)) * b.dim(f.object(x));
  Matrix cols(len, imgs.size());
  for (std::size_t i = 0; i < imgs.size(); ++i)
    for (std::size_t k = 0; k < len; ++k) cols(k, i) = imgs[i].entries()[k];
  return cols;
}

/// Matrix of F: hom(x, y) -> hom(Fx, Fy) in the two stored orthonormal bases.
inline Matrix hom_map_matrix(const StarFunctor& f, std::size_t x, std::size_t y) {
  const Subspace& tgt = f.target()->hom(f.object(x), f.object(y));
  const auto& imgs = f.images(x, y);
  Matrix m(tgt.dimension(), imgs.size());
  for (std::size_t i = 0; i < imgs.size(); ++i) {
    const auto c = tgt.coordinates(imgs[i]);
    for (std::size_t j = 0; j < c.size(); ++j) m(j, i) = c[j];
  }
  return m;
}

/// Some a in hom(x, y) with F(a) = b, or nullopt when b is not in the image.
inline std::optional<Matrix> hom_preimage(const StarFunctor& f, std::size_t x, std::size_t y, const Matrix& b,
                                          const Tolerance& tol = {}) {
  const MatCategory& t = *f.target();
  if (b.shape() != Shape{t.dim(f.object(y)), t.dim(f.object(x))}) return std::nullopt;
  const Subspace& h = f.source()->hom(x, y);
  if (h.dimension() == 0) {
    if (b.frobenius_norm() > tol.threshold(1.0)) return std::nullopt;
    return Matrix(f.source()->dim(y), f.source()->dim(x));
  }
  const Vector rhs(b.entries().begin(), b.entries().end());
  const auto c = solve(hom_image_columns(f, x, y), rhs, tol);
  if (!c) return std::nullopt;
  return h.combine(*c);
}

inline bool is_cofibration(const StarFunctor& f) {
  std::vector<std::size_t> om = f.object_map();
  std::sort(om.begin(), om.end());
  return std::adjacent_find(om.begin(), om.end()) == om.end();
}

inline bool objects_surjective(const StarFunctor& f) {
  std::vector<bool> hit(f.target()->size(), false);
  for (auto y : f.object_map()) hit[y] = true;
  return std::find(hit.begin(), hit.end(), false) == hit.end();
}

enum class Verdict { Yes, No, NoEvidence };

constexpr std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "YES";
    case Verdict::No: return "NO";
    case Verdict::NoEvidence: return "NO_EVIDENCE";
  }
  return "?";
}

/// Outcome of the weak-equivalence test. On YES, preimage[y] is an object
/// with F(preimage[y]) unitarily isomorphic to y via unitaries[y].
struct WeqResult {
  Verdict verdict = Verdict::No;
  std::string witness;
  std::vector<std::size_t> preimage;
  std::vector<Matrix> unitaries;
  std::uint64_t seed = 0;

  bool yes() const noexcept { return verdict == Verdict::Yes; }
};

/// Fully faithful plus unitarily essentially surjective. Objects hit by F
/// take their first preimage and the identity unitary.
inline WeqResult is_weak_equivalence(const StarFunctor& f, std::uint64_t seed = 0, const Tolerance& tol = {}) {
  WeqResult r;
  r.seed = seed;
  const MatCategory& a = *f.source();
  const MatCategory& b = *f.target();
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < a.size(); ++y) {
      const std::size_t da = a.hom(x, y).dimension();
      const std::size_t db = b.hom(f.object(x), f.object(y)).dimension();
      const std::size_t rk = hom_rank(f, x, y, tol);
      if (rk != da || rk != db) {
        r.witness = "hom " + a.pair_name(x, y) + ": rank " + std::to_string(rk) + ", source dim " +
                    std::to_string(da) + ", target dim " + std::to_string(db);
        return r;
      }
    }
  bool uncertain = false;
  for (std::size_t y = 0; y < b.size(); ++y) {
    std::optional<std::size_t> pick;
    Matrix v;
    for (std::size_t x = 0; x < a.size() && !pick; ++x)
      if (f.object(x) == y) {
        pick = x;
        v = Matrix::identity(b.dim(y));
      }
    std::vector<bool> tried(b.size(), false);
    for (std::size_t x = 0; x < a.size() && !pick; ++x) {
      const std::size_t fx = f.object(x);
      if (tried[fx]) continue;
      tried[fx] = true;
      const IsoVerdict iso = iso_exists(b, fx, y, seed + 7919 * y + fx, 64, tol);
      if (iso.yes()) {
        pick = x;
        v = *iso.unitary;
      } else if (!iso.certain) {
        uncertain = true;
      }
    }
    if (!pick) {
      r.preimage.clear();
      r.unitaries.clear();
      r.verdict = uncertain ? Verdict::NoEvidence : Verdict::No;
      r.witness = "object " + b.name(y) + (uncertain ? ": no unitary found from the image" : ": not isomorphic to any image object");
      return r;
    }
    r.preimage.push_back(*pick);
    r.unitaries.push_back(std::move(v));
  }
  r.verdict = Verdict::Yes;
  return r;
}

/// Object-surjective and every hom map invertible, read off the singular
/// values of the hom map in coordinates.
inline bool is_trivial_fibration(const StarFunctor& f, const Tolerance& tol = {}) {
  if (!objects_surjective(f)) return false;
  const MatCategory& a = *f.source();
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < a.size(); ++y) {
      const Matrix m = hom_map_matrix(f, x, y);
      if (m.rows() != m.cols()) return false;
      if (m.rows() == 0) continue;
      const auto sv = singular_values(m);
      const double hi = *std::max_element(sv.begin(), sv.end());
      const double lo = *std::min_element(sv.begin(), sv.end());
      if (lo <= tol.threshold(hi)) return false;
    }
  return true;
}

/// U: empty -> F, V: F + F -> 1 (the two-object free arrow), W: P -> 1
/// identifying two parallel arrows of norm at most one.
enum class Generator { U, V, W };

constexpr std::string_view to_string(Generator g) {
  switch (g) {
    case Generator::U: return "U";
    case Generator::V: return "V";
    case Generator::W: return "W";
  }
  return "?";
}

struct RlpCheck {
  bool holds = true;
  std::string witness;
  std::optional<Matrix> kernel_element;
};

/// Right lifting against a generating map, via its characterization:
/// U surjective on objects, V full, W faithful.
inline RlpCheck rlp_generating(const StarFunctor& f, Generator which, const Tolerance& tol = {}) {
  RlpCheck r;
  const MatCategory& a = *f.source();
  const MatCategory& b = *f.target();
  if (which == Generator::U) {
    std::vector<bool> hit(b.size(), false);
    for (auto y : f.object_map()) hit[y] = true;
    for (std::size_t y = 0; y < b.size(); ++y)
      if (!hit[y]) {
        r.holds = false;
        r.witness = "object " + b.name(y) + " not in the image";
        return r;
      }
    return r;
  }
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < a.size(); ++y) {
      const std::size_t rk = hom_rank(f, x, y, tol);
      if (which == Generator::V) {
        const std::size_t db = b.hom(f.object(x), f.object(y)).dimension();
        if (rk < db) {
          r.holds = false;
          r.witness = "hom " + a.pair_name(x, y) + ": image rank " + std::to_string(rk) + " < " + std::to_string(db);
          return r;
        }
      } else if (rk < a.hom(x, y).dimension()) {
        r.holds = false;
        r.witness = "hom " + a.pair_name(x, y) + ": kernel of dimension " +
                    std::to_string(a.hom(x, y).dimension() - rk);
        const auto ker = nullspace(hom_image_columns(f, x, y), tol);
        if (!ker.empty()) r.kernel_element = a.hom(x, y).combine(ker.front());
        return r;
      }
    }
  return r;
}

}  // namespace ucstar
