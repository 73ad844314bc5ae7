#pragma once

#include <compare>
#include <complex>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ucstar/error.hpp"
#include "ucstar/numlin/matrix.hpp"

namespace ucstar {

struct QuiverArrow {
  std::string name;
  std::string src;
  std::string tgt;
  friend bool operator==(const QuiverArrow&, const QuiverArrow&) = default;
};

/// Finite quiver; arrow names are unique and endpoints are declared objects.
struct Quiver {
  std::vector<std::string> objects;
  std::vector<QuiverArrow> arrows;

  friend bool operator==(const Quiver&, const Quiver&) = default;

  void validate() const {
    std::set<std::string> seen;
    for (const auto& o : objects)
      if (!seen.insert(o).second) throw Error(ErrorKind::InvalidQuiver, "duplicate object " + o);
    std::set<std::string> names;
    for (const auto& a : arrows) {
      if (!names.insert(a.name).second) throw Error(ErrorKind::InvalidQuiver, "duplicate arrow " + a.name);
      if (!seen.count(a.src) || !seen.count(a.tgt)) {
        throw Error(ErrorKind::InvalidQuiver, "arrow " + a.name + " has an undeclared endpoint");
      }
    }
  }

  bool has_object(const std::string& x) const {
    for (const auto& o : objects)
      if (o == x) return true;
    return false;
  }

  const QuiverArrow& arrow(const std::string& name) const {
    for (const auto& a : arrows)
      if (a.name == name) return a;
    throw Error(ErrorKind::InvalidQuiver, "unknown arrow " + name);
  }

  bool has_arrow(const std::string& name) const {
    for (const auto& a : arrows)
      if (a.name == name) return true;
    return false;
  }

  /// Whether some word runs from x to y: x and y lie in one connected component
  /// of the underlying undirected graph (adjoints reverse arrows).
  bool connected(const std::string& x, const std::string& y) const {
    std::set<std::string> reached{x};
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& a : arrows) {
        if (reached.count(a.src) && reached.insert(a.tgt).second) grew = true;
        if (reached.count(a.tgt) && reached.insert(a.src).second) grew = true;
      }
    }
    return reached.count(y) > 0;
  }
};

/// A generator or its formal adjoint.
struct Letter {
  std::string gen;
  bool adj = false;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// Letters in composition order: w[0] is applied last. The empty word is the
/// formal identity of the element's object. Adjoints sit on generators only,
/// so (b a)* = a* b* and a** = a hold by construction.
using StarWord = std::vector<Letter>;

inline std::string letter_src(const Quiver& q, const Letter& l) {
  const auto& a = q.arrow(l.gen);
  return l.adj ? a.tgt : a.src;
}
inline std::string letter_tgt(const Quiver& q, const Letter& l) {
  const auto& a = q.arrow(l.gen);
  return l.adj ? a.src : a.tgt;
}

inline StarWord adjoint(const StarWord& w) {
  StarWord out(w.rbegin(), w.rend());
  for (auto& l : out) l.adj = !l.adj;
  return out;
}

inline std::string to_string(const StarWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "." : "") + w[i].gen + (w[i].adj ? "*" : "");
  return s;
}

/// Finite linear combination of parallel words of the free *-category.
class FreeStarElement {
 public:
  FreeStarElement() = default;
  FreeStarElement(std::string src, std::string tgt) : src_(std::move(src)), tgt_(std::move(tgt)) {}

  static FreeStarElement zero(std::string src, std::string tgt) { return {std::move(src), std::move(tgt)}; }

  static FreeStarElement identity(const std::string& x) {
    FreeStarElement e(x, x);
    e.terms_[{}] = 1.0;
    return e;
  }

  static FreeStarElement word(const Quiver& q, StarWord w, Complex coeff = 1.0) {
    if (w.empty()) throw Error(ErrorKind::InvalidQuiver, "empty word needs an object; use identity");
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (letter_src(q, w[i]) != letter_tgt(q, w[i + 1])) {
        throw Error(ErrorKind::InvalidQuiver, "word " + to_string(w) + " is not composable");
      }
    FreeStarElement e(letter_src(q, w.back()), letter_tgt(q, w.front()));
    if (coeff != Complex{}) e.terms_[std::move(w)] = coeff;
    return e;
  }

  static FreeStarElement generator(const Quiver& q, const std::string& name, bool adj = false) {
    return word(q, {{name, adj}});
  }

  const std::string& src() const noexcept { return src_; }
  const std::string& tgt() const noexcept { return tgt_; }
  const std::map<StarWord, Complex>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Adds c * w; the word must already be composable and parallel.
  void add_term(const StarWord& w, Complex c) {
    Complex& slot = terms_[w];
    slot += c;
    if (slot == Complex{}) terms_.erase(w);
  }

  /// Drops coefficients of magnitude at most eps.
  FreeStarElement& prune(double eps) {
    for (auto it = terms_.begin(); it != terms_.end();) it = std::abs(it->second) <= eps ? terms_.erase(it) : std::next(it);
    return *this;
  }

  FreeStarElement adjoint() const {
    FreeStarElement e(tgt_, src_);
    for (const auto& [w, c] : terms_) e.terms_[ucstar::adjoint(w)] = std::conj(c);
    return e;
  }

  friend FreeStarElement operator+(FreeStarElement a, const FreeStarElement& b) {
    a.require_parallel(b);
    for (const auto& [w, c] : b.terms_) a.add_term(w, c);
    return a;
  }
  friend FreeStarElement operator-(const FreeStarElement& a, const FreeStarElement& b) { return a + Complex(-1.0) * b; }
  friend FreeStarElement operator*(Complex z, FreeStarElement a) {
    if (z == Complex{}) return zero(a.src_, a.tgt_);
    for (auto& [w, c] : a.terms_) c *= z;
    return a;
  }

  /// b after a.
  friend FreeStarElement compose(const FreeStarElement& b, const FreeStarElement& a) {
    if (a.tgt_ != b.src_) throw Error(ErrorKind::ShapeMismatch, "compose: " + a.tgt_ + " vs " + b.src_);
    FreeStarElement e(a.src_, b.tgt_);
    for (const auto& [wb, cb] : b.terms_)
      for (const auto& [wa, ca] : a.terms_) {
        StarWord w = wb;
        w.insert(w.end(), wa.begin(), wa.end());
        e.add_term(w, cb * ca);
      }
    return e;
  }

  friend bool operator==(const FreeStarElement&, const FreeStarElement&) = default;

 private:
  void require_parallel(const FreeStarElement& b) const {
    if (src_ != b.src_ || tgt_ != b.tgt_) throw Error(ErrorKind::NotParallel, "adding non-parallel elements");
  }

  std::string src_;
  std::string tgt_;
  std::map<StarWord, Complex> terms_;
};

inline std::string to_string(const FreeStarElement& e) {
  if (e.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : e.terms()) {
    s += (first ? "" : " + ") + std::string("(") + std::to_string(c.real()) +
         (c.imag() != 0 ? (c.imag() < 0 ? "" : "+") + std::to_string(c.imag()) + "i" : "") + ")" + to_string(w);
    first = false;
  }
  return s;
}

}  // namespace ucstar
