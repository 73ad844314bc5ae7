#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ucstar/error.hpp"

namespace ucstar {

struct Simplex {
  std::string name;
  std::vector<std::size_t> faces;  // faces[i] = index of d_i in the level below
  bool degenerate = false;
  friend bool operator==(const Simplex&, const Simplex&) = default;
};

/// Simplicial set truncated at dim_cap, every simplex stored with its faces.
class FiniteSimplicialSet {
 public:
  explicit FiniteSimplicialSet(std::size_t dim_cap = 0) : levels_(dim_cap + 1) {}

  std::size_t dim_cap() const noexcept { return levels_.size() - 1; }

  std::size_t add(std::size_t n, std::string name, std::vector<std::size_t> faces, bool degenerate = false) {
    if (n > dim_cap()) throw Error(ErrorKind::InvalidSimplicialSet, "dimension above dim_cap");
    levels_[n].push_back({std::move(name), std::move(faces), degenerate});
    return levels_[n].size() - 1;
  }

  const std::vector<Simplex>& level(std::size_t n) const { return levels_.at(n); }
  std::size_t count(std::size_t n) const { return n <= dim_cap() ? levels_[n].size() : 0; }
  std::size_t nondegenerate_count(std::size_t n) const {
    std::size_t c = 0;
    if (n <= dim_cap())
      for (const auto& s : levels_[n]) c += !s.degenerate;
    return c;
  }
  const Simplex& simplex(std::size_t n, std::size_t s) const { return levels_.at(n).at(s); }
  std::size_t face(std::size_t n, std::size_t s, std::size_t i) const { return simplex(n, s).faces.at(i); }

  std::size_t find(std::size_t n, const std::string& name) const {
    for (std::size_t s = 0; s < count(n); ++s)
      if (levels_[n][s].name == name) return s;
    throw Error(ErrorKind::InvalidSimplicialSet, "no " + std::to_string(n) + "-simplex " + name);
  }

  /// Face arity, index ranges and d_i d_j = d_{j-1} d_i for i < j.
  void validate() const {
    for (std::size_t n = 0; n <= dim_cap(); ++n)
      for (const auto& s : levels_[n]) {
        if (s.faces.size() != (n == 0 ? 0 : n + 1)) {
          throw Error(ErrorKind::InvalidSimplicialSet, s.name + " has " + std::to_string(s.faces.size()) + " faces");
        }
        for (auto f : s.faces)
          if (f >= levels_[n - 1].size()) throw Error(ErrorKind::InvalidSimplicialSet, s.name + " face out of range");
      }
    for (std::size_t n = 2; n <= dim_cap(); ++n)
      for (const auto& s : levels_[n])
        for (std::size_t j = 1; j <= n; ++j)
          for (std::size_t i = 0; i < j; ++i)
            if (face(n - 1, s.faces[j], i) != face(n - 1, s.faces[i], j - 1)) {
              throw Error(ErrorKind::InvalidSimplicialSet, "simplicial identity d" + std::to_string(i) + "d" +
                                                               std::to_string(j) + " fails at " + s.name);
            }
  }

  friend bool operator==(const FiniteSimplicialSet&, const FiniteSimplicialSet&) = default;

 private:
  std::vector<std::vector<Simplex>> levels_;
};

/// Per-dimension simplex maps.
struct SimplicialMap {
  std::vector<std::vector<std::size_t>> maps;
  friend bool operator==(const SimplicialMap&, const SimplicialMap&) = default;
};

inline void validate_simplicial_map(const SimplicialMap& f, const FiniteSimplicialSet& k, const FiniteSimplicialSet& l) {
  if (f.maps.size() != k.dim_cap() + 1 || l.dim_cap() < k.dim_cap()) {
    throw Error(ErrorKind::InvalidSimplicialSet, "map levels do not match dim_cap");
  }
  for (std::size_t n = 0; n <= k.dim_cap(); ++n) {
    if (f.maps[n].size() != k.count(n)) throw Error(ErrorKind::InvalidSimplicialSet, "map level size");
    for (std::size_t s = 0; s < k.count(n); ++s) {
      if (f.maps[n][s] >= l.count(n)) throw Error(ErrorKind::InvalidSimplicialSet, "image out of range");
      if (n == 0) continue;
      for (std::size_t i = 0; i <= n; ++i)
        if (f.maps[n - 1][k.face(n, s, i)] != l.face(n, f.maps[n][s], i)) {
          throw Error(ErrorKind::InvalidSimplicialSet, "map does not commute with d" + std::to_string(i) + " at " +
                                                           k.simplex(n, s).name);
        }
    }
  }
}

/// Inclusion of a simplicial set whose simplices appear by name in the other.
inline SimplicialMap inclusion_by_name(const FiniteSimplicialSet& sub, const FiniteSimplicialSet& super) {
  SimplicialMap f;
  for (std::size_t n = 0; n <= sub.dim_cap(); ++n) {
    f.maps.emplace_back();
    for (const auto& s : sub.level(n)) f.maps.back().push_back(super.find(n, s.name));
  }
  validate_simplicial_map(f, sub, super);
  return f;
}

enum class StandardKind { Delta, Horn, Boundary };

/// Subcomplexes of the n-simplex: Δ[n], Λᵏ[n] and ∂Δ[n]. An m-simplex is a
/// nondecreasing vertex sequence named by its digits, e.g. "012" or "0012".
inline FiniteSimplicialSet standard(StandardKind kind, std::size_t n, std::size_t dim_cap, std::size_t k = 0) {
  if (n > 9) throw Error(ErrorKind::InvalidParams, "n must be at most 9");
  if (kind == StandardKind::Horn && (n < 1 || k > n)) throw Error(ErrorKind::InvalidParams, "horn needs 0 <= k <= n, n >= 1");
  auto keep = [&](const std::set<int>& verts) {
    const bool all = verts.size() == n + 1;
    if (kind == StandardKind::Delta) return true;
    if (kind == StandardKind::Boundary) return !all;
    const bool opposite_k = verts.size() == n && !verts.count(static_cast<int>(k));
    return !all && !opposite_k;
  };
  FiniteSimplicialSet out(dim_cap);
  std::map<std::string, std::size_t> index_prev;
  for (std::size_t m = 0; m <= dim_cap; ++m) {
    std::map<std::string, std::size_t> index_cur;
    std::vector<int> seq(m + 1, 0);
    for (;;) {
      const std::set<int> verts(seq.begin(), seq.end());
      if (keep(verts)) {
        std::string name;
        for (int v : seq) name += static_cast<char>('0' + v);
        std::vector<std::size_t> faces;
        if (m > 0)
          for (std::size_t i = 0; i <= m; ++i) faces.push_back(index_prev.at(name.substr(0, i) + name.substr(i + 1)));
        index_cur[name] = out.add(m, name, faces, verts.size() < m + 1);
      }
      // next nondecreasing sequence in lexicographic order
      std::size_t pos = m + 1;
      while (pos > 0 && seq[pos - 1] == static_cast<int>(n)) --pos;
      if (pos == 0) break;
      const int v = seq[pos - 1] + 1;
      for (std::size_t i = pos - 1; i <= m; ++i) seq[i] = v;
    }
    index_prev = std::move(index_cur);
  }
  out.validate();
  return out;
}

}  // namespace ucstar
