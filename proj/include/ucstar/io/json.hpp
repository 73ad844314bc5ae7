#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ucstar/gpd.hpp"
#include "ucstar/model.hpp"
#include "ucstar/report.hpp"
#include "ucstar/sset.hpp"
#include "ucstar/starpres.hpp"

namespace ucstar::io {

using Json = nlohmann::ordered_json;

[[noreturn]] inline void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::string text(const Json& j, const char* what) {
  if (!j.is_string()) parse_fail(std::string(what) + " must be a string");
  return j.get<std::string>();
}

inline double number(const Json& j, const char* what) {
  if (!j.is_number()) parse_fail(std::string(what) + " must be a number");
  return j.get<double>();
}

inline std::size_t count(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    parse_fail(std::string(what) + " must be a nonnegative integer");
  }
  return j.get<std::size_t>();
}

inline Json load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    parse_fail(path.string() + ": " + e.what());
  }
}

inline void save(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) parse_fail("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

// ---- matrices: rows of [re, im] pairs

inline Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) parse_fail("complex number must be [re, im]");
  return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) parse_fail("matrix must be a nonempty array of rows");
  const std::size_t cols = j[0].size();
  Matrix m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) parse_fail("ragged matrix");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = complex_from_json(j[i][k]);
  }
  return m;
}

// ---- categories: {objects:[{name,dim}], homs:{"x|y":[matrix,...]}}

inline Json category_to_json(const MatCategory& c) {
  Json objs = Json::array();
  for (const auto& o : c.objects()) objs.push_back({{"name", o.name}, {"dim", o.dim}});
  Json homs = Json::object();
  for (std::size_t x = 0; x < c.size(); ++x)
    for (std::size_t y = 0; y < c.size(); ++y) {
      if (c.hom(x, y).dimension() == 0) continue;
      Json basis = Json::array();
      for (const auto& b : c.hom(x, y).basis()) basis.push_back(matrix_to_json(b));
      homs[c.pair_name(x, y)] = std::move(basis);
    }
  return {{"objects", objs}, {"homs", homs}};
}

/// Split "x|y" into two object indices.
inline std::pair<std::size_t, std::size_t> pair_key(const MatCategory& c, const std::string& key) {
  const auto bar = key.find('|');
  if (bar == std::string::npos) parse_fail("hom key '" + key + "' is not of the form x|y");
  const auto x = c.find(key.substr(0, bar));
  const auto y = c.find(key.substr(bar + 1));
  if (!x || !y) parse_fail("hom key '" + key + "' names an unknown object");
  return {*x, *y};
}

inline MatCategory category_from_json(const Json& j, const Tolerance& tol = {}) {
  MatCategory c;
  const Json& objs = field(j, "objects");
  if (!objs.is_array()) parse_fail("objects must be an array");
  for (const auto& o : objs) c.add_object(text(field(o, "name"), "object name"), count(field(o, "dim"), "dim"));
  if (j.contains("homs")) {
    const Json& homs = j.at("homs");
    if (!homs.is_object()) parse_fail("homs must be an object");
    for (const auto& [key, list] : homs.items()) {
      const auto [x, y] = pair_key(c, key);
      if (!list.is_array()) parse_fail("hom " + key + " must be an array of matrices");
      std::vector<Matrix> mats;
      for (const auto& m : list) {
        mats.push_back(matrix_from_json(m));
        if (mats.back().shape() != Shape{c.dim(y), c.dim(x)}) parse_fail("hom " + key + ": wrong matrix shape");
      }
      // an orthonormal list is kept verbatim so files round-trip exactly
      bool orthonormal = true;
      for (std::size_t p = 0; p < mats.size(); ++p)
        for (std::size_t q = 0; q < mats.size(); ++q)
          orthonormal = orthonormal && std::abs(hs_inner(mats[p], mats[q]) - Complex(p == q ? 1.0 : 0.0)) <= tol.threshold(1.0);
      c.set_hom(x, y, orthonormal ? Subspace::from_orthonormal({c.dim(y), c.dim(x)}, std::move(mats))
                                  : Subspace::span(mats, Shape{c.dim(y), c.dim(x)}, tol));
    }
  }
  return c;
}

// ---- functors: {source, target, object_map:{x:y}, hom_maps:{"x|y":[matrix,...]}}

inline Json functor_to_json(const StarFunctor& f) {
  const MatCategory& a = *f.source();
  const MatCategory& b = *f.target();
  Json om = Json::object();
  for (std::size_t x = 0; x < a.size(); ++x) om[a.name(x)] = b.name(f.object(x));
  Json hm = Json::object();
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < a.size(); ++y) {
      if (f.images(x, y).empty()) continue;
      Json imgs = Json::array();
      for (const auto& m : f.images(x, y)) imgs.push_back(matrix_to_json(m));
      hm[a.pair_name(x, y)] = std::move(imgs);
    }
  return {{"source", category_to_json(a)}, {"target", category_to_json(b)}, {"object_map", om}, {"hom_maps", hm}};
}

/// A category given inline or as a path relative to `base`.
inline CategoryPtr category_ref(const Json& j, const std::filesystem::path& base, const Tolerance& tol = {}) {
  if (j.is_string()) return share(category_from_json(load(base / j.get<std::string>()), tol));
  return share(category_from_json(j, tol));
}

inline StarFunctor functor_from_json(const Json& j, const std::filesystem::path& base = ".", const Tolerance& tol = {}) {
  CategoryPtr a = category_ref(field(j, "source"), base, tol);
  CategoryPtr b = category_ref(field(j, "target"), base, tol);
  const Json& om = field(j, "object_map");
  std::vector<std::size_t> objects(a->size(), b->size());
  for (const auto& [k, v] : om.items()) {
    const auto x = a->find(k);
    const auto y = b->find(text(v, "object image"));
    if (!x || !y) parse_fail("object_map entry " + k + " names an unknown object");
    objects[*x] = *y;
  }
  for (std::size_t x = 0; x < a->size(); ++x)
    if (objects[x] == b->size()) parse_fail("object " + a->name(x) + " is not mapped");
  std::vector<std::vector<Matrix>> images(a->size() * a->size());
  if (j.contains("hom_maps"))
    for (const auto& [key, list] : j.at("hom_maps").items()) {
      const auto [x, y] = pair_key(*a, key);
      for (const auto& m : list) images[x * a->size() + y].push_back(matrix_from_json(m));
    }
  try {
    return StarFunctor(a, b, std::move(objects), std::move(images));
  } catch (const Error& e) {
    parse_fail(e.what());
  }
}

inline StarFunctor functor_ref(const Json& j, const std::filesystem::path& base, const Tolerance& tol = {}) {
  if (j.is_string()) {
    const auto path = base / j.get<std::string>();
    return functor_from_json(load(path), path.parent_path(), tol);
  }
  return functor_from_json(j, base, tol);
}

// ---- groupoids: {objects:[...], arrows:[{name,src,tgt,inv}], compose:{"g|f":"h"}}

inline Json groupoid_to_json(const FiniteCategory& g) {
  Json arrows = Json::array();
  for (std::size_t k = 0; k < g.arrows(); ++k) {
    const auto& a = g.arrow(k);
    const auto inv = g.inverse(k);
    arrows.push_back({{"name", a.name},
                      {"src", g.object_name(a.src)},
                      {"tgt", g.object_name(a.tgt)},
                      {"inv", inv ? Json(g.arrow(*inv).name) : Json(nullptr)}});
  }
  Json comp = Json::object();
  for (std::size_t f = 0; f < g.arrows(); ++f)
    for (std::size_t h = 0; h < g.arrows(); ++h)
      if (g.arrow(f).tgt == g.arrow(h).src) comp[g.arrow(h).name + "|" + g.arrow(f).name] = g.arrow(g.compose(h, f)).name;
  return {{"objects", g.object_names()}, {"arrows", arrows}, {"compose", comp}};
}

/// Identities are read off the composition table; the result is validated.
inline FiniteCategory finite_category_from_json(const Json& j) {
  FiniteCategory g;
  for (const auto& o : field(j, "objects")) g.add_object(text(o, "object"));
  auto object = [&](const Json& v) {
    const std::string n = text(v, "arrow endpoint");
    try {
      return g.object_index(n);
    } catch (const Error&) {
      parse_fail("unknown object " + n);
    }
  };
  for (const auto& a : field(j, "arrows")) g.add_arrow(text(field(a, "name"), "arrow name"), object(field(a, "src")), object(field(a, "tgt")));
  auto arrow = [&](const std::string& n) {
    if (!g.has_arrow(n)) parse_fail("unknown arrow " + n);
    return g.arrow_index(n);
  };
  for (const auto& [key, v] : field(j, "compose").items()) {
    const auto bar = key.find('|');
    if (bar == std::string::npos) parse_fail("compose key '" + key + "' is not of the form g|f");
    g.set_compose(arrow(key.substr(0, bar)), arrow(key.substr(bar + 1)), arrow(text(v, "composite")));
  }
  const auto& tab = field(j, "compose");
  auto composite = [&](std::size_t h, std::size_t f) -> std::optional<std::string> {
    const std::string key = g.arrow(h).name + "|" + g.arrow(f).name;
    if (!tab.contains(key)) return std::nullopt;
    return tab.at(key).get<std::string>();
  };
  for (std::size_t x = 0; x < g.objects(); ++x) {
    for (std::size_t e = 0; e < g.arrows(); ++e) {
      if (g.arrow(e).src != x || g.arrow(e).tgt != x) continue;
      bool unit = true;
      for (std::size_t f = 0; f < g.arrows() && unit; ++f) {
        if (g.arrow(f).tgt == x) unit = composite(e, f) == g.arrow(f).name;
        if (unit && g.arrow(f).src == x) unit = composite(f, e) == g.arrow(f).name;
      }
      if (unit) {
        g.set_identity(x, e);
        break;
      }
    }
    if (g.identity(x) == FiniteCategory::npos) parse_fail("object " + g.object_name(x) + " has no identity arrow");
  }
  try {
    g.validate();
  } catch (const Error& e) {
    parse_fail(e.what());
  }
  for (const auto& a : field(j, "arrows"))
    if (a.contains("inv") && !a.at("inv").is_null()) {
      const auto k = arrow(a.at("name").get<std::string>());
      const auto inv = g.inverse(k);
      if (!inv || g.arrow(*inv).name != text(a.at("inv"), "inv")) parse_fail("arrow " + g.arrow(k).name + ": declared inverse is wrong");
    }
  return g;
}

// ---- presented groupoids: {objects, generators:[{name,src,tgt}], relations:[{src,tgt,lhs:[{gen,inv}],rhs}]}

inline Json fp_groupoid_to_json(const FPGroupoid& p) {
  Json gens = Json::array();
  for (const auto& g : p.generators) gens.push_back({{"name", g.name}, {"src", p.objects.at(g.src)}, {"tgt", p.objects.at(g.tgt)}});
  auto path = [&](const Path& w) {
    Json out = Json::array();
    for (const auto& l : w) out.push_back({{"gen", p.generators.at(l.gen).name}, {"inv", l.inv}});
    return out;
  };
  Json rels = Json::array();
  for (const auto& r : p.relations)
    rels.push_back({{"src", p.objects.at(r.src)}, {"tgt", p.objects.at(r.tgt)}, {"lhs", path(r.lhs)}, {"rhs", path(r.rhs)}});
  return {{"objects", p.objects}, {"generators", gens}, {"relations", rels}};
}

inline FPGroupoid fp_groupoid_from_json(const Json& j) {
  FPGroupoid p;
  for (const auto& o : field(j, "objects")) p.objects.push_back(text(o, "object"));
  auto object = [&](const Json& v) {
    const std::string n = text(v, "endpoint");
    const auto it = std::find(p.objects.begin(), p.objects.end(), n);
    if (it == p.objects.end()) parse_fail("unknown object " + n);
    return static_cast<std::size_t>(it - p.objects.begin());
  };
  for (const auto& g : field(j, "generators"))
    p.generators.push_back({text(field(g, "name"), "generator name"), object(field(g, "src")), object(field(g, "tgt"))});
  auto path = [&](const Json& w) {
    Path out;
    for (const auto& l : w) {
      const std::string n = text(field(l, "gen"), "gen");
      std::size_t k = 0;
      while (k < p.generators.size() && p.generators[k].name != n) ++k;
      if (k == p.generators.size()) parse_fail("unknown generator " + n);
      out.push_back({k, l.contains("inv") && l.at("inv").get<bool>()});
    }
    return out;
  };
  if (j.contains("relations"))
    for (const auto& r : j.at("relations")) {
      FPRelation rel{0, 0, path(field(r, "lhs")), path(field(r, "rhs"))};
      if (r.contains("src")) {
        rel.src = object(r.at("src"));
      } else {
        const Path& w = rel.lhs.empty() ? rel.rhs : rel.lhs;
        if (w.empty()) parse_fail("relation between empty paths needs src");
        const auto& g = p.generators[w.front().gen];
        rel.src = w.front().inv ? g.tgt : g.src;
      }
      try {
        rel.tgt = r.contains("tgt") ? object(r.at("tgt")) : p.walk(rel.src, rel.lhs);
      } catch (const Error& e) {
        parse_fail(e.what());
      }
      p.relations.push_back(std::move(rel));
    }
  try {
    p.validate();
  } catch (const Error& e) {
    parse_fail(e.what());
  }
  return p;
}

// ---- simplicial sets: {dim_cap, simplices:{"0":[names], "1":[{name,faces,degenerate}], ...}}

inline Json sset_to_json(const FiniteSimplicialSet& k) {
  Json levels = Json::object();
  for (std::size_t n = 0; n <= k.dim_cap(); ++n) {
    Json list = Json::array();
    for (const auto& s : k.level(n)) {
      if (n == 0) {
        list.push_back(s.name);
        continue;
      }
      Json faces = Json::array();
      for (auto f : s.faces) faces.push_back(k.simplex(n - 1, f).name);
      list.push_back({{"name", s.name}, {"faces", faces}, {"degenerate", s.degenerate}});
    }
    levels[std::to_string(n)] = std::move(list);
  }
  return {{"dim_cap", k.dim_cap()}, {"simplices", levels}};
}

inline FiniteSimplicialSet sset_from_json(const Json& j) {
  const std::size_t cap = count(field(j, "dim_cap"), "dim_cap");
  FiniteSimplicialSet k(cap);
  const Json& levels = field(j, "simplices");
  for (std::size_t n = 0; n <= cap; ++n) {
    const std::string key = std::to_string(n);
    if (!levels.contains(key)) continue;
    for (const auto& s : levels.at(key)) {
      if (s.is_string()) {
        if (n != 0) parse_fail("simplex in dimension " + key + " needs faces");
        k.add(0, s.get<std::string>(), {}, false);
        continue;
      }
      std::vector<std::size_t> faces;
      if (s.contains("faces"))
        for (const auto& f : s.at("faces")) {
          if (f.is_number()) {
            faces.push_back(count(f, "face"));
            continue;
          }
          try {
            faces.push_back(k.find(n - 1, text(f, "face")));
          } catch (const Error& e) {
            parse_fail(e.what());
          }
        }
      const bool deg = s.contains("degenerate") && s.at("degenerate").get<bool>();
      k.add(n, text(field(s, "name"), "simplex name"), std::move(faces), deg);
    }
  }
  return k;
}

// ---- presentations: {objects, arrows:[{name,src,tgt}], relations:[[elem,elem]], bounds:{name:c}}

inline Json element_to_json(const FreeStarElement& e) {
  Json terms = Json::array();
  for (const auto& [w, c] : e.terms()) {
    Json word = Json::array();
    for (const auto& l : w) word.push_back({{"gen", l.gen}, {"adj", l.adj}});
    terms.push_back({{"coeff", complex_to_json(c)}, {"word", word}});
  }
  return {{"src", e.src()}, {"tgt", e.tgt()}, {"terms", terms}};
}

inline FreeStarElement element_from_json(const Quiver& q, const Json& j) {
  FreeStarElement e(text(field(j, "src"), "src"), text(field(j, "tgt"), "tgt"));
  for (const auto& t : field(j, "terms")) {
    StarWord w;
    for (const auto& l : field(t, "word")) w.push_back({text(field(l, "gen"), "gen"), l.contains("adj") && l.at("adj").get<bool>()});
    const Complex c = t.contains("coeff") ? complex_from_json(t.at("coeff")) : Complex(1.0);
    const FreeStarElement term = w.empty() ? c * FreeStarElement::identity(e.src()) : FreeStarElement::word(q, w, c);
    e = e + term;
  }
  return e;
}

inline Json presentation_to_json(const Presentation& p) {
  Json arrows = Json::array();
  for (const auto& a : p.quiver.arrows) arrows.push_back({{"name", a.name}, {"src", a.src}, {"tgt", a.tgt}});
  Json rels = Json::array();
  for (const auto& r : p.relations) rels.push_back(Json::array({element_to_json(r.lhs), element_to_json(r.rhs)}));
  Json bounds = Json::object();
  for (const auto& [k, v] : p.bounds) bounds[k] = v;
  return {{"objects", p.quiver.objects}, {"arrows", arrows}, {"relations", rels}, {"bounds", bounds}};
}

inline Presentation presentation_from_json(const Json& j) {
  Presentation p;
  for (const auto& o : field(j, "objects")) p.quiver.objects.push_back(text(o, "object"));
  for (const auto& a : field(j, "arrows"))
    p.quiver.arrows.push_back({text(field(a, "name"), "name"), text(field(a, "src"), "src"), text(field(a, "tgt"), "tgt")});
  try {
    p.quiver.validate();
    if (j.contains("relations"))
      for (const auto& r : j.at("relations")) {
        if (!r.is_array() || r.size() != 2) parse_fail("relation must be a pair of elements");
        p.relations.push_back({element_from_json(p.quiver, r[0]), element_from_json(p.quiver, r[1])});
      }
    if (j.contains("bounds"))
      for (const auto& [k, v] : j.at("bounds").items()) p.bounds[k] = number(v, "bound");
    p.validate();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    parse_fail(e.what());
  }
  return p;
}

// ---- lifting squares: {top, left, right, bottom} or {x, v, F, y?}

inline LiftingSquare square_from_json(const Json& j, const std::filesystem::path& base, const Tolerance& tol = {}) {
  return {functor_ref(field(j, "top"), base, tol), functor_ref(field(j, "left"), base, tol),
          functor_ref(field(j, "right"), base, tol), functor_ref(field(j, "bottom"), base, tol)};
}

struct GeneratorSquare {
  StarFunctor functor;
  std::size_t x = 0;
  Matrix v;
  std::size_t y = 0;
};

/// Without "y" the end point is the first object whose hom from F(x) holds v.
inline GeneratorSquare generator_square_from_json(const Json& j, const std::filesystem::path& base, const Tolerance& tol = {}) {
  GeneratorSquare g;
  g.functor = functor_ref(field(j, "F"), base, tol);
  const auto x = g.functor.source()->find(text(field(j, "x"), "x"));
  if (!x) parse_fail("unknown object x");
  g.x = *x;
  g.v = matrix_from_json(field(j, "v"));
  const MatCategory& b = *g.functor.target();
  if (j.contains("y")) {
    const auto y = b.find(text(j.at("y"), "y"));
    if (!y) parse_fail("unknown object y");
    g.y = *y;
    return g;
  }
  const std::size_t fx = g.functor.object(g.x);
  for (std::size_t y = 0; y < b.size(); ++y)
    if (g.v.shape() == Shape{b.dim(y), b.dim(fx)} && b.hom(fx, y).contains(g.v, tol)) {
      g.y = y;
      return g;
    }
  parse_fail("v lies in no hom out of F(x)");
}

// ---- reports: {command, status, checks:[{name,status,residual,witness}], seconds?}

inline Json report_to_json(const RunReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"residual", c.residual}, {"witness", c.witness}});
  Json out = {{"command", r.command}, {"status", to_string(r.status())}, {"checks", checks}};
  if (r.seconds) out["seconds"] = *r.seconds;
  return out;
}

}  // namespace ucstar::io
