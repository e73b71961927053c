#pragma once

// JSON file formats. Every reader is strict: unknown fields are rejected, and
// an optional "v" field must equal 1. Writers always emit "v":1.

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "catkit/algebra.hpp"
#include "catkit/fincat.hpp"
#include "catkit/homotopy.hpp"
#include "catkit/modelcat.hpp"
#include "catkit/setcalc.hpp"
#include "catkit/simplicial.hpp"

namespace catkit::io {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline void check_fields(const json& j, const std::set<std::string>& allowed, const std::set<std::string>& required,
                         const std::string& what) {
  if (!j.is_object()) fail(ErrorKind::Schema, what + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "v") {
      if (!value.is_number_integer() || value.get<int>() != kSchemaVersion)
        fail(ErrorKind::Schema, what + ": unsupported schema version");
      continue;
    }
    if (!allowed.count(key)) fail(ErrorKind::Schema, what + ": unknown field '" + key + "'");
  }
  for (const auto& key : required)
    if (!j.contains(key)) fail(ErrorKind::Schema, what + ": missing field '" + key + "'");
}

inline std::string str(const json& j, const std::string& what) {
  if (!j.is_string()) fail(ErrorKind::Schema, what + " must be a string");
  return j.get<std::string>();
}

inline std::vector<std::string> strings(const json& j, const std::string& what) {
  if (!j.is_array()) fail(ErrorKind::Schema, what + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(str(e, what));
  return out;
}

inline std::vector<std::vector<std::string>> string_matrix(const json& j, const std::string& what) {
  if (!j.is_array()) fail(ErrorKind::Schema, what + " must be an array of arrays");
  std::vector<std::vector<std::string>> out;
  for (const auto& row : j) out.push_back(strings(row, what));
  return out;
}

inline std::map<std::string, std::string> string_map(const json& j, const std::string& what) {
  if (!j.is_object()) fail(ErrorKind::Schema, what + " must be an object of strings");
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : j.items()) out[k] = str(v, what);
  return out;
}

inline std::vector<std::size_t> function_table(const json& j, const FinSet& source, const FinSet& target,
                                               const std::string& what) {
  auto m = string_map(j, what);
  std::vector<std::size_t> out;
  for (const auto& e : source.elements()) {
    auto it = m.find(e);
    if (it == m.end()) fail(ErrorKind::Schema, what + ": no image for '" + e + "'");
    auto t = target.find(it->second);
    if (!t) fail(ErrorKind::Schema, what + ": '" + it->second + "' is not in the target");
    out.push_back(*t);
  }
  if (m.size() != source.size()) fail(ErrorKind::Schema, what + ": images listed for unknown elements");
  return out;
}

inline json function_json(const FinSet& source, const FinSet& target, const std::vector<std::size_t>& map) {
  json j = json::object();
  for (std::size_t i = 0; i < source.size(); ++i) j[source[i]] = target[map[i]];
  return j;
}

}  // namespace detail

inline json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::Schema, std::string("malformed JSON: ") + e.what());
  }
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Schema, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

// ---------------------------------------------------------------------------
// Categories and functors

inline FinCategory read_category(const json& j) {
  detail::check_fields(j, {"objects", "morphisms", "compose"}, {"objects"}, "category");
  RawCategory raw;
  raw.objects = detail::strings(j["objects"], "objects");
  if (j.contains("morphisms")) {
    if (!j["morphisms"].is_array()) fail(ErrorKind::Schema, "morphisms must be an array");
    for (const auto& m : j["morphisms"]) {
      detail::check_fields(m, {"name", "src", "dst"}, {"name", "src", "dst"}, "morphism");
      raw.morphisms.push_back({detail::str(m["name"], "name"), detail::str(m["src"], "src"), detail::str(m["dst"], "dst")});
    }
  }
  if (j.contains("compose"))
    for (const auto& t : detail::string_matrix(j["compose"], "compose")) {
      if (t.size() != 3) fail(ErrorKind::Schema, "compose entries are [g, f, g∘f]");
      raw.compose.push_back({t[0], t[1], t[2]});
    }
  return validate_category(raw);
}

inline json category_json(const FinCategory& c) {
  RawCategory raw = serialize(c);
  json j;
  j["v"] = kSchemaVersion;
  j["objects"] = raw.objects;
  j["morphisms"] = json::array();
  for (const auto& m : raw.morphisms) j["morphisms"].push_back({{"name", m.name}, {"src", m.src}, {"dst", m.dst}});
  j["compose"] = json::array();
  for (const auto& t : raw.compose) j["compose"].push_back({t.g, t.f, t.h});
  return j;
}

/// {"source": cat, "target": cat, "objects": {X: Y}, "morphisms": {f: g}};
/// identities are implied.
inline FinFunctor read_functor(const json& j) {
  detail::check_fields(j, {"source", "target", "objects", "morphisms"}, {"source", "target", "objects"}, "functor");
  auto c = share(read_category(j["source"]));
  auto d = share(read_category(j["target"]));
  FinFunctor f{c, d, {}, std::vector<MorId>(c->morphism_count(), kNone)};
  auto objs = detail::string_map(j["objects"], "functor objects");
  for (ObjId x = 0; x < c->object_count(); ++x) {
    auto it = objs.find(c->object_name(x));
    if (it == objs.end()) fail(ErrorKind::Schema, "functor: no image for object '" + c->object_name(x) + "'");
    f.on_objects.push_back(d->object_id(it->second));
  }
  std::map<std::string, std::string> mors;
  if (j.contains("morphisms")) mors = detail::string_map(j["morphisms"], "functor morphisms");
  for (MorId m = 0; m < c->morphism_count(); ++m) {
    if (c->is_identity(m)) {
      f.on_morphisms[m] = d->identity(f.on_objects[c->src(m)]);
      continue;
    }
    auto it = mors.find(c->morphism(m).name);
    if (it == mors.end()) fail(ErrorKind::Schema, "functor: no image for morphism '" + c->morphism(m).name + "'");
    f.on_morphisms[m] = d->morphism_id(it->second);
  }
  validate_functor(f);
  return f;
}

inline json functor_json(const FinFunctor& f) {
  json j;
  j["v"] = kSchemaVersion;
  j["source"] = category_json(*f.source);
  j["target"] = category_json(*f.target);
  j["objects"] = json::object();
  for (ObjId x = 0; x < f.source->object_count(); ++x)
    j["objects"][f.source->object_name(x)] = f.target->object_name(f(x));
  j["morphisms"] = json::object();
  for (MorId m = 0; m < f.source->morphism_count(); ++m)
    if (!f.source->is_identity(m)) j["morphisms"][f.source->morphism(m).name] = f.target->morphism(f.map(m)).name;
  return j;
}

// ---------------------------------------------------------------------------
// Diagrams and bifunctors

/// {"shape": cat, "sets": {X: [...]}, "functions": {f: {e: e'}}}. The shape
/// may be supplied by the caller instead.
inline Diagram read_diagram(const json& j, CategoryRef shape = nullptr) {
  detail::check_fields(j, {"shape", "sets", "functions"}, {"sets"}, "diagram");
  if (j.contains("shape")) shape = share(read_category(j["shape"]));
  if (!shape) fail(ErrorKind::Schema, "diagram: missing field 'shape'");
  if (!j["sets"].is_object()) fail(ErrorKind::Schema, "diagram sets must be an object");
  Diagram d{shape, {}, {}};
  for (ObjId x = 0; x < shape->object_count(); ++x) {
    const auto& name = shape->object_name(x);
    if (!j["sets"].contains(name)) fail(ErrorKind::Schema, "diagram: no set for object '" + name + "'");
    d.sets.emplace_back(name, detail::strings(j["sets"][name], "set"));
  }
  if (j["sets"].size() != shape->object_count()) fail(ErrorKind::Schema, "diagram: sets for unknown objects");
  json fns = j.contains("functions") ? j["functions"] : json::object();
  if (!fns.is_object()) fail(ErrorKind::Schema, "diagram functions must be an object");
  std::size_t used = 0;
  for (MorId m = 0; m < shape->morphism_count(); ++m) {
    const auto& mor = shape->morphism(m);
    if (shape->is_identity(m)) {
      d.arrows.push_back(catkit::detail::identity_map(d.sets[mor.src].size()));
      continue;
    }
    if (!fns.contains(mor.name)) fail(ErrorKind::Schema, "diagram: no function for '" + mor.name + "'");
    ++used;
    d.arrows.push_back(detail::function_table(fns[mor.name], d.sets[mor.src], d.sets[mor.dst], "function " + mor.name));
  }
  if (used != fns.size()) fail(ErrorKind::Schema, "diagram: functions for unknown morphisms");
  validate_diagram(d);
  return d;
}

inline json set_json(const FinSet& s) { return s.elements(); }

inline json diagram_json(const Diagram& d, bool with_shape = true) {
  json j;
  j["v"] = kSchemaVersion;
  if (with_shape) j["shape"] = category_json(*d.shape);
  j["sets"] = json::object();
  for (ObjId x = 0; x < d.shape->object_count(); ++x) j["sets"][d.shape->object_name(x)] = set_json(d.sets[x]);
  j["functions"] = json::object();
  for (MorId m = 0; m < d.shape->morphism_count(); ++m) {
    if (d.shape->is_identity(m)) continue;
    const auto& mor = d.shape->morphism(m);
    j["functions"][mor.name] = detail::function_json(d.sets[mor.src], d.sets[mor.dst], d.arrows[m]);
  }
  return j;
}

/// {"category": cat, "sets": {"X,Y": [...]}, "left": {"f|Y": {...}},
/// "right": {"X|g": {...}}}; left[f|Y] is H(f, Y), right[X|g] is H(X, g).
inline Bifunctor read_bifunctor(const json& j) {
  detail::check_fields(j, {"category", "sets", "left", "right"}, {"category", "sets"}, "bifunctor");
  auto c = share(read_category(j["category"]));
  const FinCategory& C = *c;
  const std::size_t n = C.object_count(), m = C.morphism_count();
  if (!j["sets"].is_object()) fail(ErrorKind::Schema, "bifunctor sets must be an object");
  std::vector<FinSet> sets;
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y) {
      std::string key = C.object_name(x) + "," + C.object_name(y);
      if (!j["sets"].contains(key)) fail(ErrorKind::Schema, "bifunctor: no set for '" + key + "'");
      sets.emplace_back("H(" + key + ")", detail::strings(j["sets"][key], "set"));
    }
  json left = j.contains("left") ? j["left"] : json::object();
  json right = j.contains("right") ? j["right"] : json::object();
  std::vector<std::vector<std::size_t>> l(m * n), r(n * m);
  for (MorId f = 0; f < m; ++f)
    for (ObjId y = 0; y < n; ++y) {
      const FinSet& from = sets[C.dst(f) * n + y];
      const FinSet& to = sets[C.src(f) * n + y];
      if (C.is_identity(f)) {
        l[f * n + y] = catkit::detail::identity_map(from.size());
        continue;
      }
      std::string key = C.morphism(f).name + "|" + C.object_name(y);
      if (!left.contains(key)) fail(ErrorKind::Schema, "bifunctor: no left action '" + key + "'");
      l[f * n + y] = detail::function_table(left[key], from, to, "left " + key);
    }
  for (ObjId x = 0; x < n; ++x)
    for (MorId g = 0; g < m; ++g) {
      const FinSet& from = sets[x * n + C.src(g)];
      const FinSet& to = sets[x * n + C.dst(g)];
      if (C.is_identity(g)) {
        r[x * m + g] = catkit::detail::identity_map(from.size());
        continue;
      }
      std::string key = C.object_name(x) + "|" + C.morphism(g).name;
      if (!right.contains(key)) fail(ErrorKind::Schema, "bifunctor: no right action '" + key + "'");
      r[x * m + g] = detail::function_table(right[key], from, to, "right " + key);
    }
  return make_bifunctor(c, std::move(sets), l, r);
}

// ---------------------------------------------------------------------------
// Simplicial sets

/// {"dim": N, "cells": {"0": [...], ...}, "faces": {cell: ["s0 v", ...]}}
inline SimplicialSet read_simplicial_set(const json& j) {
  detail::check_fields(j, {"dim", "cells", "faces"}, {"dim", "cells"}, "simplicial set");
  if (!j["dim"].is_number_integer() || j["dim"].get<int>() < 0)
    fail(ErrorKind::Schema, "dim must be a nonnegative integer");
  const int N = j["dim"].get<int>();
  if (!j["cells"].is_object()) fail(ErrorKind::Schema, "cells must be an object");
  std::vector<std::vector<std::string>> names(static_cast<std::size_t>(N) + 1);
  for (const auto& [key, value] : j["cells"].items()) {
    int d = -1;
    try {
      std::size_t pos = 0;
      d = std::stoi(key, &pos);
      if (pos != key.size()) d = -1;
    } catch (const std::exception&) {
      d = -1;
    }
    if (d < 0 || d > N) fail(ErrorKind::Schema, "cells key '" + key + "' is not a dimension in 0.." + std::to_string(N));
    names[static_cast<std::size_t>(d)] = detail::strings(value, "cells");
  }
  json faces = j.contains("faces") ? j["faces"] : json::object();
  if (!faces.is_object()) fail(ErrorKind::Schema, "faces must be an object");
  // Parse faces dimension by dimension through a partial complex.
  std::map<std::string, std::pair<int, std::size_t>> where;
  for (int d = 0; d <= N; ++d)
    for (std::size_t i = 0; i < names[static_cast<std::size_t>(d)].size(); ++i)
      where.emplace(names[static_cast<std::size_t>(d)][i], std::make_pair(d, i));
  for (const auto& [key, value] : faces.items())
    if (!where.count(key)) fail(ErrorKind::Schema, "faces listed for unknown cell '" + key + "'");
  std::vector<std::vector<std::vector<CellRef>>> face_refs(static_cast<std::size_t>(N) + 1);
  SimplicialSet partial;
  for (int d = 0; d <= N; ++d) {
    auto ud = static_cast<std::size_t>(d);
    for (const auto& name : names[ud]) {
      std::vector<CellRef> refs;
      if (d > 0) {
        if (!faces.contains(name)) fail(ErrorKind::Schema, "no faces for cell '" + name + "'");
        for (const auto& text : detail::strings(faces[name], "faces")) refs.push_back(partial.parse(text));
      } else if (faces.contains(name) && !faces[name].empty()) {
        fail(ErrorKind::Schema, "vertex '" + name + "' cannot have faces");
      }
      face_refs[ud].push_back(std::move(refs));
    }
    std::vector<std::vector<std::string>> so_far(names.begin(), names.begin() + d + 1);
    std::vector<std::vector<std::vector<CellRef>>> faces_so_far(face_refs.begin(), face_refs.begin() + d + 1);
    partial = SimplicialSet::make(d, std::move(so_far), std::move(faces_so_far));
  }
  return SimplicialSet::make(N, std::move(names), std::move(face_refs));
}

inline json simplicial_set_json(const SimplicialSet& x) {
  json j;
  j["v"] = kSchemaVersion;
  j["dim"] = x.max_dim();
  j["cells"] = json::object();
  for (int d = 0; d <= x.max_dim(); ++d) j["cells"][std::to_string(d)] = x.names(d);
  j["faces"] = json::object();
  for (int d = 1; d <= x.max_dim(); ++d)
    for (std::size_t i = 0; i < x.count(d); ++i) {
      json fs = json::array();
      for (const CellRef& r : x.faces(d, i)) fs.push_back(x.format(r));
      j["faces"][x.name(d, i)] = fs;
    }
  return j;
}

inline json simplicial_map_json(const SimplicialMap& f) {
  json j = json::object();
  for (int d = 0; d <= f.source->max_dim(); ++d)
    for (std::size_t i = 0; i < f.source->count(d); ++i)
      j[f.source->name(d, i)] = f.target->format(f.images[static_cast<std::size_t>(d)][i]);
  return j;
}

// ---------------------------------------------------------------------------
// Group presentations

inline Letter parse_letter(const std::vector<std::string>& gens, const std::string& token) {
  auto index = [&](const std::string& g) -> std::optional<std::size_t> {
    auto it = std::find(gens.begin(), gens.end(), g);
    if (it == gens.end()) return std::nullopt;
    return static_cast<std::size_t>(it - gens.begin());
  };
  const std::string suffix = "^-1";
  if (token.size() > suffix.size() && token.compare(token.size() - suffix.size(), suffix.size(), suffix) == 0) {
    if (auto i = index(token.substr(0, token.size() - suffix.size()))) return Letter{*i, true};
  }
  if (auto i = index(token)) return Letter{*i, false};
  // uppercase spelling of a generator means its inverse
  std::string lower = token;
  for (char& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (lower != token)
    if (auto i = index(lower)) return Letter{*i, true};
  fail(ErrorKind::Schema, "unknown generator '" + token + "'");
}

inline Word parse_word(const std::vector<std::string>& gens, const json& j) {
  Word w;
  for (const auto& t : detail::strings(j, "word")) w.push_back(parse_letter(gens, t));
  return w;
}

/// {"gens": [...], "rels": [["a", "a", "B"], ...]}
inline GroupPresentation read_presentation(const json& j) {
  detail::check_fields(j, {"gens", "rels"}, {"gens"}, "presentation");
  GroupPresentation p;
  p.generators = detail::strings(j["gens"], "gens");
  if (j.contains("rels")) {
    if (!j["rels"].is_array()) fail(ErrorKind::Schema, "rels must be an array of words");
    for (const auto& r : j["rels"]) p.relators.push_back(parse_word(p.generators, r));
  }
  validate_presentation(p);
  return p;
}

inline json word_json(const GroupPresentation& p, const Word& w) {
  json j = json::array();
  for (const Letter& l : w) j.push_back(p.generators[l.gen] + (l.inv ? "^-1" : ""));
  return j;
}

inline json presentation_json(const GroupPresentation& p) {
  json j;
  j["v"] = kSchemaVersion;
  j["gens"] = p.generators;
  j["rels"] = json::array();
  for (const auto& r : p.relators) j["rels"].push_back(word_json(p, r));
  return j;
}

inline GroupHomSpec read_hom(const GroupPresentation& source, const GroupPresentation& target, const json& j,
                             const std::string& what) {
  if (!j.is_object()) fail(ErrorKind::Schema, what + " must map generators to words");
  GroupHomSpec h{source, target, {}};
  for (const auto& g : source.generators) {
    if (!j.contains(g)) fail(ErrorKind::Schema, what + ": no image for '" + g + "'");
    h.images.push_back(parse_word(target.generators, j[g]));
  }
  if (j.size() != source.generators.size()) fail(ErrorKind::Schema, what + ": images for unknown generators");
  return h;
}

struct SvkInput {
  GroupHomSpec phi1, phi2;
};

/// {"p0": P, "p1": P, "p2": P, "phi1": {g: word}, "phi2": {g: word}}
inline SvkInput read_svk(const json& j) {
  detail::check_fields(j, {"p0", "p1", "p2", "phi1", "phi2"}, {"p0", "p1", "p2", "phi1", "phi2"}, "svk");
  auto p0 = read_presentation(j["p0"]), p1 = read_presentation(j["p1"]), p2 = read_presentation(j["p2"]);
  return {read_hom(p0, p1, j["phi1"], "phi1"), read_hom(p0, p2, j["phi2"], "phi2")};
}

// ---------------------------------------------------------------------------
// Monoids, actions, models

/// {"elements": [...], "table": [[...]], "unit": "e"}
inline RawMonoid read_monoid(const json& j) {
  detail::check_fields(j, {"elements", "table", "unit"}, {"elements", "table"}, "monoid");
  RawMonoid m;
  m.elements = detail::strings(j["elements"], "elements");
  m.table = detail::string_matrix(j["table"], "table");
  if (j.contains("unit")) m.unit = detail::str(j["unit"], "unit");
  return m;
}

/// {"monoid": M, "space": [...], "act": [[...]]}
inline RawAction read_action(const json& j) {
  detail::check_fields(j, {"monoid", "space", "act"}, {"monoid", "space", "act"}, "action");
  RawAction a;
  a.monoid = read_monoid(j["monoid"]);
  a.space = detail::strings(j["space"], "space");
  a.act = detail::string_matrix(j["act"], "act");
  return a;
}

/// {"category": C, "weq": [...], "fib": [...], "cof": [...]}; identities may
/// be omitted from the lists and are always added.
inline ModelData read_model(const json& j) {
  detail::check_fields(j, {"category", "weq", "fib", "cof"}, {"category", "weq", "fib", "cof"}, "model");
  auto c = share(read_category(j["category"]));
  auto cls = [&](const char* key) {
    MorphismClass k = class_of(*c, detail::strings(j[key], key));
    for (ObjId x = 0; x < c->object_count(); ++x) k[c->identity(x)] = true;
    return k;
  };
  return ModelData{c, cls("weq"), cls("fib"), cls("cof")};
}

inline json partition_json(const Partition& p, const std::vector<std::string>& names) {
  json j = json::array();
  for (const auto& block : p) {
    json b = json::array();
    for (auto i : block) b.push_back(names[i]);
    j.push_back(b);
  }
  return j;
}

}  // namespace catkit::io
