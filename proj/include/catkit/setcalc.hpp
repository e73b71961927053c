#pragma once

// Limits and colimits of finite-set diagrams built from products and
// equalizers (dually coproducts and coequalizers), ends and coends, and
// pointwise Kan extensions.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "catkit/error.hpp"
#include "catkit/fincat.hpp"
#include "catkit/sets.hpp"

namespace catkit {

/// Apex plus one leg per shape object. For limits the legs leave the apex;
/// for colimits they enter it.
struct ConeResult {
  FinSet apex;
  std::vector<FinFunction> legs;
};

namespace detail {

inline std::string tuple_name(const std::vector<std::string>& parts) {
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += parts[i];
  }
  return s + ")";
}

/// Visits every tuple of the mixed-radix product in lexicographic order
/// (first coordinate slowest).
inline void for_each_tuple(const std::vector<std::size_t>& sizes,
                           const std::function<void(const std::vector<std::size_t>&)>& visit) {
  for (std::size_t s : sizes)
    if (s == 0) return;
  std::vector<std::size_t> t(sizes.size(), 0);
  while (true) {
    visit(t);
    std::size_t i = sizes.size();
    while (i > 0) {
      --i;
      if (++t[i] < sizes[i]) break;
      t[i] = 0;
      if (i == 0) return;
    }
    if (sizes.empty()) return;
  }
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

inline bool same_set(const FinSet& a, const FinSet& b) { return a.elements() == b.elements(); }

}  // namespace detail

/// Cartesian product with coordinate projections. The empty product is the
/// one-element terminal set {()}.
inline ConeResult product(const std::vector<FinSet>& sets) {
  std::vector<std::size_t> sizes;
  std::string name;
  for (const auto& s : sets) {
    sizes.push_back(s.size());
    name += (name.empty() ? "" : "×") + s.name();
  }
  std::vector<std::string> elements;
  std::vector<std::vector<std::size_t>> proj(sets.size());
  detail::for_each_tuple(sizes, [&](const std::vector<std::size_t>& t) {
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < t.size(); ++i) {
      parts.push_back(sets[i][t[i]]);
      proj[i].push_back(t[i]);
    }
    elements.push_back(detail::tuple_name(parts));
  });
  ConeResult r{FinSet(name.empty() ? "1" : name, std::move(elements)), {}};
  for (std::size_t i = 0; i < sets.size(); ++i) r.legs.push_back({r.apex, sets[i], proj[i]});
  return r;
}

/// Disjoint union with injections; elements are tagged "<set name>:<element>".
inline ConeResult coproduct(const std::vector<FinSet>& sets) {
  std::vector<std::string> elements;
  std::vector<std::vector<std::size_t>> inj(sets.size());
  std::string name;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    name += (name.empty() ? "" : "+") + sets[i].name();
    for (const auto& e : sets[i].elements()) {
      inj[i].push_back(elements.size());
      elements.push_back(sets[i].name() + ":" + e);
    }
  }
  ConeResult r{FinSet(name.empty() ? "0" : name, std::move(elements)), {}};
  for (std::size_t i = 0; i < sets.size(); ++i) r.legs.push_back({sets[i], r.apex, inj[i]});
  return r;
}

/// {x : f(x) = g(x)} with its inclusion.
inline ConeResult equalizer(const FinFunction& f, const FinFunction& g) {
  if (!detail::same_set(f.source, g.source) || !detail::same_set(f.target, g.target))
    fail(ErrorKind::EndpointMismatch, "equalizer needs parallel functions");
  std::vector<std::string> elements;
  std::vector<std::size_t> incl;
  for (std::size_t x = 0; x < f.source.size(); ++x)
    if (f.map[x] == g.map[x]) {
      elements.push_back(f.source[x]);
      incl.push_back(x);
    }
  ConeResult r{FinSet("Eq", std::move(elements)), {}};
  r.legs.push_back({r.apex, f.source, incl});
  return r;
}

/// Quotient of the common target by the equivalence generated by f(a) ~ g(a).
/// Each class is named by its lexicographically least member; classes are
/// ordered by that name.
inline ConeResult coequalizer(const FinFunction& f, const FinFunction& g) {
  if (!detail::same_set(f.source, g.source) || !detail::same_set(f.target, g.target))
    fail(ErrorKind::EndpointMismatch, "coequalizer needs parallel functions");
  const FinSet& b = f.target;
  detail::UnionFind uf(b.size());
  for (std::size_t a = 0; a < f.source.size(); ++a) uf.unite(f.map[a], g.map[a]);
  std::vector<std::size_t> best(b.size(), kNone);
  for (std::size_t x = 0; x < b.size(); ++x) {
    std::size_t r = uf.find(x);
    if (best[r] == kNone || b[x] < b[best[r]]) best[r] = x;
  }
  std::vector<std::size_t> reps;
  for (std::size_t x = 0; x < b.size(); ++x)
    if (uf.find(x) == x) reps.push_back(best[x]);
  std::sort(reps.begin(), reps.end(), [&](std::size_t p, std::size_t q) { return b[p] < b[q]; });
  std::vector<std::size_t> class_index(b.size(), kNone);
  std::vector<std::string> elements;
  for (std::size_t k = 0; k < reps.size(); ++k) {
    class_index[uf.find(reps[k])] = k;
    elements.push_back(b[reps[k]]);
  }
  std::vector<std::size_t> quotient;
  for (std::size_t x = 0; x < b.size(); ++x) quotient.push_back(class_index[uf.find(x)]);
  ConeResult r{FinSet("Coeq", std::move(elements)), {}};
  r.legs.push_back({b, r.apex, quotient});
  return r;
}

/// Limit as the equalizer of the two maps ∏_Y F(Y) ⇉ ∏_{f:Y→Z} F(Z),
/// (x) ↦ (F(f)(x_Y))_f and (x) ↦ (x_Z)_f.
inline ConeResult limit(const Diagram& d) {
  const FinCategory& c = *d.shape;
  ConeResult p1 = product(d.sets);
  const std::size_t m = c.morphism_count();

  // Compare the two maps into the second product coordinatewise; a tuple
  // lies in the equalizer exactly when every coordinate agrees.
  std::vector<std::size_t> kept;
  for (std::size_t t = 0; t < p1.apex.size(); ++t) {
    bool equal = true;
    for (MorId f = 0; f < m && equal; ++f) {
      std::size_t s_coord = d.arrows[f][p1.legs[c.src(f)].map[t]];
      std::size_t t_coord = p1.legs[c.dst(f)].map[t];
      equal = s_coord == t_coord;
    }
    if (equal) kept.push_back(t);
  }
  std::vector<std::string> elements;
  for (std::size_t t : kept) elements.push_back(p1.apex[t]);
  ConeResult r{FinSet("lim", std::move(elements)), {}};
  for (ObjId y = 0; y < c.object_count(); ++y) {
    std::vector<std::size_t> leg;
    for (std::size_t t : kept) leg.push_back(p1.legs[y].map[t]);
    r.legs.push_back({r.apex, d.sets[y], std::move(leg)});
  }
  return r;
}

/// Colimit as the coequalizer of ∐_{f:Y→Z} F(Y) ⇉ ∐_Y F(Y).
inline ConeResult colimit(const Diagram& d) {
  const FinCategory& c = *d.shape;
  std::vector<FinSet> tagged;
  for (ObjId y = 0; y < c.object_count(); ++y)
    tagged.emplace_back(c.object_name(y), d.sets[y].elements());
  ConeResult sum = coproduct(tagged);

  std::vector<std::string> arrow_elements;
  std::vector<std::size_t> via_source, via_arrow;
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    ObjId y = c.src(f), z = c.dst(f);
    for (std::size_t x = 0; x < d.sets[y].size(); ++x) {
      arrow_elements.push_back(c.morphism(f).name + ":" + d.sets[y][x]);
      via_source.push_back(sum.legs[y].map[x]);
      via_arrow.push_back(sum.legs[z].map[d.arrows[f][x]]);
    }
  }
  FinSet arrows_sum("arrows", std::move(arrow_elements));
  ConeResult q = coequalizer({arrows_sum, sum.apex, via_source}, {arrows_sum, sum.apex, via_arrow});
  ConeResult r{FinSet("colim", q.apex.elements()), {}};
  for (ObjId y = 0; y < c.object_count(); ++y) {
    std::vector<std::size_t> leg;
    for (std::size_t x = 0; x < d.sets[y].size(); ++x) leg.push_back(q.legs[0].map[sum.legs[y].map[x]]);
    r.legs.push_back({d.sets[y], r.apex, std::move(leg)});
  }
  return r;
}

namespace detail {

/// A → C ← B with objects named A, B, C and arrows f, g.
inline CategoryRef cospan_shape() {
  static const CategoryRef shape =
      share(validate_category(RawCategory{{"A", "B", "C"}, {{"f", "A", "C"}, {"g", "B", "C"}}, {}}));
  return shape;
}

/// B ← A → C with arrows f, g.
inline CategoryRef span_shape() {
  static const CategoryRef shape =
      share(validate_category(RawCategory{{"A", "B", "C"}, {{"f", "A", "B"}, {"g", "A", "C"}}, {}}));
  return shape;
}

inline std::vector<std::size_t> identity_map(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

}  // namespace detail

/// Pullback of f: A→C and g: B→C as the limit over the cospan shape.
/// Legs are ordered A, B, C; apex elements are named by their (a,b) pair.
inline ConeResult pullback(const FinFunction& f, const FinFunction& g) {
  if (!detail::same_set(f.target, g.target))
    fail(ErrorKind::EndpointMismatch, "pullback needs a common target");
  CategoryRef shape = detail::cospan_shape();
  Diagram d{shape, {f.source, g.source, f.target}, {}};
  d.arrows.resize(shape->morphism_count());
  for (ObjId x = 0; x < 3; ++x) d.arrows[shape->identity(x)] = detail::identity_map(d.sets[x].size());
  d.arrows[shape->morphism_id("f")] = f.map;
  d.arrows[shape->morphism_id("g")] = g.map;
  ConeResult r = limit(d);
  std::vector<std::string> names;
  for (std::size_t t = 0; t < r.apex.size(); ++t)
    names.push_back(detail::tuple_name({f.source[r.legs[0].map[t]], g.source[r.legs[1].map[t]]}));
  FinSet apex("pullback", std::move(names));
  for (auto& leg : r.legs) leg.source = apex;
  r.apex = apex;
  return r;
}

/// Pushout of f: A→B and g: A→C as the colimit over the span shape.
/// Legs are ordered A, B, C.
inline ConeResult pushout(const FinFunction& f, const FinFunction& g) {
  if (!detail::same_set(f.source, g.source))
    fail(ErrorKind::EndpointMismatch, "pushout needs a common source");
  CategoryRef shape = detail::span_shape();
  Diagram d{shape, {f.source, f.target, g.target}, {}};
  d.arrows.resize(shape->morphism_count());
  for (ObjId x = 0; x < 3; ++x) d.arrows[shape->identity(x)] = detail::identity_map(d.sets[x].size());
  d.arrows[shape->morphism_id("f")] = f.map;
  d.arrows[shape->morphism_id("g")] = g.map;
  return colimit(d);
}

// ---------------------------------------------------------------------------
// Bifunctors, ends and coends

/// Set-valued functor on C^op × C, stored as a diagram over
/// product_category(opposite(C), C).
struct Bifunctor {
  CategoryRef base;
  Diagram diagram;

  [[nodiscard]] const FinSet& at(ObjId x, ObjId y) const {
    return diagram.sets[pair_object(*base, x, y)];
  }
  /// H(f, id_y): H(cod f, y) → H(dom f, y)
  [[nodiscard]] std::size_t left(MorId f, ObjId y, std::size_t e) const {
    return diagram.arrows[pair_morphism(*base, f, base->identity(y))][e];
  }
  /// H(id_x, g): H(x, dom g) → H(x, cod g)
  [[nodiscard]] std::size_t right(ObjId x, MorId g, std::size_t e) const {
    return diagram.arrows[pair_morphism(*base, base->identity(x), g)][e];
  }
};

inline CategoryRef twisted_shape(const FinCategory& c) {
  return share(product_category(opposite(c), c));
}

/// Assembles a bifunctor from its one-sided actions. `sets[x * n + y]` is
/// H(x, y); `left[f * n + y]` is H(f, id_y) and `right[x * m + g]` is
/// H(id_x, g). The two actions must commute; that is checked.
inline Bifunctor make_bifunctor(const CategoryRef& base, std::vector<FinSet> sets,
                                const std::vector<std::vector<std::size_t>>& left,
                                const std::vector<std::vector<std::size_t>>& right,
                                CategoryRef shape = nullptr) {
  const FinCategory& c = *base;
  const std::size_t n = c.object_count(), m = c.morphism_count();
  if (!shape) shape = twisted_shape(c);
  Bifunctor h{base, Diagram{shape, std::move(sets), {}}};
  h.diagram.arrows.resize(m * m);
  for (MorId f = 0; f < m; ++f)
    for (MorId g = 0; g < m; ++g) {
      // (f, g) = (f, id_{cod g}) ∘ (id_{cod f}, g)
      const auto& r = right.at(c.dst(f) * m + g);
      const auto& l = left.at(f * n + c.dst(g));
      std::vector<std::size_t> a;
      a.reserve(r.size());
      for (std::size_t e : r) a.push_back(l.at(e));
      h.diagram.arrows[pair_morphism(c, f, g)] = std::move(a);
    }
  validate_diagram(h.diagram);
  return h;
}

/// Families of the end together with their apex.
struct EndResult {
  FinSet apex;
  std::vector<std::vector<std::size_t>> families;  // per apex element, x_X ∈ H(X,X) for each X
};

/// End as the equalizer of ∏_X H(X,X) ⇉ ∏_{f:X→Y} H(X,Y) with the maps
/// x ↦ H(id_X, f)(x_X) and x ↦ H(f, id_Y)(x_Y).
inline EndResult end_families(const Bifunctor& h) {
  const FinCategory& c = *h.base;
  std::vector<std::size_t> sizes;
  for (ObjId x = 0; x < c.object_count(); ++x) sizes.push_back(h.at(x, x).size());
  EndResult r;
  std::vector<std::string> names;
  detail::for_each_tuple(sizes, [&](const std::vector<std::size_t>& t) {
    for (MorId f = 0; f < c.morphism_count(); ++f) {
      ObjId x = c.src(f), y = c.dst(f);
      if (h.right(x, f, t[x]) != h.left(f, y, t[y])) return;
    }
    std::vector<std::string> parts;
    for (ObjId x = 0; x < t.size(); ++x) parts.push_back(h.at(x, x)[t[x]]);
    names.push_back(detail::tuple_name(parts));
    r.families.push_back(t);
  });
  r.apex = FinSet("end", std::move(names));
  return r;
}

inline FinSet end(const Bifunctor& h) { return end_families(h).apex; }

struct CoendResult {
  FinSet apex;
  /// class of each element of H(X,X), indexed [X][element]
  std::vector<std::vector<std::size_t>> class_of;
  /// a representative (X, element) per class
  std::vector<std::pair<ObjId, std::size_t>> representative;
};

/// Coend as the coequalizer of ∐_{f:X→Y} H(Y,X) ⇉ ∐_X H(X,X) with the maps
/// z ↦ H(f, id_X)(z) and z ↦ H(id_Y, f)(z).
inline CoendResult coend_classes(const Bifunctor& h) {
  const FinCategory& c = *h.base;
  std::vector<FinSet> diag;
  for (ObjId x = 0; x < c.object_count(); ++x) diag.emplace_back(c.object_name(x), h.at(x, x).elements());
  ConeResult sum = coproduct(diag);

  std::vector<std::string> twisted;
  std::vector<std::size_t> to_source, to_target;
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    ObjId x = c.src(f), y = c.dst(f);
    const FinSet& hyx = h.at(y, x);
    for (std::size_t z = 0; z < hyx.size(); ++z) {
      twisted.push_back(c.morphism(f).name + ":" + hyx[z]);
      to_source.push_back(sum.legs[x].map[h.left(f, x, z)]);
      to_target.push_back(sum.legs[y].map[h.right(y, f, z)]);
    }
  }
  FinSet twisted_sum("twisted", std::move(twisted));
  ConeResult q = coequalizer({twisted_sum, sum.apex, to_source}, {twisted_sum, sum.apex, to_target});

  CoendResult r;
  r.apex = FinSet("coend", q.apex.elements());
  r.representative.assign(r.apex.size(), {kNone, kNone});
  for (ObjId x = 0; x < c.object_count(); ++x) {
    r.class_of.emplace_back();
    for (std::size_t e = 0; e < h.at(x, x).size(); ++e) {
      std::size_t k = q.legs[0].map[sum.legs[x].map[e]];
      r.class_of[x].push_back(k);
      if (r.representative[k].first == kNone) r.representative[k] = {x, e};
    }
  }
  return r;
}

inline FinSet coend(const Bifunctor& h) { return coend_classes(h).apex; }

/// H(X, Y) = Mor_D(F X, G Y) for functors F, G: C → D. Its end is Nat(F, G).
inline Bifunctor hom_bifunctor(const FinFunctor& f, const FinFunctor& g) {
  if (*f.source != *g.source || *f.target != *g.target)
    fail(ErrorKind::EndpointMismatch, "functors do not share source and target");
  const FinCategory& c = *f.source;
  const FinCategory& d = *f.target;
  const std::size_t n = c.object_count(), m = c.morphism_count();
  auto pos = [&](ObjId a, ObjId b, MorId u) {
    const auto& hs = d.hom(a, b);
    return static_cast<std::size_t>(std::find(hs.begin(), hs.end(), u) - hs.begin());
  };
  std::vector<FinSet> sets;
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y) {
      std::vector<std::string> els;
      for (MorId u : d.hom(f(x), g(y))) els.push_back(d.morphism(u).name);
      sets.emplace_back("Mor(" + c.object_name(x) + "," + c.object_name(y) + ")", std::move(els));
    }
  std::vector<std::vector<std::size_t>> left(m * n), right(n * m);
  for (MorId a = 0; a < m; ++a)
    for (ObjId y = 0; y < n; ++y)
      for (MorId u : d.hom(f(c.dst(a)), g(y)))
        left[a * n + y].push_back(pos(f(c.src(a)), g(y), d.compose(u, f.map(a))));
  for (ObjId x = 0; x < n; ++x)
    for (MorId b = 0; b < m; ++b)
      for (MorId u : d.hom(f(x), g(c.src(b))))
        right[x * m + b].push_back(pos(f(x), g(c.dst(b)), d.compose(g.map(b), u)));
  return make_bifunctor(f.source, std::move(sets), left, right);
}

/// H(X, Y) = Set(F X, G Y) for set-valued F, G. Its end is Nat(F, G).
/// Functions are encoded in mixed radix, least significant digit first.
inline Bifunctor function_bifunctor(const Diagram& f, const Diagram& g) {
  if (*f.shape != *g.shape) fail(ErrorKind::EndpointMismatch, "diagrams have different shapes");
  const FinCategory& c = *f.shape;
  const std::size_t n = c.object_count(), m = c.morphism_count();
  auto power = [](std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) r *= base;
    return r;
  };
  auto decode = [](std::size_t code, std::size_t base, std::size_t len) {
    std::vector<std::size_t> digits(len);
    for (std::size_t i = 0; i < len; ++i) {
      digits[i] = code % base;
      code /= base;
    }
    return digits;
  };
  auto encode = [](const std::vector<std::size_t>& digits, std::size_t base) {
    std::size_t code = 0;
    for (std::size_t i = digits.size(); i-- > 0;) code = code * base + digits[i];
    return code;
  };
  std::vector<FinSet> sets;
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y) {
      std::size_t len = f.sets[x].size(), base = g.sets[y].size();
      std::vector<std::string> els;
      for (std::size_t code = 0, total = power(base, len); code < total; ++code) {
        std::vector<std::string> parts;
        for (std::size_t v : decode(code, base, len)) parts.push_back(g.sets[y][v]);
        els.push_back(detail::tuple_name(parts));
      }
      sets.emplace_back("Set(" + c.object_name(x) + "," + c.object_name(y) + ")", std::move(els));
    }
  std::vector<std::vector<std::size_t>> left(m * n), right(n * m);
  for (MorId a = 0; a < m; ++a)
    for (ObjId y = 0; y < n; ++y) {
      // φ ↦ φ∘F(a)
      std::size_t len = f.sets[c.dst(a)].size(), base = g.sets[y].size();
      for (std::size_t code = 0, total = power(base, len); code < total; ++code) {
        auto phi = decode(code, base, len);
        std::vector<std::size_t> out;
        for (std::size_t x = 0; x < f.sets[c.src(a)].size(); ++x) out.push_back(phi[f.arrows[a][x]]);
        left[a * n + y].push_back(encode(out, base));
      }
    }
  for (ObjId x = 0; x < n; ++x)
    for (MorId b = 0; b < m; ++b) {
      // φ ↦ G(b)∘φ
      std::size_t len = f.sets[x].size(), base = g.sets[c.src(b)].size();
      for (std::size_t code = 0, total = power(base, len); code < total; ++code) {
        auto phi = decode(code, base, len);
        for (auto& v : phi) v = g.arrows[b][v];
        right[x * m + b].push_back(encode(phi, g.sets[c.dst(b)].size()));
      }
    }
  return make_bifunctor(f.shape, std::move(sets), left, right);
}

// ---------------------------------------------------------------------------
// Natural transformations between set-valued diagrams

/// Components α_Y: F(Y) → G(Y), indexed [Y][element].
using SetNat = std::vector<std::vector<std::size_t>>;

inline bool is_natural(const Diagram& f, const Diagram& g, const SetNat& alpha) {
  const FinCategory& c = *f.shape;
  for (MorId a = 0; a < c.morphism_count(); ++a)
    for (std::size_t x = 0; x < f.sets[c.src(a)].size(); ++x)
      if (alpha[c.dst(a)][f.arrows[a][x]] != g.arrows[a][alpha[c.src(a)][x]]) return false;
  return true;
}

/// Visits every natural transformation F ⇒ G. The search assigns one
/// element image at a time and checks each naturality equation as soon as
/// both of its sides are known.
inline void for_each_nat(const Diagram& f, const Diagram& g, Budget& budget,
                         const std::function<bool(const SetNat&)>& visit) {
  if (*f.shape != *g.shape) fail(ErrorKind::EndpointMismatch, "diagrams have different shapes");
  const FinCategory& c = *f.shape;
  const std::size_t n = c.object_count();
  std::vector<std::size_t> offset(n + 1, 0);
  for (ObjId y = 0; y < n; ++y) offset[y + 1] = offset[y] + f.sets[y].size();
  const std::size_t vars = offset[n];
  std::vector<ObjId> object_of(vars);
  for (ObjId y = 0; y < n; ++y)
    for (std::size_t v = offset[y]; v < offset[y + 1]; ++v) object_of[v] = y;

  struct Check {
    MorId f;
    std::size_t from, to;  // α(to) must equal G(f)(α(from))
  };
  std::vector<std::vector<Check>> checks(vars);
  for (MorId a = 0; a < c.morphism_count(); ++a) {
    if (c.is_identity(a)) continue;
    ObjId y = c.src(a), z = c.dst(a);
    for (std::size_t x = 0; x < f.sets[y].size(); ++x) {
      std::size_t from = offset[y] + x, to = offset[z] + f.arrows[a][x];
      checks[std::max(from, to)].push_back({a, from, to});
    }
  }

  std::vector<std::size_t> value(vars, kNone);
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t v) {
    if (stop) return;
    budget.spend();
    if (v == vars) {
      SetNat alpha(n);
      for (ObjId y = 0; y < n; ++y)
        alpha[y].assign(value.begin() + static_cast<std::ptrdiff_t>(offset[y]),
                        value.begin() + static_cast<std::ptrdiff_t>(offset[y + 1]));
      if (!visit(alpha)) stop = true;
      return;
    }
    const std::size_t domain = g.sets[object_of[v]].size();
    for (std::size_t cand = 0; cand < domain && !stop; ++cand) {
      value[v] = cand;
      bool ok = true;
      for (const auto& k : checks[v])
        if (value[k.to] != g.arrows[k.f][value[k.from]]) {
          ok = false;
          break;
        }
      if (ok) rec(v + 1);
    }
    value[v] = kNone;
  };
  rec(0);
}

inline std::vector<SetNat> enumerate_nat(const Diagram& f, const Diagram& g, Budget& budget) {
  std::vector<SetNat> out;
  for_each_nat(f, g, budget, [&](const SetNat& a) {
    out.push_back(a);
    return true;
  });
  return out;
}

inline std::size_t count_nat(const Diagram& f, const Diagram& g, Budget& budget) {
  std::size_t count = 0;
  for_each_nat(f, g, budget, [&](const SetNat&) {
    ++count;
    return true;
  });
  return count;
}

/// All set-valued functors on C whose values are {0..k-1} with k ≤ max_size.
inline std::vector<Diagram> enumerate_set_functors(const CategoryRef& shape, std::size_t max_size,
                                                   Budget& budget) {
  const FinCategory& c = *shape;
  const std::size_t n = c.object_count();
  std::vector<MorId> order;
  for (MorId f = 0; f < c.morphism_count(); ++f)
    if (!c.is_identity(f)) order.push_back(f);
  std::vector<std::size_t> position(c.morphism_count(), kNone);
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
  struct Constraint {
    MorId g, f, h;
  };
  std::vector<std::vector<Constraint>> checks(order.size());
  for (MorId g : order)
    for (MorId f : order) {
      if (!c.composable(g, f)) continue;
      MorId h = c.compose(g, f);
      std::size_t last = std::max(position[g], position[f]);
      if (!c.is_identity(h)) last = std::max(last, position[h]);
      checks[last].push_back({g, f, h});
    }

  std::vector<Diagram> out;
  std::vector<std::size_t> sizes(n, 0);
  Diagram cur{shape, {}, std::vector<std::vector<std::size_t>>(c.morphism_count())};

  std::function<void(std::size_t)> assign = [&](std::size_t i) {
    budget.spend();
    if (i == order.size()) {
      out.push_back(cur);
      return;
    }
    MorId f = order[i];
    std::size_t dom = sizes[c.src(f)], cod = sizes[c.dst(f)];
    std::vector<std::size_t> map(dom, 0);
    if (dom > 0 && cod == 0) return;
    while (true) {
      cur.arrows[f] = map;
      bool ok = true;
      for (const auto& k : checks[i]) {
        const auto& gf = cur.arrows[k.h];
        for (std::size_t x = 0; x < gf.size() && ok; ++x)
          ok = gf[x] == cur.arrows[k.g][cur.arrows[k.f][x]];
        if (!ok) break;
      }
      if (ok) assign(i + 1);
      std::size_t j = 0;
      while (j < dom && ++map[j] == cod) map[j++] = 0;
      if (j == dom) break;
    }
  };

  std::function<void(ObjId)> choose_sizes = [&](ObjId x) {
    if (x == n) {
      cur.sets.clear();
      for (ObjId y = 0; y < n; ++y) {
        cur.sets.push_back(FinSet::range(sizes[y], c.object_name(y)));
        cur.arrows[c.identity(y)] = detail::identity_map(sizes[y]);
      }
      assign(0);
      return;
    }
    for (std::size_t s = 0; s <= max_size; ++s) {
      sizes[x] = s;
      choose_sizes(x + 1);
    }
  };
  choose_sizes(0);
  return out;
}

// ---------------------------------------------------------------------------
// Kan extensions

enum class KanSide { left, right };

/// A pointwise Kan extension of F along i. For the left extension `unit[Y]`
/// maps F(Y) → Lan(iY); for the right extension it maps Ran(iY) → F(Y).
struct KanExtension {
  KanSide side = KanSide::left;
  Diagram extension;
  std::vector<std::vector<std::size_t>> unit;
};

namespace detail {

inline std::size_t hom_position(const FinCategory& c, ObjId a, ObjId b, MorId u) {
  const auto& hs = c.hom(a, b);
  return static_cast<std::size_t>(std::find(hs.begin(), hs.end(), u) - hs.begin());
}

}  // namespace detail

/// Lan_i F (X) = ∫^Y Mor_C(iY, X) · F(Y), one coend per object X.
inline KanExtension lan(const Diagram& f, const FinFunctor& i) {
  if (*f.shape != *i.source) fail(ErrorKind::EndpointMismatch, "diagram shape is not the source of i");
  const FinCategory& a = *i.source;
  const FinCategory& c = *i.target;
  const std::size_t na = a.object_count(), ma = a.morphism_count();
  CategoryRef shape = twisted_shape(a);

  std::vector<CoendResult> coends;
  // K_X(Y', Y) = Mor(iY', X) × F(Y); element (u, x) at index pos(u) * |F(Y)| + x
  for (ObjId x = 0; x < c.object_count(); ++x) {
    std::vector<FinSet> sets;
    for (ObjId y1 = 0; y1 < na; ++y1)
      for (ObjId y2 = 0; y2 < na; ++y2) {
        std::vector<std::string> els;
        for (MorId u : c.hom(i(y1), x))
          for (const auto& e : f.sets[y2].elements())
            els.push_back(detail::tuple_name({c.morphism(u).name, e}));
        sets.emplace_back("K", std::move(els));
      }
    std::vector<std::vector<std::size_t>> left(ma * na), right(na * ma);
    for (MorId g = 0; g < ma; ++g)
      for (ObjId y = 0; y < na; ++y) {
        // (u, e) ∈ K(cod g, y) ↦ (u∘i(g), e) ∈ K(dom g, y)
        std::size_t fy = f.sets[y].size();
        for (MorId u : c.hom(i(a.dst(g)), x))
          for (std::size_t e = 0; e < fy; ++e)
            left[g * na + y].push_back(
                detail::hom_position(c, i(a.src(g)), x, c.compose(u, i.map(g))) * fy + e);
      }
    for (ObjId y1 = 0; y1 < na; ++y1)
      for (MorId g = 0; g < ma; ++g) {
        // (u, e) ∈ K(y1, dom g) ↦ (u, F(g)e) ∈ K(y1, cod g)
        std::size_t fs = f.sets[a.src(g)].size(), ft = f.sets[a.dst(g)].size();
        for (std::size_t p = 0; p < c.hom(i(y1), x).size(); ++p)
          for (std::size_t e = 0; e < fs; ++e) right[y1 * ma + g].push_back(p * ft + f.arrows[g][e]);
      }
    Bifunctor k = make_bifunctor(i.source, std::move(sets), left, right, shape);
    coends.push_back(coend_classes(k));
  }

  KanExtension out{KanSide::left, Diagram{i.target, {}, {}}, {}};
  for (ObjId x = 0; x < c.object_count(); ++x)
    out.extension.sets.emplace_back(c.object_name(x), coends[x].apex.elements());
  for (MorId g = 0; g < c.morphism_count(); ++g) {
    ObjId x = c.src(g), x2 = c.dst(g);
    std::vector<std::size_t> map;
    for (auto [y, e] : coends[x].representative) {
      std::size_t fy = f.sets[y].size();
      MorId u = c.hom(i(y), x)[e / fy];
      std::size_t moved = detail::hom_position(c, i(y), x2, c.compose(g, u)) * fy + e % fy;
      map.push_back(coends[x2].class_of[y][moved]);
    }
    out.extension.arrows.push_back(std::move(map));
  }
  for (ObjId y = 0; y < na; ++y) {
    std::vector<std::size_t> eta;
    std::size_t fy = f.sets[y].size();
    std::size_t id_pos = detail::hom_position(c, i(y), i(y), c.identity(i(y)));
    for (std::size_t e = 0; e < fy; ++e) eta.push_back(coends[i(y)].class_of[y][id_pos * fy + e]);
    out.unit.push_back(std::move(eta));
  }
  validate_diagram(out.extension);
  return out;
}

/// Ran_i F (X) = ∫_Y F(Y)^{Mor_C(X, iY)}, one end per object X.
inline KanExtension ran(const Diagram& f, const FinFunctor& i) {
  if (*f.shape != *i.source) fail(ErrorKind::EndpointMismatch, "diagram shape is not the source of i");
  const FinCategory& a = *i.source;
  const FinCategory& c = *i.target;
  const std::size_t na = a.object_count(), ma = a.morphism_count();
  CategoryRef shape = twisted_shape(a);

  auto power = [](std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    for (std::size_t k = 0; k < exp; ++k) r *= base;
    return r;
  };
  auto decode = [](std::size_t code, std::size_t base, std::size_t len) {
    std::vector<std::size_t> d(len);
    for (std::size_t k = 0; k < len; ++k) {
      d[k] = code % base;
      code /= base;
    }
    return d;
  };
  auto encode = [](const std::vector<std::size_t>& d, std::size_t base) {
    std::size_t code = 0;
    for (std::size_t k = d.size(); k-- > 0;) code = code * base + d[k];
    return code;
  };

  std::vector<EndResult> ends;
  // K_X(Y', Y) = F(Y)^{Mor(X, iY')}
  for (ObjId x = 0; x < c.object_count(); ++x) {
    std::vector<FinSet> sets;
    for (ObjId y1 = 0; y1 < na; ++y1)
      for (ObjId y2 = 0; y2 < na; ++y2) {
        std::size_t len = c.hom(x, i(y1)).size(), base = f.sets[y2].size();
        std::vector<std::string> els;
        for (std::size_t code = 0, total = power(base, len); code < total; ++code) {
          std::vector<std::string> parts;
          for (std::size_t v : decode(code, base, len)) parts.push_back(f.sets[y2][v]);
          els.push_back("[" + detail::tuple_name(parts).substr(1, std::string::npos));
          els.back().back() = ']';
        }
        sets.emplace_back("K", std::move(els));
      }
    std::vector<std::vector<std::size_t>> left(ma * na), right(na * ma);
    for (MorId g = 0; g < ma; ++g)
      for (ObjId y = 0; y < na; ++y) {
        // φ ∈ K(cod g, y) ↦ (v ↦ φ(i(g)∘v)) ∈ K(dom g, y)
        const auto& small = c.hom(x, i(a.src(g)));
        std::size_t len = c.hom(x, i(a.dst(g))).size(), base = f.sets[y].size();
        for (std::size_t code = 0, total = power(base, len); code < total; ++code) {
          auto phi = decode(code, base, len);
          std::vector<std::size_t> out;
          for (MorId v : small)
            out.push_back(phi[detail::hom_position(c, x, i(a.dst(g)), c.compose(i.map(g), v))]);
          left[g * na + y].push_back(encode(out, base));
        }
      }
    for (ObjId y1 = 0; y1 < na; ++y1)
      for (MorId g = 0; g < ma; ++g) {
        // φ ↦ F(g)∘φ
        std::size_t len = c.hom(x, i(y1)).size(), base = f.sets[a.src(g)].size();
        for (std::size_t code = 0, total = power(base, len); code < total; ++code) {
          auto phi = decode(code, base, len);
          for (auto& v : phi) v = f.arrows[g][v];
          right[y1 * ma + g].push_back(encode(phi, f.sets[a.dst(g)].size()));
        }
      }
    Bifunctor k = make_bifunctor(i.source, std::move(sets), left, right, shape);
    ends.push_back(end_families(k));
  }

  KanExtension out{KanSide::right, Diagram{i.target, {}, {}}, {}};
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> lookup(c.object_count());
  for (ObjId x = 0; x < c.object_count(); ++x) {
    out.extension.sets.emplace_back(c.object_name(x), ends[x].apex.elements());
    for (std::size_t k = 0; k < ends[x].families.size(); ++k) lookup[x][ends[x].families[k]] = k;
  }
  for (MorId g = 0; g < c.morphism_count(); ++g) {
    ObjId x = c.src(g), x2 = c.dst(g);
    std::vector<std::size_t> map;
    for (const auto& fam : ends[x].families) {
      std::vector<std::size_t> moved(na);
      for (ObjId y = 0; y < na; ++y) {
        // φ'_Y(v) = φ_Y(v∘g) for v ∈ Mor(x2, iY)
        std::size_t base = f.sets[y].size();
        auto phi = decode(fam[y], base, c.hom(x, i(y)).size());
        std::vector<std::size_t> out;
        for (MorId v : c.hom(x2, i(y)))
          out.push_back(phi[detail::hom_position(c, x, i(y), c.compose(v, g))]);
        moved[y] = encode(out, base);
      }
      map.push_back(lookup[x2].at(moved));
    }
    out.extension.arrows.push_back(std::move(map));
  }
  for (ObjId y = 0; y < na; ++y) {
    std::vector<std::size_t> eps;
    ObjId iy = i(y);
    std::size_t id_pos = detail::hom_position(c, iy, iy, c.identity(iy));
    for (const auto& fam : ends[iy].families) {
      auto phi = decode(fam[y], f.sets[y].size(), c.hom(iy, iy).size());
      eps.push_back(phi[id_pos]);
    }
    out.unit.push_back(std::move(eps));
  }
  validate_diagram(out.extension);
  return out;
}

struct KanUniversalReport {
  struct Row {
    std::size_t extension_side = 0;  // |Nat(L, G)| or |Nat(G, R)|
    std::size_t restricted_side = 0; // |Nat(F, G∘i)| or |Nat(G∘i, F)|
  };
  std::vector<Row> rows;
};

/// Checks Nat(L, G) ≅ Nat(F, G∘i) (left) or Nat(G, R) ≅ Nat(G∘i, F) (right)
/// for every test functor G, via composition with the unit or counit.
/// Throws NotUniversal naming the first G where the map is not a bijection.
inline KanUniversalReport check_kan_universal(const KanExtension& ext, const Diagram& f,
                                              const FinFunctor& i,
                                              const std::vector<Diagram>& tests, Budget& budget) {
  if (*ext.extension.shape != *i.target || *f.shape != *i.source)
    fail(ErrorKind::EndpointMismatch, "extension, diagram and functor do not fit together");
  const std::size_t na = i.source->object_count();
  KanUniversalReport report;
  for (std::size_t t = 0; t < tests.size(); ++t) {
    const Diagram& g = tests[t];
    Diagram gi = restrict_along(g, i);
    std::map<SetNat, std::size_t> images;
    std::size_t count = 0;
    auto transport = [&](const SetNat& alpha) {
      SetNat beta(na);
      for (ObjId y = 0; y < na; ++y) {
        if (ext.side == KanSide::left) {
          for (std::size_t e : ext.unit[y]) beta[y].push_back(alpha[i(y)][e]);
        } else {
          for (std::size_t e : alpha[i(y)]) beta[y].push_back(ext.unit[y][e]);
        }
      }
      return beta;
    };
    bool lands = true;
    auto record = [&](const SetNat& alpha) {
      SetNat beta = transport(alpha);
      lands = lands && (ext.side == KanSide::left ? is_natural(f, gi, beta) : is_natural(gi, f, beta));
      ++images[std::move(beta)];
      ++count;
      return true;
    };
    std::size_t other;
    if (ext.side == KanSide::left) {
      for_each_nat(ext.extension, g, budget, record);
      other = count_nat(f, gi, budget);
    } else {
      for_each_nat(g, ext.extension, budget, record);
      other = count_nat(gi, f, budget);
    }
    bool injective = images.size() == count;
    if (!lands)
      fail(ErrorKind::NotUniversal,
           "test functor #" + std::to_string(t) + ": transported family is not natural");
    if (!injective || count != other)
      fail(ErrorKind::NotUniversal, "test functor #" + std::to_string(t) + ": " +
                                        std::to_string(count) + " transformations on the extension side vs " +
                                        std::to_string(other) + " on the restricted side" +
                                        (injective ? "" : " (transport not injective)"));
    report.rows.push_back({count, other});
  }
  return report;
}

}  // namespace catkit
