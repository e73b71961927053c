#pragma once

// Finite categories with an explicit composition table, functors between
// them, natural transformations, and the standard constructions on them.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "catkit/error.hpp"

namespace catkit {

using ObjId = std::size_t;
using MorId = std::size_t;
inline constexpr std::size_t kNone = static_cast<std::size_t>(-1);

/// Prefix reserved for synthesized identity morphisms.
inline constexpr std::string_view kIdentityPrefix = "id_";

inline std::string identity_name(const std::string& object) {
  return std::string(kIdentityPrefix) + object;
}

struct Morphism {
  std::string name;
  ObjId src = 0;
  ObjId dst = 0;
  friend bool operator==(const Morphism&, const Morphism&) = default;
};

/// Category as written in a file: identities omitted, composites listed as
/// triples (g, f, h) meaning g∘f = h.
struct RawCategory {
  struct Arrow {
    std::string name, src, dst;
  };
  struct Composite {
    std::string g, f, h;
  };
  std::vector<std::string> objects;
  std::vector<Arrow> morphisms;
  std::vector<Composite> compose;
};

class FinCategory {
 public:
  /// Builds a category from a complete composition table and checks every
  /// invariant. `table[g * M + f]` holds g∘f, or kNone when not composable.
  static FinCategory make(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                          std::vector<MorId> identities, std::vector<MorId> table);

  [[nodiscard]] std::size_t object_count() const noexcept { return objects_.size(); }
  [[nodiscard]] std::size_t morphism_count() const noexcept { return morphisms_.size(); }

  [[nodiscard]] const std::string& object_name(ObjId x) const { return objects_.at(x); }
  [[nodiscard]] const std::vector<std::string>& objects() const noexcept { return objects_; }
  [[nodiscard]] const Morphism& morphism(MorId f) const { return morphisms_.at(f); }
  [[nodiscard]] const std::vector<Morphism>& morphisms() const noexcept { return morphisms_; }
  [[nodiscard]] ObjId src(MorId f) const { return morphisms_[f].src; }
  [[nodiscard]] ObjId dst(MorId f) const { return morphisms_[f].dst; }

  [[nodiscard]] MorId identity(ObjId x) const { return identity_.at(x); }
  [[nodiscard]] bool is_identity(MorId f) const { return is_identity_.at(f); }

  [[nodiscard]] bool composable(MorId g, MorId f) const { return dst(f) == src(g); }

  /// g∘f; throws EndpointMismatch when target(f) != source(g).
  [[nodiscard]] MorId compose(MorId g, MorId f) const {
    MorId h = table_[g * morphisms_.size() + f];
    if (h == kNone)
      fail(ErrorKind::EndpointMismatch,
           morphisms_[g].name + "∘" + morphisms_[f].name + " is not composable");
    return h;
  }

  [[nodiscard]] const std::vector<MorId>& hom(ObjId a, ObjId b) const {
    return hom_[a * objects_.size() + b];
  }

  [[nodiscard]] std::optional<ObjId> find_object(const std::string& name) const {
    auto it = object_index_.find(name);
    if (it == object_index_.end()) return std::nullopt;
    return it->second;
  }
  [[nodiscard]] std::optional<MorId> find_morphism(const std::string& name) const {
    auto it = morphism_index_.find(name);
    if (it == morphism_index_.end()) return std::nullopt;
    return it->second;
  }
  [[nodiscard]] ObjId object_id(const std::string& name) const {
    if (auto x = find_object(name)) return *x;
    fail(ErrorKind::UnknownObject, "no object named '" + name + "'");
  }
  [[nodiscard]] MorId morphism_id(const std::string& name) const {
    if (auto f = find_morphism(name)) return *f;
    fail(ErrorKind::UnknownObject, "no morphism named '" + name + "'");
  }

  [[nodiscard]] const std::vector<MorId>& table() const noexcept { return table_; }

  friend bool operator==(const FinCategory& a, const FinCategory& b) {
    return a.objects_ == b.objects_ && a.morphisms_ == b.morphisms_ &&
           a.identity_ == b.identity_ && a.table_ == b.table_;
  }

 private:
  FinCategory() = default;

  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<MorId> identity_;
  std::vector<MorId> table_;
  std::vector<bool> is_identity_;
  std::vector<std::vector<MorId>> hom_;
  std::unordered_map<std::string, ObjId> object_index_;
  std::unordered_map<std::string, MorId> morphism_index_;
};

using CategoryRef = std::shared_ptr<const FinCategory>;

inline CategoryRef share(FinCategory c) { return std::make_shared<const FinCategory>(std::move(c)); }

inline FinCategory FinCategory::make(std::vector<std::string> objects,
                                     std::vector<Morphism> morphisms,
                                     std::vector<MorId> identities, std::vector<MorId> table) {
  FinCategory c;
  const std::size_t n = objects.size();
  const std::size_t m = morphisms.size();
  for (ObjId x = 0; x < n; ++x) {
    if (!c.object_index_.emplace(objects[x], x).second)
      fail(ErrorKind::DuplicateName, "object '" + objects[x] + "' listed twice");
  }
  for (MorId f = 0; f < m; ++f) {
    const auto& mor = morphisms[f];
    if (c.object_index_.count(mor.name))
      fail(ErrorKind::DuplicateName, "morphism '" + mor.name + "' shares a name with an object");
    if (!c.morphism_index_.emplace(mor.name, f).second)
      fail(ErrorKind::DuplicateName, "morphism '" + mor.name + "' listed twice");
    if (mor.src >= n || mor.dst >= n)
      fail(ErrorKind::BadEndpoints, "morphism '" + mor.name + "' has an unknown endpoint");
  }
  if (identities.size() != n)
    fail(ErrorKind::BadEndpoints, "expected one identity per object");
  c.is_identity_.assign(m, false);
  for (ObjId x = 0; x < n; ++x) {
    MorId e = identities[x];
    if (e >= m || morphisms[e].src != x || morphisms[e].dst != x || c.is_identity_[e])
      fail(ErrorKind::BadEndpoints, "identity of '" + objects[x] + "' is not an endomorphism");
    c.is_identity_[e] = true;
  }
  if (table.size() != m * m) fail(ErrorKind::MissingComposite, "composition table has wrong size");

  auto name = [&](MorId f) -> const std::string& { return morphisms[f].name; };
  for (MorId g = 0; g < m; ++g) {
    for (MorId f = 0; f < m; ++f) {
      MorId h = table[g * m + f];
      bool composable = morphisms[f].dst == morphisms[g].src;
      if (!composable) {
        if (h != kNone)
          fail(ErrorKind::BadEndpoints,
               "composite assigned to non-composable pair " + name(g) + "∘" + name(f));
        continue;
      }
      if (h == kNone) fail(ErrorKind::MissingComposite, name(g) + "∘" + name(f));
      if (h >= m || morphisms[h].src != morphisms[f].src || morphisms[h].dst != morphisms[g].dst)
        fail(ErrorKind::BadEndpoints, name(g) + "∘" + name(f) + " has wrong endpoints");
    }
  }
  for (MorId f = 0; f < m; ++f) {
    if (table[identities[morphisms[f].dst] * m + f] != f ||
        table[f * m + identities[morphisms[f].src]] != f)
      fail(ErrorKind::BadEndpoints, "identity law fails for " + name(f));
  }

  c.hom_.assign(n * n, {});
  for (MorId f = 0; f < m; ++f) c.hom_[morphisms[f].src * n + morphisms[f].dst].push_back(f);

  // (h∘g)∘f = h∘(g∘f) over all composable triples
  for (MorId f = 0; f < m; ++f) {
    for (ObjId y = 0; y < n; ++y) {
      for (MorId g : c.hom_[morphisms[f].dst * n + y]) {
        MorId gf = table[g * m + f];
        for (ObjId z = 0; z < n; ++z) {
          for (MorId h : c.hom_[y * n + z]) {
            if (table[table[h * m + g] * m + f] != table[h * m + gf])
              fail(ErrorKind::NonAssociative, "(" + name(h) + "∘" + name(g) + ")∘" + name(f) +
                                                  " != " + name(h) + "∘(" + name(g) + "∘" +
                                                  name(f) + ")");
          }
        }
      }
    }
  }

  c.objects_ = std::move(objects);
  c.morphisms_ = std::move(morphisms);
  c.identity_ = std::move(identities);
  c.table_ = std::move(table);
  return c;
}

/// Checks a raw description and synthesizes identities. Identities come first
/// (in object order), followed by the listed morphisms in file order.
inline FinCategory validate_category(const RawCategory& raw) {
  std::vector<std::string> objects = raw.objects;
  std::unordered_map<std::string, ObjId> obj_index;
  for (ObjId x = 0; x < objects.size(); ++x)
    if (!obj_index.emplace(objects[x], x).second)
      fail(ErrorKind::DuplicateName, "object '" + objects[x] + "' listed twice");

  std::vector<Morphism> morphisms;
  std::vector<MorId> identities;
  for (ObjId x = 0; x < objects.size(); ++x) {
    identities.push_back(morphisms.size());
    morphisms.push_back({identity_name(objects[x]), x, x});
  }
  std::unordered_map<std::string, MorId> mor_index;
  for (MorId f = 0; f < morphisms.size(); ++f) mor_index.emplace(morphisms[f].name, f);

  for (const auto& a : raw.morphisms) {
    if (std::string_view(a.name).substr(0, kIdentityPrefix.size()) == kIdentityPrefix)
      fail(ErrorKind::DuplicateName, "morphism name '" + a.name + "' uses the reserved id_ prefix");
    auto s = obj_index.find(a.src), d = obj_index.find(a.dst);
    if (s == obj_index.end() || d == obj_index.end())
      fail(ErrorKind::BadEndpoints, "morphism '" + a.name + "' has an unknown endpoint");
    if (!mor_index.emplace(a.name, morphisms.size()).second)
      fail(ErrorKind::DuplicateName, "morphism '" + a.name + "' listed twice");
    morphisms.push_back({a.name, s->second, d->second});
  }

  const std::size_t m = morphisms.size();
  std::vector<MorId> table(m * m, kNone);
  for (MorId f = 0; f < m; ++f) {
    table[identities[morphisms[f].dst] * m + f] = f;
    table[f * m + identities[morphisms[f].src]] = f;
  }
  auto lookup = [&](const std::string& nm) {
    auto it = mor_index.find(nm);
    if (it == mor_index.end()) fail(ErrorKind::BadEndpoints, "unknown morphism '" + nm + "'");
    return it->second;
  };
  std::vector<bool> assigned(m * m, false);
  for (const auto& c : raw.compose) {
    MorId g = lookup(c.g), f = lookup(c.f), h = lookup(c.h);
    if (morphisms[f].dst != morphisms[g].src)
      fail(ErrorKind::BadEndpoints, c.g + "∘" + c.f + " is not composable");
    if (morphisms[h].src != morphisms[f].src || morphisms[h].dst != morphisms[g].dst)
      fail(ErrorKind::BadEndpoints, c.g + "∘" + c.f + " = " + c.h + " has wrong endpoints");
    MorId& slot = table[g * m + f];
    bool involves_identity = g < objects.size() || f < objects.size();
    if (involves_identity) {
      if (slot != h) fail(ErrorKind::BadEndpoints, c.g + "∘" + c.f + " contradicts the identity law");
      continue;
    }
    if (assigned[g * m + f] && slot != h)
      fail(ErrorKind::DuplicateName, c.g + "∘" + c.f + " assigned twice");
    slot = h;
    assigned[g * m + f] = true;
  }
  for (MorId g = 0; g < m; ++g)
    for (MorId f = 0; f < m; ++f)
      if (morphisms[f].dst == morphisms[g].src && table[g * m + f] == kNone)
        fail(ErrorKind::MissingComposite, morphisms[g].name + "∘" + morphisms[f].name);

  return FinCategory::make(std::move(objects), std::move(morphisms), std::move(identities),
                           std::move(table));
}

/// Inverse of validate_category: non-identity morphisms and all composites
/// of non-identity pairs.
inline RawCategory serialize(const FinCategory& c) {
  RawCategory raw;
  raw.objects = c.objects();
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    if (c.is_identity(f)) continue;
    const auto& m = c.morphism(f);
    raw.morphisms.push_back({m.name, c.object_name(m.src), c.object_name(m.dst)});
  }
  for (MorId g = 0; g < c.morphism_count(); ++g) {
    if (c.is_identity(g)) continue;
    for (MorId f = 0; f < c.morphism_count(); ++f) {
      if (c.is_identity(f) || !c.composable(g, f)) continue;
      raw.compose.push_back({c.morphism(g).name, c.morphism(f).name,
                             c.morphism(c.compose(g, f)).name});
    }
  }
  return raw;
}

namespace detail {

inline std::string toggle_op_suffix(const std::string& name) {
  constexpr std::string_view suffix = "^op";
  if (name.size() >= suffix.size() &&
      std::string_view(name).substr(name.size() - suffix.size()) == suffix)
    return name.substr(0, name.size() - suffix.size());
  return name + std::string(suffix);
}

}  // namespace detail

/// Same objects and morphism indices; f:X→Y becomes f^op:Y→X. Applying it
/// twice gives back the original category exactly.
inline FinCategory opposite(const FinCategory& c) {
  const std::size_t m = c.morphism_count();
  std::vector<Morphism> mors;
  mors.reserve(m);
  for (MorId f = 0; f < m; ++f) {
    const auto& mor = c.morphism(f);
    mors.push_back({c.is_identity(f) ? mor.name : detail::toggle_op_suffix(mor.name), mor.dst,
                    mor.src});
  }
  std::vector<MorId> ids(c.object_count());
  for (ObjId x = 0; x < ids.size(); ++x) ids[x] = c.identity(x);
  std::vector<MorId> table(m * m, kNone);
  for (MorId g = 0; g < m; ++g)
    for (MorId f = 0; f < m; ++f)
      if (c.composable(f, g)) table[g * m + f] = c.compose(f, g);
  return FinCategory::make(c.objects(), std::move(mors), std::move(ids), std::move(table));
}

/// Index of the pair object (x, y) in product_category(C, D).
inline ObjId pair_object(const FinCategory& d, ObjId x, ObjId y) {
  return x * d.object_count() + y;
}
inline MorId pair_morphism(const FinCategory& d, MorId f, MorId g) {
  return f * d.morphism_count() + g;
}

inline FinCategory product_category(const FinCategory& c, const FinCategory& d) {
  const std::size_t mc = c.morphism_count(), md = d.morphism_count();
  std::vector<std::string> objects;
  for (ObjId x = 0; x < c.object_count(); ++x)
    for (ObjId y = 0; y < d.object_count(); ++y)
      objects.push_back("(" + c.object_name(x) + "," + d.object_name(y) + ")");
  std::vector<Morphism> mors;
  for (MorId f = 0; f < mc; ++f)
    for (MorId g = 0; g < md; ++g) {
      ObjId s = pair_object(d, c.src(f), d.src(g));
      ObjId t = pair_object(d, c.dst(f), d.dst(g));
      std::string name = c.is_identity(f) && d.is_identity(g)
                             ? identity_name(objects[s])
                             : "(" + c.morphism(f).name + "," + d.morphism(g).name + ")";
      mors.push_back({std::move(name), s, t});
    }
  std::vector<MorId> ids;
  for (ObjId x = 0; x < c.object_count(); ++x)
    for (ObjId y = 0; y < d.object_count(); ++y)
      ids.push_back(pair_morphism(d, c.identity(x), d.identity(y)));
  const std::size_t m = mc * md;
  std::vector<MorId> table(m * m, kNone);
  for (MorId f2 = 0; f2 < mc; ++f2)
    for (MorId g2 = 0; g2 < md; ++g2)
      for (MorId f1 = 0; f1 < mc; ++f1) {
        if (!c.composable(f2, f1)) continue;
        for (MorId g1 = 0; g1 < md; ++g1) {
          if (!d.composable(g2, g1)) continue;
          table[pair_morphism(d, f2, g2) * m + pair_morphism(d, f1, g1)] =
              pair_morphism(d, c.compose(f2, f1), d.compose(g2, g1));
        }
      }
  return FinCategory::make(std::move(objects), std::move(mors), std::move(ids), std::move(table));
}

/// The category with one object and only its identity.
inline FinCategory terminal_category(const std::string& object = "*") {
  return validate_category(RawCategory{{object}, {}, {}});
}

inline FinCategory discrete_category(const std::vector<std::string>& objects) {
  return validate_category(RawCategory{objects, {}, {}});
}

inline std::optional<MorId> inverse_of(const FinCategory& c, MorId f) {
  for (MorId g : c.hom(c.dst(f), c.src(f)))
    if (c.is_identity(c.compose(g, f)) && c.is_identity(c.compose(f, g))) return g;
  return std::nullopt;
}

inline bool is_isomorphism(const FinCategory& c, MorId f) { return inverse_of(c, f).has_value(); }

/// Partition of the objects into isomorphism classes, each block sorted and
/// blocks ordered by their least member.
inline std::vector<std::vector<ObjId>> iso_classes(const FinCategory& c) {
  const std::size_t n = c.object_count();
  std::vector<ObjId> parent(n);
  std::iota(parent.begin(), parent.end(), ObjId{0});
  std::function<ObjId(ObjId)> find = [&](ObjId x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (MorId f = 0; f < c.morphism_count(); ++f)
    if (is_isomorphism(c, f)) {
      ObjId a = find(c.src(f)), b = find(c.dst(f));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::vector<ObjId>> blocks;
  std::vector<std::size_t> block_of(n, kNone);
  for (ObjId x = 0; x < n; ++x) {
    ObjId r = find(x);
    if (block_of[r] == kNone) {
      block_of[r] = blocks.size();
      blocks.emplace_back();
    }
    blocks[block_of[r]].push_back(x);
  }
  return blocks;
}

// ---------------------------------------------------------------------------
// Functors

struct FinFunctor {
  CategoryRef source;
  CategoryRef target;
  std::vector<ObjId> on_objects;
  std::vector<MorId> on_morphisms;

  [[nodiscard]] ObjId operator()(ObjId x) const { return on_objects.at(x); }
  [[nodiscard]] MorId map(MorId f) const { return on_morphisms.at(f); }

  friend bool operator==(const FinFunctor& a, const FinFunctor& b) {
    return *a.source == *b.source && *a.target == *b.target && a.on_objects == b.on_objects &&
           a.on_morphisms == b.on_morphisms;
  }
};

inline void validate_functor(const FinFunctor& f) {
  const FinCategory& c = *f.source;
  const FinCategory& d = *f.target;
  if (f.on_objects.size() != c.object_count() || f.on_morphisms.size() != c.morphism_count())
    fail(ErrorKind::InvalidFunctor, "object or morphism map has the wrong size");
  for (ObjId x : f.on_objects)
    if (x >= d.object_count()) fail(ErrorKind::InvalidFunctor, "object image out of range");
  for (MorId m = 0; m < c.morphism_count(); ++m) {
    MorId fm = f.on_morphisms[m];
    if (fm >= d.morphism_count()) fail(ErrorKind::InvalidFunctor, "morphism image out of range");
    if (d.src(fm) != f.on_objects[c.src(m)] || d.dst(fm) != f.on_objects[c.dst(m)])
      fail(ErrorKind::InvalidFunctor, "F(" + c.morphism(m).name + ") has wrong endpoints");
  }
  for (ObjId x = 0; x < c.object_count(); ++x)
    if (f.on_morphisms[c.identity(x)] != d.identity(f.on_objects[x]))
      fail(ErrorKind::InvalidFunctor, "identity of '" + c.object_name(x) + "' not preserved");
  for (MorId g = 0; g < c.morphism_count(); ++g)
    for (MorId h = 0; h < c.morphism_count(); ++h)
      if (c.composable(g, h) &&
          f.on_morphisms[c.compose(g, h)] != d.compose(f.on_morphisms[g], f.on_morphisms[h]))
        fail(ErrorKind::InvalidFunctor,
             "F(" + c.morphism(g).name + "∘" + c.morphism(h).name + ") != F(g)∘F(f)");
}

inline FinFunctor identity_functor(const CategoryRef& c) {
  FinFunctor f{c, c, {}, {}};
  f.on_objects.resize(c->object_count());
  std::iota(f.on_objects.begin(), f.on_objects.end(), ObjId{0});
  f.on_morphisms.resize(c->morphism_count());
  std::iota(f.on_morphisms.begin(), f.on_morphisms.end(), MorId{0});
  return f;
}

inline FinFunctor constant_functor(const CategoryRef& c, const CategoryRef& d, ObjId value) {
  FinFunctor f{c, d, std::vector<ObjId>(c->object_count(), value),
               std::vector<MorId>(c->morphism_count(), d->identity(value))};
  return f;
}

/// G∘F
inline FinFunctor compose(const FinFunctor& g, const FinFunctor& f) {
  if (*f.target != *g.source) fail(ErrorKind::EndpointMismatch, "functors are not composable");
  FinFunctor h{f.source, g.target, {}, {}};
  for (ObjId x : f.on_objects) h.on_objects.push_back(g.on_objects[x]);
  for (MorId m : f.on_morphisms) h.on_morphisms.push_back(g.on_morphisms[m]);
  return h;
}

struct FunctorSearchOptions {
  /// Only bijections on objects and morphisms (isomorphisms of categories).
  bool bijective = false;
};

/// Calls `visit` on every functor C→D in a deterministic order; stops early
/// when `visit` returns false. Every search node costs one budget step.
inline void for_each_functor(const CategoryRef& c, const CategoryRef& d, Budget& budget,
                             const std::function<bool(const FinFunctor&)>& visit,
                             FunctorSearchOptions options = {}) {
  const FinCategory& C = *c;
  const FinCategory& D = *d;
  const std::size_t n = C.object_count(), m = C.morphism_count();
  if (options.bijective &&
      (n != D.object_count() || m != D.morphism_count()))
    return;

  // Composition constraints g∘f = h, checked once the last of the three is set.
  std::vector<MorId> order;
  for (MorId f = 0; f < m; ++f)
    if (!C.is_identity(f)) order.push_back(f);
  std::vector<std::size_t> position(m, kNone);
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
  struct Constraint {
    MorId g, f, h;
  };
  std::vector<std::vector<Constraint>> checks(order.size());
  for (MorId g : order)
    for (MorId f : order) {
      if (!C.composable(g, f)) continue;
      MorId h = C.compose(g, f);
      std::size_t last = std::max(position[g], position[f]);
      if (!C.is_identity(h)) last = std::max(last, position[h]);
      checks[last].push_back({g, f, h});
    }

  FinFunctor cur{c, d, std::vector<ObjId>(n, 0), std::vector<MorId>(m, kNone)};
  std::vector<bool> obj_used(D.object_count(), false), mor_used(D.morphism_count(), false);
  bool stop = false;

  std::function<void(std::size_t)> assign_morphism = [&](std::size_t i) {
    if (stop) return;
    budget.spend();
    if (i == order.size()) {
      if (!visit(cur)) stop = true;
      return;
    }
    MorId f = order[i];
    for (MorId cand : D.hom(cur.on_objects[C.src(f)], cur.on_objects[C.dst(f)])) {
      if (options.bijective && mor_used[cand]) continue;
      cur.on_morphisms[f] = cand;
      bool ok = true;
      for (const auto& k : checks[i])
        if (cur.on_morphisms[k.h] != D.compose(cur.on_morphisms[k.g], cur.on_morphisms[k.f])) {
          ok = false;
          break;
        }
      if (ok) {
        if (options.bijective) mor_used[cand] = true;
        assign_morphism(i + 1);
        if (options.bijective) mor_used[cand] = false;
      }
      if (stop) return;
    }
    cur.on_morphisms[f] = kNone;
  };

  std::function<void(ObjId)> assign_object = [&](ObjId x) {
    if (stop) return;
    budget.spend();
    if (x == n) {
      for (ObjId y = 0; y < n; ++y) cur.on_morphisms[C.identity(y)] = D.identity(cur.on_objects[y]);
      if (options.bijective)
        for (ObjId y = 0; y < n; ++y) mor_used[D.identity(cur.on_objects[y])] = true;
      assign_morphism(0);
      if (options.bijective)
        for (ObjId y = 0; y < n; ++y) mor_used[D.identity(cur.on_objects[y])] = false;
      return;
    }
    for (ObjId y = 0; y < D.object_count(); ++y) {
      if (options.bijective) {
        if (obj_used[y]) continue;
        if (C.hom(x, x).size() != D.hom(y, y).size()) continue;
      }
      cur.on_objects[x] = y;
      obj_used[y] = true;
      assign_object(x + 1);
      obj_used[y] = false;
      if (stop) return;
    }
  };
  assign_object(0);
}

inline std::vector<FinFunctor> enumerate_functors(const CategoryRef& c, const CategoryRef& d,
                                                  Budget& budget) {
  std::vector<FinFunctor> out;
  for_each_functor(c, d, budget, [&](const FinFunctor& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

inline std::optional<FinFunctor> find_isomorphism(const CategoryRef& c, const CategoryRef& d,
                                                  Budget& budget) {
  std::optional<FinFunctor> found;
  for_each_functor(
      c, d, budget,
      [&](const FinFunctor& f) {
        found = f;
        return false;
      },
      {.bijective = true});
  return found;
}

// ---------------------------------------------------------------------------
// Natural transformations

struct NatTransformation {
  FinFunctor source;
  FinFunctor target;
  std::vector<MorId> components;  // per object of the shared source category
};

inline bool is_natural(const FinFunctor& f, const FinFunctor& g, const std::vector<MorId>& xi) {
  const FinCategory& C = *f.source;
  const FinCategory& D = *f.target;
  for (MorId m = 0; m < C.morphism_count(); ++m) {
    ObjId x = C.src(m), y = C.dst(m);
    if (D.compose(xi[y], f.map(m)) != D.compose(g.map(m), xi[x])) return false;
  }
  return true;
}

/// Every natural transformation F⇒G, by backtracking over component choices.
inline std::vector<NatTransformation> enumerate_nat_trans(const FinFunctor& f, const FinFunctor& g,
                                                          Budget& budget) {
  if (*f.source != *g.source || *f.target != *g.target)
    fail(ErrorKind::EndpointMismatch, "functors do not share source and target");
  const FinCategory& C = *f.source;
  const FinCategory& D = *f.target;
  const std::size_t n = C.object_count();
  // morphisms whose naturality square closes once object x is assigned
  std::vector<std::vector<MorId>> closing(n);
  for (MorId m = 0; m < C.morphism_count(); ++m)
    closing[std::max(C.src(m), C.dst(m))].push_back(m);

  std::vector<NatTransformation> out;
  std::vector<MorId> xi(n, kNone);
  std::function<void(ObjId)> rec = [&](ObjId x) {
    budget.spend();
    if (x == n) {
      out.push_back({f, g, xi});
      return;
    }
    for (MorId cand : D.hom(f(x), g(x))) {
      xi[x] = cand;
      bool ok = true;
      for (MorId m : closing[x]) {
        ObjId s = C.src(m), t = C.dst(m);
        if (D.compose(xi[t], f.map(m)) != D.compose(g.map(m), xi[s])) {
          ok = false;
          break;
        }
      }
      if (ok) rec(x + 1);
    }
    xi[x] = kNone;
  };
  rec(0);
  return out;
}

}  // namespace catkit
