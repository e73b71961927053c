#pragma once

// Finite sets, functions between them, and set-valued diagrams.

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "catkit/error.hpp"
#include "catkit/fincat.hpp"

namespace catkit {

class FinSet {
 public:
  FinSet() = default;
  FinSet(std::string name, std::vector<std::string> elements)
      : name_(std::move(name)), elements_(std::move(elements)) {
    for (std::size_t i = 0; i < elements_.size(); ++i)
      if (!index_.emplace(elements_[i], i).second)
        fail(ErrorKind::DuplicateName,
             "element '" + elements_[i] + "' repeated in set '" + name_ + "'");
  }

  /// {0, 1, ..., n-1}
  static FinSet range(std::size_t n, std::string name = {}) {
    std::vector<std::string> els;
    for (std::size_t i = 0; i < n; ++i) els.push_back(std::to_string(i));
    return FinSet(std::move(name), std::move(els));
  }

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] const std::vector<std::string>& elements() const noexcept { return elements_; }
  [[nodiscard]] std::size_t size() const noexcept { return elements_.size(); }
  [[nodiscard]] bool empty() const noexcept { return elements_.empty(); }
  [[nodiscard]] const std::string& operator[](std::size_t i) const { return elements_.at(i); }

  [[nodiscard]] std::optional<std::size_t> find(const std::string& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  [[nodiscard]] std::size_t index_of(const std::string& e) const {
    if (auto i = find(e)) return *i;
    fail(ErrorKind::BadEndpoints, "'" + e + "' is not an element of '" + name_ + "'");
  }

  friend bool operator==(const FinSet& a, const FinSet& b) {
    return a.name_ == b.name_ && a.elements_ == b.elements_;
  }

 private:
  std::string name_;
  std::vector<std::string> elements_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Total function between finite sets, stored by element index.
struct FinFunction {
  FinSet source;
  FinSet target;
  std::vector<std::size_t> map;

  [[nodiscard]] std::size_t operator()(std::size_t i) const { return map.at(i); }

  friend bool operator==(const FinFunction&, const FinFunction&) = default;
};

inline void validate_function(const FinFunction& f) {
  if (f.map.size() != f.source.size())
    fail(ErrorKind::BadEndpoints, "function out of '" + f.source.name() + "' is not total");
  for (std::size_t v : f.map)
    if (v >= f.target.size())
      fail(ErrorKind::BadEndpoints, "function image outside '" + f.target.name() + "'");
}

inline FinFunction identity_function(const FinSet& s) {
  FinFunction f{s, s, {}};
  for (std::size_t i = 0; i < s.size(); ++i) f.map.push_back(i);
  return f;
}

/// g∘f
inline FinFunction compose(const FinFunction& g, const FinFunction& f) {
  if (f.target.size() != g.source.size())
    fail(ErrorKind::EndpointMismatch, "functions are not composable");
  FinFunction h{f.source, g.target, {}};
  for (std::size_t v : f.map) h.map.push_back(g.map[v]);
  return h;
}

/// Set-valued functor on a finite shape category.
struct Diagram {
  CategoryRef shape;
  std::vector<FinSet> sets;                       // per object
  std::vector<std::vector<std::size_t>> arrows;   // per morphism, indices into the target set

  [[nodiscard]] const FinSet& at(ObjId x) const { return sets.at(x); }
  [[nodiscard]] std::size_t apply(MorId f, std::size_t element) const {
    return arrows.at(f).at(element);
  }
  [[nodiscard]] FinFunction arrow(MorId f) const {
    return {sets[shape->src(f)], sets[shape->dst(f)], arrows[f]};
  }
};

inline void validate_diagram(const Diagram& d) {
  const FinCategory& c = *d.shape;
  if (d.sets.size() != c.object_count() || d.arrows.size() != c.morphism_count())
    fail(ErrorKind::InvalidDiagram, "diagram does not cover the shape");
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    const auto& a = d.arrows[f];
    if (a.size() != d.sets[c.src(f)].size())
      fail(ErrorKind::InvalidDiagram, "function for '" + c.morphism(f).name + "' is not total");
    for (std::size_t v : a)
      if (v >= d.sets[c.dst(f)].size())
        fail(ErrorKind::InvalidDiagram,
             "function for '" + c.morphism(f).name + "' leaves its target set");
  }
  for (ObjId x = 0; x < c.object_count(); ++x) {
    const auto& a = d.arrows[c.identity(x)];
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != i)
        fail(ErrorKind::InvalidDiagram, "identity of '" + c.object_name(x) + "' not preserved");
  }
  for (MorId g = 0; g < c.morphism_count(); ++g)
    for (MorId f = 0; f < c.morphism_count(); ++f) {
      if (!c.composable(g, f)) continue;
      const auto& gf = d.arrows[c.compose(g, f)];
      for (std::size_t i = 0; i < gf.size(); ++i)
        if (gf[i] != d.arrows[g][d.arrows[f][i]])
          fail(ErrorKind::InvalidDiagram, "F(" + c.morphism(g).name + "∘" + c.morphism(f).name +
                                              ") != F(g)∘F(f)");
    }
}

/// G∘i for a diagram G on the target of i.
inline Diagram restrict_along(const Diagram& g, const FinFunctor& i) {
  if (*g.shape != *i.target) fail(ErrorKind::EndpointMismatch, "diagram shape is not the target of i");
  Diagram out{i.source, {}, {}};
  for (ObjId y = 0; y < i.source->object_count(); ++y) out.sets.push_back(g.sets[i(y)]);
  for (MorId f = 0; f < i.source->morphism_count(); ++f) out.arrows.push_back(g.arrows[i.map(f)]);
  return out;
}

}  // namespace catkit
