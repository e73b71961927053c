#pragma once

#include <string>
#include <vector>

#include "catkit/fincat.hpp"
#include "catkit/sets.hpp"
#include "catkit/setcalc.hpp"

namespace catkit {

enum class Variance { co, contra };

/// h^X = Mor(X, -) with post-composition (co), or h_X = Mor(-, X) with
/// pre-composition (contra). The contravariant functor is a diagram over
/// opposite(C).
inline Diagram hom_functor(const CategoryRef& c, const std::string& object, Variance variance) {
  const FinCategory& C = *c;
  ObjId x = C.object_id(object);
  const std::size_t n = C.object_count();
  auto pos = [&](ObjId a, ObjId b, MorId u) { return detail::hom_position(C, a, b, u); };
  Diagram d;
  if (variance == Variance::co) {
    d.shape = c;
    for (ObjId y = 0; y < n; ++y) {
      std::vector<std::string> els;
      for (MorId u : C.hom(x, y)) els.push_back(C.morphism(u).name);
      d.sets.emplace_back(C.object_name(y), std::move(els));
    }
    for (MorId g = 0; g < C.morphism_count(); ++g) {
      std::vector<std::size_t> a;
      for (MorId u : C.hom(x, C.src(g))) a.push_back(pos(x, C.dst(g), C.compose(g, u)));
      d.arrows.push_back(std::move(a));
    }
  } else {
    d.shape = share(opposite(C));
    for (ObjId y = 0; y < n; ++y) {
      std::vector<std::string> els;
      for (MorId u : C.hom(y, x)) els.push_back(C.morphism(u).name);
      d.sets.emplace_back(C.object_name(y), std::move(els));
    }
    // f^op: Z → Y for f: Y → Z acts by u ↦ u∘f
    for (MorId f = 0; f < C.morphism_count(); ++f) {
      std::vector<std::size_t> a;
      for (MorId u : C.hom(C.dst(f), x)) a.push_back(pos(C.src(f), x, C.compose(u, f)));
      d.arrows.push_back(std::move(a));
    }
  }
  validate_diagram(d);
  return d;
}

struct YonedaWitness {
  std::size_t nat_count = 0;
  std::size_t value_count = 0;
  /// evaluation[k] = ξ_k(X)(id_X) as an index into F(X)
  std::vector<std::size_t> evaluation;
};

/// Enumerates Nat(h^X, F) and checks that ξ ↦ ξ(X)(id_X) is a bijection onto
/// F(X). In contravariant mode F lives on opposite(C) and h_X is used.
inline YonedaWitness yoneda_check(const CategoryRef& c, const std::string& object, const Diagram& f,
                                  Variance variance, Budget& budget) {
  Diagram h = hom_functor(c, object, variance);
  if (*h.shape != *f.shape) fail(ErrorKind::EndpointMismatch, "F is not defined on the right category");
  ObjId x = c->object_id(object);
  std::size_t id_pos = detail::hom_position(*c, x, x, c->identity(x));
  YonedaWitness w;
  w.value_count = f.sets[x].size();
  std::vector<bool> hit(w.value_count, false);
  bool injective = true;
  for_each_nat(h, f, budget, [&](const SetNat& xi) {
    std::size_t v = xi[x][id_pos];
    if (hit[v]) injective = false;
    hit[v] = true;
    w.evaluation.push_back(v);
    ++w.nat_count;
    return true;
  });
  bool surjective = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  if (!injective || !surjective)
    fail(ErrorKind::NotBijective, "evaluation at id_" + object + " is not a bijection (" +
                                      std::to_string(w.nat_count) + " transformations, " +
                                      std::to_string(w.value_count) + " elements)");
  return w;
}

}  // namespace catkit
