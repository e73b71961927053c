#pragma once

// Brute-force references shared by the unit tests and the acceptance run.

#include "support/gen.hpp"

namespace catkit::testing {

// F(c, -) as a diagram on D, for F on C × D.
inline Diagram slice_first(const Diagram& f, const FinCategory& C, const CategoryRef& D, ObjId c) {
  Diagram out{D, {}, {}};
  for (ObjId y = 0; y < D->object_count(); ++y) out.sets.push_back(f.sets[pair_object(*D, c, y)]);
  for (MorId g = 0; g < D->morphism_count(); ++g) out.arrows.push_back(f.arrows[pair_morphism(*D, C.identity(c), g)]);
  return out;
}

// F(-, d) as a diagram on C.
inline Diagram slice_second(const Diagram& f, const CategoryRef& C, const FinCategory& D, ObjId d) {
  Diagram out{C, {}, {}};
  for (ObjId x = 0; x < C->object_count(); ++x) out.sets.push_back(f.sets[pair_object(D, x, d)]);
  for (MorId g = 0; g < C->morphism_count(); ++g) out.arrows.push_back(f.arrows[pair_morphism(D, g, D.identity(d))]);
  return out;
}

// K(a, b) = Nat(slice(F, a), slice(G, b)) as a bifunctor on the outer
// category; its end is the iterated end of Set(F, G).
inline Bifunctor iterated(const CategoryRef& outer, const std::function<Diagram(const Diagram&, ObjId)>& slice,
                   const std::function<std::vector<std::size_t>(const Diagram&, MorId, std::size_t)>& act,
                   const Diagram& f, const Diagram& g) {
  const FinCategory& O = *outer;
  const std::size_t n = O.object_count(), m = O.morphism_count();
  std::vector<std::vector<SetNat>> nats(n * n);
  std::vector<FinSet> sets;
  Budget budget;
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = 0; b < n; ++b) {
      nats[a * n + b] = enumerate_nat(slice(f, a), slice(g, b), budget);
      std::vector<std::string> els;
      for (std::size_t k = 0; k < nats[a * n + b].size(); ++k) els.push_back("k" + std::to_string(k));
      sets.emplace_back("K", std::move(els));
    }
  auto index = [&](ObjId a, ObjId b, const SetNat& alpha) {
    const auto& v = nats[a * n + b];
    return static_cast<std::size_t>(std::find(v.begin(), v.end(), alpha) - v.begin());
  };
  std::vector<std::vector<std::size_t>> left(m * n), right(n * m);
  for (MorId u = 0; u < m; ++u)
    for (ObjId b = 0; b < n; ++b) {
      // α ↦ α ∘ F(u, -) : K(dst u, b) → K(src u, b)
      for (const SetNat& alpha : nats[O.dst(u) * n + b]) {
        SetNat beta(alpha.size());
        for (std::size_t y = 0; y < alpha.size(); ++y)
          for (std::size_t e : act(f, u, y)) beta[y].push_back(alpha[y][e]);
        left[u * n + b].push_back(index(O.src(u), b, beta));
      }
    }
  for (ObjId a = 0; a < n; ++a)
    for (MorId u = 0; u < m; ++u) {
      // α ↦ G(u, -) ∘ α : K(a, src u) → K(a, dst u)
      for (const SetNat& alpha : nats[a * n + O.src(u)]) {
        SetNat beta(alpha.size());
        for (std::size_t y = 0; y < alpha.size(); ++y)
          for (std::size_t e : alpha[y]) beta[y].push_back(act(g, u, y)[e]);
        right[a * m + u].push_back(index(a, O.dst(u), beta));
      }
    }
  return make_bifunctor(outer, std::move(sets), left, right);
}

struct Op {
  std::vector<std::size_t> t;
  std::size_t n;
  std::size_t operator()(std::size_t a, std::size_t b) const { return t[a * n + b]; }
};

// All unital binary operations on {0..n-1}, each listed once.
inline std::vector<Op> unital_ops(std::size_t n) {
  std::vector<Op> out;
  for (std::size_t u = 0; u < n; ++u) {
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (a != u && b != u) cells.emplace_back(a, b);
    std::vector<std::size_t> v(cells.size(), 0);
    for (;;) {
      Op op{std::vector<std::size_t>(n * n), n};
      for (std::size_t a = 0; a < n; ++a) {
        op.t[u * n + a] = a;
        op.t[a * n + u] = a;
      }
      for (std::size_t i = 0; i < cells.size(); ++i) op.t[cells[i].first * n + cells[i].second] = v[i];
      out.push_back(op);
      std::size_t i = 0;
      while (i < v.size() && ++v[i] == n) v[i++] = 0;
      if (i == v.size()) break;
    }
  }
  return out;
}

// Interchange pairs among unital operations on n points, and how many of
// them are not a single commutative operation.
inline std::pair<std::size_t, std::size_t> interchange_brute_force(std::size_t n) {
  auto ops = unital_ops(n);
  std::size_t pairs = 0, bad = 0;
  for (const auto& s : ops)
    for (const auto& c : ops) {
      bool interchange = true;
      for (std::size_t a = 0; a < n && interchange; ++a)
        for (std::size_t b = 0; b < n && interchange; ++b)
          for (std::size_t x = 0; x < n && interchange; ++x)
            for (std::size_t y = 0; y < n && interchange; ++y)
              interchange = c(s(a, b), s(x, y)) == s(c(a, x), c(b, y));
      if (!interchange) continue;
      ++pairs;
      if (s.t != c.t) ++bad;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (s(a, b) != s(b, a)) ++bad;
    }
  return {pairs, bad};
}

inline bool inverts(const FinFunctor& f, const MorphismClass& w) {
  for (MorId m = 0; m < w.size(); ++m)
    if (w[m] && !is_isomorphism(*f.target, f.map(m))) return false;
  return true;
}

// Functors C → D inverting W correspond one to one with functors C[W⁻¹] → D
// by precomposition with p.
inline bool universal_against(const Localization& loc, const MarkedCategory& m, const CategoryRef& d) {
  Budget budget;
  std::set<std::pair<std::vector<ObjId>, std::vector<MorId>>> inverting, induced;
  for (const auto& f : enumerate_functors(m.base, d, budget))
    if (inverts(f, m.weq)) inverting.insert({f.on_objects, f.on_morphisms});
  std::size_t count = 0;
  for (const auto& g : enumerate_functors(loc.category, d, budget)) {
    auto h = compose(g, loc.p);
    induced.insert({h.on_objects, h.on_morphisms});
    ++count;
  }
  return induced == inverting && count == induced.size();
}

}  // namespace catkit::testing
