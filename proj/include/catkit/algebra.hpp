#pragma once

// Monoids, groups and actions in finite sets.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "catkit/error.hpp"
#include "catkit/sets.hpp"
#include "catkit/setcalc.hpp"

namespace catkit {

struct RawMonoid {
  std::vector<std::string> elements;
  std::vector<std::vector<std::string>> table;  // table[a][b] = a∗b
  std::optional<std::string> unit;
};

struct FinMonoid {
  FinSet carrier;
  std::vector<std::size_t> table;
  std::size_t unit = 0;

  [[nodiscard]] std::size_t size() const noexcept { return carrier.size(); }
  [[nodiscard]] std::size_t op(std::size_t a, std::size_t b) const {
    return table[a * carrier.size() + b];
  }
};

namespace detail {

inline std::vector<std::size_t> read_table(const FinSet& carrier,
                                           const std::vector<std::vector<std::string>>& rows,
                                           const FinSet& columns, const FinSet& values) {
  if (rows.size() != carrier.size())
    fail(ErrorKind::Schema, "table needs one row per element of '" + carrier.name() + "'");
  std::vector<std::size_t> out;
  for (const auto& row : rows) {
    if (row.size() != columns.size())
      fail(ErrorKind::Schema, "table row has " + std::to_string(row.size()) + " entries, expected " +
                                  std::to_string(columns.size()));
    for (const auto& v : row) {
      auto i = values.find(v);
      if (!i) fail(ErrorKind::Schema, "table entry '" + v + "' is not an element");
      out.push_back(*i);
    }
  }
  return out;
}

}  // namespace detail

inline FinMonoid make_monoid(FinSet carrier, std::vector<std::size_t> table,
                             std::optional<std::size_t> unit = std::nullopt) {
  const std::size_t n = carrier.size();
  FinMonoid m{std::move(carrier), std::move(table), 0};
  const FinSet& s = m.carrier;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (m.op(m.op(a, b), c) != m.op(a, m.op(b, c)))
          fail(ErrorKind::NotAssociative,
               "(" + s[a] + "∗" + s[b] + ")∗" + s[c] + " != " + s[a] + "∗(" + s[b] + "∗" + s[c] + ")");
  auto is_unit = [&](std::size_t e) {
    for (std::size_t x = 0; x < n; ++x)
      if (m.op(e, x) != x || m.op(x, e) != x) return false;
    return true;
  };
  if (unit) {
    if (!is_unit(*unit)) fail(ErrorKind::NoUnit, "'" + s[*unit] + "' is not a two-sided unit");
    m.unit = *unit;
    return m;
  }
  for (std::size_t e = 0; e < n; ++e)
    if (is_unit(e)) {
      m.unit = e;
      return m;
    }
  fail(ErrorKind::NoUnit, "no two-sided unit in '" + s.name() + "'");
}

inline FinMonoid check_monoid(const RawMonoid& raw) {
  FinSet carrier("M", raw.elements);
  auto table = detail::read_table(carrier, raw.table, carrier, carrier);
  std::optional<std::size_t> unit;
  if (raw.unit) {
    auto u = carrier.find(*raw.unit);
    if (!u) fail(ErrorKind::Schema, "unit '" + *raw.unit + "' is not an element");
    unit = *u;
  }
  return make_monoid(std::move(carrier), std::move(table), unit);
}

/// Inversion table, or NotAGroup naming an element without a two-sided inverse.
inline std::vector<std::size_t> check_group(const FinMonoid& m) {
  std::vector<std::size_t> inv(m.size(), kNone);
  for (std::size_t x = 0; x < m.size(); ++x) {
    for (std::size_t y = 0; y < m.size(); ++y)
      if (m.op(x, y) == m.unit && m.op(y, x) == m.unit) {
        inv[x] = y;
        break;
      }
    if (inv[x] == kNone) fail(ErrorKind::NotAGroup, "'" + m.carrier[x] + "' has no inverse");
  }
  return inv;
}

/// ℤ/n under addition, elements named 0..n-1.
inline FinMonoid cyclic_group(std::size_t n) {
  FinSet carrier = FinSet::range(n, "Z/" + std::to_string(n));
  std::vector<std::size_t> table;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table.push_back((a + b) % n);
  return make_monoid(std::move(carrier), std::move(table), 0);
}

// ---------------------------------------------------------------------------
// Actions

struct RawAction {
  RawMonoid monoid;
  std::vector<std::string> space;
  std::vector<std::vector<std::string>> act;  // act[m][y] = m·y
};

struct FinAction {
  FinMonoid actor;
  FinSet space;
  std::vector<std::size_t> table;

  [[nodiscard]] std::size_t act(std::size_t m, std::size_t y) const {
    return table[m * space.size() + y];
  }
};

inline FinAction make_action(FinMonoid actor, FinSet space, std::vector<std::size_t> table) {
  FinAction a{std::move(actor), std::move(space), std::move(table)};
  const auto& M = a.actor;
  const auto& Y = a.space;
  if (a.table.size() != M.size() * Y.size()) fail(ErrorKind::Schema, "action table has wrong size");
  for (std::size_t y = 0; y < Y.size(); ++y)
    if (a.act(M.unit, y) != y)
      fail(ErrorKind::UnitAxiomFailed, M.carrier[M.unit] + "·" + Y[y] + " = " + Y[a.act(M.unit, y)]);
  for (std::size_t x = 0; x < M.size(); ++x)
    for (std::size_t x2 = 0; x2 < M.size(); ++x2)
      for (std::size_t y = 0; y < Y.size(); ++y)
        if (a.act(M.op(x, x2), y) != a.act(x, a.act(x2, y)))
          fail(ErrorKind::AssocAxiomFailed, "(" + M.carrier[x] + "∗" + M.carrier[x2] + ")·" + Y[y] +
                                                " != " + M.carrier[x] + "·(" + M.carrier[x2] + "·" +
                                                Y[y] + ")");
  return a;
}

inline FinAction check_action(const RawAction& raw) {
  FinMonoid m = check_monoid(raw.monoid);
  FinSet space("Y", raw.space);
  auto table = detail::read_table(m.carrier, raw.act, space, space);
  return make_action(std::move(m), std::move(space), std::move(table));
}

/// x ↦ α_x as permutations of the space; a homomorphism into Aut(Y).
inline std::vector<std::vector<std::size_t>> action_to_aut_hom(const FinAction& a) {
  check_group(a.actor);
  std::vector<std::vector<std::size_t>> perms;
  for (std::size_t x = 0; x < a.actor.size(); ++x) {
    std::vector<std::size_t> p;
    std::vector<bool> seen(a.space.size(), false);
    for (std::size_t y = 0; y < a.space.size(); ++y) {
      std::size_t v = a.act(x, y);
      if (seen[v]) fail(ErrorKind::NotBijective, "α_" + a.actor.carrier[x] + " is not a permutation");
      seen[v] = true;
      p.push_back(v);
    }
    perms.push_back(std::move(p));
  }
  return perms;
}

using Partition = std::vector<std::vector<std::size_t>>;

namespace detail {

inline Partition blocks_from_labels(const std::vector<std::size_t>& label) {
  Partition blocks;
  std::vector<std::size_t> block_of;
  for (std::size_t y = 0; y < label.size(); ++y) {
    if (label[y] >= block_of.size()) block_of.resize(label[y] + 1, kNone);
    if (block_of[label[y]] == kNone) {
      block_of[label[y]] = blocks.size();
      blocks.emplace_back();
    }
    blocks[block_of[label[y]]].push_back(y);
  }
  return blocks;
}

}  // namespace detail

/// Orbits as the pushout of π₂, act: M×Y ⇉ Y, read off on the first copy of Y.
inline Partition orbits_by_pushout(const FinAction& a) {
  ConeResult prod = product({a.actor.carrier, a.space});
  FinFunction proj = prod.legs[1];
  FinFunction act{prod.apex, a.space, {}};
  for (std::size_t t = 0; t < prod.apex.size(); ++t)
    act.map.push_back(a.act(prod.legs[0].map[t], prod.legs[1].map[t]));
  ConeResult po = pushout(proj, act);
  return detail::blocks_from_labels(po.legs[1].map);
}

/// Orbits as the equivalence closure of y ~ m·y.
inline Partition orbits_by_closure(const FinAction& a) {
  const std::size_t n = a.space.size();
  std::vector<std::size_t> label(n, kNone);
  std::size_t next = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (label[start] != kNone) continue;
    // forward reachability plus back edges gives the symmetric closure
    std::vector<std::size_t> stack{start};
    label[start] = next;
    while (!stack.empty()) {
      std::size_t y = stack.back();
      stack.pop_back();
      for (std::size_t z = 0; z < n; ++z) {
        if (label[z] != kNone) continue;
        bool linked = false;
        for (std::size_t m = 0; m < a.actor.size() && !linked; ++m)
          linked = a.act(m, y) == z || a.act(m, z) == y;
        if (linked) {
          label[z] = next;
          stack.push_back(z);
        }
      }
    }
    ++next;
  }
  return detail::blocks_from_labels(label);
}

/// Orbit partition; both constructions are computed and must agree.
inline Partition orbit(const FinAction& a) {
  Partition p = orbits_by_pushout(a);
  if (p != orbits_by_closure(a))
    fail(ErrorKind::NotBijective, "pushout and closure orbits disagree");
  return p;
}

// ---------------------------------------------------------------------------
// Eckmann–Hilton

struct EckmannHiltonReport {
  struct Row {
    std::size_t size = 0;
    std::size_t interchange_pairs = 0;   // (⋆, ∘) pairs satisfying interchange
    std::size_t distinct_units = 0;      // pairs found with different units
    std::size_t counterexamples = 0;     // pairs where ⋆≠∘, or not associative/commutative
  };
  std::vector<Row> rows;
  [[nodiscard]] bool passed() const {
    return std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.counterexamples == 0; });
  }
};

/// Exhaustive search over pairs of unital operations on {0..n-1}, n ≤
/// max_size, satisfying (a⋆b)∘(c⋆d) = (a∘c)⋆(b∘d). Units are chosen
/// independently for the two operations.
inline EckmannHiltonReport eckmann_hilton_scan(std::size_t max_size, Budget& budget) {
  if (max_size > 4) fail(ErrorKind::BadIndices, "max_size must be at most 4");
  EckmannHiltonReport report;
  for (std::size_t n = 1; n <= max_size; ++n) {
    EckmannHiltonReport::Row row;
    row.size = n;
    std::vector<std::size_t> star(n * n), circ(n * n);
    for (std::size_t u1 = 0; u1 < n; ++u1)
      for (std::size_t u2 = 0; u2 < n; ++u2) {
        std::fill(star.begin(), star.end(), kNone);
        std::fill(circ.begin(), circ.end(), kNone);
        for (std::size_t x = 0; x < n; ++x) {
          star[u1 * n + x] = star[x * n + u1] = x;
          circ[u2 * n + x] = circ[x * n + u2] = x;
        }
        std::vector<std::size_t*> slots;
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) {
            if (a != u1 && b != u1) slots.push_back(&star[a * n + b]);
            if (a != u2 && b != u2) slots.push_back(&circ[a * n + b]);
          }
        auto consistent = [&] {
          for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
              std::size_t ab = star[a * n + b];
              if (ab == kNone) continue;
              for (std::size_t c = 0; c < n; ++c) {
                std::size_t ac = circ[a * n + c];
                if (ac == kNone) continue;
                for (std::size_t d = 0; d < n; ++d) {
                  std::size_t cd = star[c * n + d], bd = circ[b * n + d];
                  if (cd == kNone || bd == kNone) continue;
                  std::size_t lhs = circ[ab * n + cd], rhs = star[ac * n + bd];
                  if (lhs != kNone && rhs != kNone && lhs != rhs) return false;
                }
              }
            }
          return true;
        };
        auto conclusions_hold = [&] {
          if (star != circ) return false;
          for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
              if (star[a * n + b] != star[b * n + a]) return false;
              for (std::size_t c = 0; c < n; ++c)
                if (star[star[a * n + b] * n + c] != star[a * n + star[b * n + c]]) return false;
            }
          return true;
        };
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
          budget.spend();
          if (i == slots.size()) {
            ++row.interchange_pairs;
            if (u1 != u2) ++row.distinct_units;
            if (!conclusions_hold()) ++row.counterexamples;
            return;
          }
          for (std::size_t v = 0; v < n; ++v) {
            *slots[i] = v;
            if (consistent()) rec(i + 1);
          }
          *slots[i] = kNone;
        };
        if (consistent()) rec(0);
      }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace catkit
