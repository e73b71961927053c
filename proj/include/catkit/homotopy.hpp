#pragma once

// π₀, edge-path presentations of π₁, abelian invariants via Smith normal
// form, amalgamated pushouts of presentations, and Tietze reduction.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "catkit/algebra.hpp"
#include "catkit/error.hpp"
#include "catkit/setcalc.hpp"
#include "catkit/simplicial.hpp"

namespace catkit {

struct Letter {
  std::size_t gen = 0;
  bool inv = false;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};
using Word = std::vector<Letter>;

inline Word inverse(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(Letter{it->gen, !it->inv});
  return out;
}

inline Word concat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

struct GroupPresentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  friend bool operator==(const GroupPresentation&, const GroupPresentation&) = default;
};

inline void validate_presentation(const GroupPresentation& p) {
  std::set<std::string> seen;
  for (const auto& g : p.generators)
    if (!seen.insert(g).second) fail(ErrorKind::DuplicateName, "generator '" + g + "' repeated");
  for (const auto& r : p.relators)
    for (const Letter& l : r)
      if (l.gen >= p.generators.size()) fail(ErrorKind::Schema, "relator letter outside the generators");
}

/// "a b a^-1", or "1" for the empty word.
inline std::string format_word(const GroupPresentation& p, const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (const Letter& l : w) {
    if (!s.empty()) s += ' ';
    s += p.generators.at(l.gen) + (l.inv ? "^-1" : "");
  }
  return s;
}

inline Word free_reduce(const Word& w) {
  Word out;
  for (const Letter& l : w) {
    if (!out.empty() && out.back().gen == l.gen && out.back().inv != l.inv) out.pop_back();
    else out.push_back(l);
  }
  return out;
}

inline Word cyclic_reduce(Word w) {
  w = free_reduce(w);
  std::size_t a = 0, b = w.size();
  while (b - a >= 2 && w[a].gen == w[b - 1].gen && w[a].inv != w[b - 1].inv) {
    ++a;
    --b;
  }
  return Word(w.begin() + static_cast<std::ptrdiff_t>(a), w.begin() + static_cast<std::ptrdiff_t>(b));
}

// ---------------------------------------------------------------------------
// π₀

/// Vertices joined by nondegenerate edges, closed under symmetry and
/// transitivity. Blocks are ordered by their least vertex.
inline Partition pi0(const SimplicialSet& x) {
  detail::UnionFind uf(x.count(0));
  for (std::size_t e = 0; e < x.count(1); ++e) {
    const auto& f = x.faces(1, e);
    uf.unite(f[0].base, f[1].base);
  }
  std::map<std::size_t, std::vector<std::size_t>> blocks;
  for (std::size_t v = 0; v < x.count(0); ++v) blocks[uf.find(v)].push_back(v);
  Partition out;
  for (auto& [root, b] : blocks) out.push_back(std::move(b));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// π₁

struct Pi1Options {
  /// Walk edges in reverse name order when building the spanning tree.
  bool reversed_order = false;
};

/// Edge-path presentation: one generator per nondegenerate edge of the
/// base component, spanning-tree edges as relators, and ∂₂·∂₀·∂₁⁻¹ for
/// each nondegenerate 2-cell (edges go from ∂₁ to ∂₀).
inline GroupPresentation pi1(const SimplicialSet& x, const std::string& base, Pi1Options options = {}) {
  auto found = x.find(base);
  if (!found || found->first != 0) fail(ErrorKind::BaseNotFound, "no vertex named '" + base + "'");
  if (x.max_dim() < 2) fail(ErrorKind::DimensionTooLow, "π₁ needs the complex truncated at dimension ≥ 2");
  std::size_t b = found->second;
  Partition comps = pi0(x);
  std::vector<bool> in(x.count(0), false);
  for (const auto& block : comps)
    if (std::find(block.begin(), block.end(), b) != block.end())
      for (std::size_t v : block) in[v] = true;

  std::vector<std::size_t> edges;
  for (std::size_t e = 0; e < x.count(1); ++e)
    if (in[x.faces(1, e)[1].base]) edges.push_back(e);
  std::sort(edges.begin(), edges.end(), [&](std::size_t a, std::size_t c) {
    return options.reversed_order ? x.name(1, a) > x.name(1, c) : x.name(1, a) < x.name(1, c);
  });
  GroupPresentation p;
  std::vector<std::size_t> gen_of(x.count(1), kNone);
  // generators keep input order so presentations are comparable across options
  for (std::size_t e = 0; e < x.count(1); ++e)
    if (in[x.faces(1, e)[1].base]) {
      gen_of[e] = p.generators.size();
      p.generators.push_back(x.name(1, e));
    }
  // BFS spanning tree
  std::vector<bool> seen(x.count(0), false);
  std::queue<std::size_t> queue;
  seen[b] = true;
  queue.push(b);
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop();
    for (std::size_t e : edges) {
      std::size_t src = x.faces(1, e)[1].base, dst = x.faces(1, e)[0].base;
      std::size_t other;
      if (src == v) other = dst;
      else if (dst == v) other = src;
      else continue;
      if (seen[other]) continue;
      seen[other] = true;
      queue.push(other);
      p.relators.push_back(Word{Letter{gen_of[e], false}});
    }
  }
  auto letter = [&](const CellRef& f, bool inv, Word& w) {
    if (f.base_dim == 1) w.push_back(Letter{gen_of[f.base], inv});
  };
  for (std::size_t c = 0; c < x.count(2); ++c) {
    const auto& f = x.faces(2, c);
    CellRef v = x.act(x.cell(2, c), DeltaMap{0, 2, {0}});
    if (!in[v.base]) continue;
    Word w;
    letter(f[2], false, w);
    letter(f[0], false, w);
    letter(f[1], true, w);
    p.relators.push_back(std::move(w));
  }
  return p;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::CapExceeded, "integer overflow in Smith normal form");
  return r;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) fail(ErrorKind::CapExceeded, "integer overflow in Smith normal form");
  return r;
}

using Matrix = std::vector<std::vector<std::int64_t>>;

struct SmithForm {
  std::vector<std::int64_t> diagonal;  // nonzero invariant factors, divisibility order
  Matrix column_ops;                   // V with U·M·V = D
};

/// Smith normal form of an r×n integer matrix, tracking the column transform.
inline SmithForm smith(Matrix a, std::size_t cols) {
  const std::size_t rows = a.size();
  Matrix v(cols, std::vector<std::int64_t>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) v[i][i] = 1;
  auto col_combine = [&](std::size_t target, std::size_t source, std::int64_t q) {
    // column target -= q · column source
    for (std::size_t r = 0; r < rows; ++r) a[r][target] = checked_sub(a[r][target], checked_mul(q, a[r][source]));
    for (std::size_t r = 0; r < cols; ++r) v[r][target] = checked_sub(v[r][target], checked_mul(q, v[r][source]));
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
  };
  auto col_negate = [&](std::size_t i) {
    for (auto& row : a) row[i] = -row[i];
    for (auto& row : v) row[i] = -row[i];
  };
  auto row_combine = [&](std::size_t target, std::size_t source, std::int64_t q) {
    for (std::size_t c = 0; c < cols; ++c) a[target][c] = checked_sub(a[target][c], checked_mul(q, a[source][c]));
  };
  std::size_t t = 0;
  for (; t < rows && t < cols; ++t) {
    // pivot: smallest nonzero |entry| in the remaining block
    std::size_t pr = rows, pc = cols;
    for (std::size_t r = t; r < rows; ++r)
      for (std::size_t c = t; c < cols; ++c)
        if (a[r][c] != 0 && (pr == rows || std::llabs(a[r][c]) < std::llabs(a[pr][pc]))) {
          pr = r;
          pc = c;
        }
    if (pr == rows) break;
    std::swap(a[t], a[pr]);
    col_swap(t, pc);
    while (true) {
      bool clean = true;
      for (std::size_t r = t + 1; r < rows; ++r)
        if (a[r][t] != 0) {
          row_combine(r, t, a[r][t] / a[t][t]);
          if (a[r][t] != 0) {
            clean = false;
            std::swap(a[t], a[r]);
          }
        }
      for (std::size_t c = t + 1; c < cols; ++c)
        if (a[t][c] != 0) {
          col_combine(c, t, a[t][c] / a[t][t]);
          if (a[t][c] != 0) {
            clean = false;
            col_swap(t, c);
          }
        }
      if (!clean) continue;
      // divisibility: fold in any entry not divisible by the pivot
      bool divisible = true;
      for (std::size_t r = t + 1; r < rows && divisible; ++r)
        for (std::size_t c = t + 1; c < cols; ++c)
          if (a[r][c] % a[t][t] != 0) {
            for (std::size_t k = 0; k < cols; ++k) a[t][k] = a[t][k] + a[r][k];
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (a[t][t] < 0) col_negate(t);
  }
  SmithForm out;
  for (std::size_t i = 0; i < t; ++i) out.diagonal.push_back(a[i][i]);
  out.column_ops = std::move(v);
  return out;
}

inline Matrix exponent_matrix(const GroupPresentation& p) {
  Matrix m;
  for (const auto& r : p.relators) {
    std::vector<std::int64_t> row(p.generators.size(), 0);
    for (const Letter& l : r) row[l.gen] += l.inv ? -1 : 1;
    m.push_back(std::move(row));
  }
  return m;
}

}  // namespace detail

struct AbelianInvariants {
  std::size_t rank = 0;
  std::vector<std::int64_t> torsion;  // each > 1, each dividing the next

  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;

  /// "Z", "Z^2", "Z/2 x Z", "0"
  [[nodiscard]] std::string to_string() const {
    std::vector<std::string> parts;
    for (auto t : torsion) parts.push_back("Z/" + std::to_string(t));
    if (rank == 1) parts.push_back("Z");
    else if (rank > 1) parts.push_back("Z^" + std::to_string(rank));
    if (parts.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " x " : "") + parts[i];
    return s;
  }
};

inline AbelianInvariants abelian_invariants(const GroupPresentation& p) {
  auto form = detail::smith(detail::exponent_matrix(p), p.generators.size());
  AbelianInvariants inv;
  inv.rank = p.generators.size() - form.diagonal.size();
  for (auto d : form.diagonal)
    if (d > 1) inv.torsion.push_back(d);
  return inv;
}

// ---------------------------------------------------------------------------
// Homomorphisms and amalgamation

struct GroupHomSpec {
  GroupPresentation source;
  GroupPresentation target;
  std::vector<Word> images;  // per source generator

  [[nodiscard]] Word apply(const Word& w) const {
    Word out;
    for (const Letter& l : w) out = concat(std::move(out), l.inv ? inverse(images[l.gen]) : images[l.gen]);
    return free_reduce(out);
  }
};

/// Checks the images exist and that every source relator maps into the
/// relation lattice of the target after abelianization. Exact relator
/// preservation would need the word problem and is not attempted.
inline void check_hom_spec(const GroupHomSpec& h) {
  validate_presentation(h.source);
  validate_presentation(h.target);
  if (h.images.size() != h.source.generators.size())
    fail(ErrorKind::InvalidAssignment, "homomorphism must give an image for every generator");
  for (const auto& w : h.images)
    for (const Letter& l : w)
      if (l.gen >= h.target.generators.size()) fail(ErrorKind::InvalidAssignment, "image letter outside the target");
  auto form = detail::smith(detail::exponent_matrix(h.target), h.target.generators.size());
  const std::size_t n = h.target.generators.size();
  for (const auto& r : h.source.relators) {
    std::vector<std::int64_t> v(n, 0);
    for (const Letter& l : h.apply(r)) v[l.gen] += l.inv ? -1 : 1;
    // v lies in the row lattice iff (v·V)_i is a multiple of d_i, zero past the rank
    for (std::size_t c = 0; c < n; ++c) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < n; ++k) s += v[k] * form.column_ops[k][c];
      bool ok = c < form.diagonal.size() ? s % form.diagonal[c] == 0 : s == 0;
      if (!ok)
        fail(ErrorKind::InvalidAssignment,
             "relator " + format_word(h.source, r) + " maps to " + format_word(h.target, h.apply(r)) +
                 ", which is nontrivial in the abelianized target");
    }
  }
}

/// Amalgamated free product P1 *_{P0} P2. Generators of P2 whose names
/// collide with P1 get a prime.
inline GroupPresentation svk_pushout(const GroupHomSpec& phi1, const GroupHomSpec& phi2) {
  if (phi1.source != phi2.source) fail(ErrorKind::EndpointMismatch, "the two homomorphisms need a common source");
  check_hom_spec(phi1);
  check_hom_spec(phi2);
  GroupPresentation out;
  out.generators = phi1.target.generators;
  std::set<std::string> used(out.generators.begin(), out.generators.end());
  const std::size_t shift = out.generators.size();
  for (std::string g : phi2.target.generators) {
    while (used.count(g)) g += "'";
    used.insert(g);
    out.generators.push_back(g);
  }
  auto shifted = [&](Word w) {
    for (auto& l : w) l.gen += shift;
    return w;
  };
  out.relators = phi1.target.relators;
  for (const auto& r : phi2.target.relators) out.relators.push_back(shifted(r));
  for (std::size_t g = 0; g < phi1.source.generators.size(); ++g)
    out.relators.push_back(concat(phi1.images[g], inverse(shifted(phi2.images[g]))));
  return out;
}

/// Sound Tietze moves: free and cyclic reduction, dropping empty or repeated
/// relators, and eliminating a generator that occurs exactly once in some
/// relator. Each elimination spends one step.
inline GroupPresentation tietze_simplify(GroupPresentation p, std::size_t budget) {
  std::size_t steps = 0;
  while (true) {
    std::vector<Word> rels;
    std::set<Word> seen;
    for (auto& r : p.relators) {
      Word w = cyclic_reduce(r);
      if (w.empty()) continue;
      if (seen.insert(w).second && !seen.count(inverse(w))) rels.push_back(std::move(w));
    }
    p.relators = std::move(rels);
    if (steps >= budget) return p;
    // pick the shortest relator with a generator occurring once
    std::size_t best_r = kNone, best_pos = 0;
    for (std::size_t r = 0; r < p.relators.size(); ++r) {
      const Word& w = p.relators[r];
      if (best_r != kNone && w.size() >= p.relators[best_r].size()) continue;
      std::map<std::size_t, std::size_t> occurrences;
      for (const Letter& l : w) ++occurrences[l.gen];
      for (std::size_t i = 0; i < w.size(); ++i)
        if (occurrences[w[i].gen] == 1) {
          best_r = r;
          best_pos = i;
          break;
        }
    }
    if (best_r == kNone) return p;
    ++steps;
    // rotate so the letter leads: g^ε · rest = 1, so g = rest^{-ε}
    const Word& w = p.relators[best_r];
    Word rest(w.begin() + static_cast<std::ptrdiff_t>(best_pos) + 1, w.end());
    rest.insert(rest.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(best_pos));
    Letter g = w[best_pos];
    Word value = g.inv ? rest : inverse(rest);
    GroupPresentation next;
    std::vector<std::size_t> renumber(p.generators.size(), kNone);
    for (std::size_t i = 0; i < p.generators.size(); ++i)
      if (i != g.gen) {
        renumber[i] = next.generators.size();
        next.generators.push_back(p.generators[i]);
      }
    auto rewrite = [&](const Word& u) {
      Word out;
      for (const Letter& l : u) {
        if (l.gen == g.gen) {
          for (const Letter& m : l.inv ? inverse(value) : value) out.push_back(Letter{renumber[m.gen], m.inv});
        } else {
          out.push_back(Letter{renumber[l.gen], l.inv});
        }
      }
      return free_reduce(out);
    };
    for (std::size_t r = 0; r < p.relators.size(); ++r)
      if (r != best_r) next.relators.push_back(rewrite(p.relators[r]));
    p = std::move(next);
  }
}

}  // namespace catkit
