#pragma once

// Weak equivalences, localization by adjoining formal inverses, lifting
// problems, and a model-structure checker for finite categories.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "catkit/error.hpp"
#include "catkit/fincat.hpp"

namespace catkit {

using MorphismClass = std::vector<bool>;  // indexed by MorId

inline MorphismClass class_of(const FinCategory& c, const std::vector<std::string>& names) {
  MorphismClass k(c.morphism_count(), false);
  for (const auto& n : names) k[c.morphism_id(n)] = true;
  return k;
}

inline std::vector<std::string> class_names(const FinCategory& c, const MorphismClass& k) {
  std::vector<std::string> out;
  for (MorId f = 0; f < c.morphism_count(); ++f)
    if (k[f]) out.push_back(c.morphism(f).name);
  return out;
}

struct MarkedCategory {
  CategoryRef base;
  MorphismClass weq;
};

/// Least class containing the seed and every isomorphism, closed under
/// 2-of-3.
inline MarkedCategory saturate_two_of_three(const CategoryRef& c, const MorphismClass& seed) {
  const FinCategory& C = *c;
  if (seed.size() != C.morphism_count()) fail(ErrorKind::BadIndices, "seed does not match the category");
  MorphismClass w = seed;
  for (MorId f = 0; f < C.morphism_count(); ++f)
    if (is_isomorphism(C, f)) w[f] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (MorId g = 0; g < C.morphism_count(); ++g)
      for (MorId f = 0; f < C.morphism_count(); ++f) {
        if (!C.composable(g, f)) continue;
        MorId h = C.compose(g, f);
        int in = int(w[f]) + int(w[g]) + int(w[h]);
        if (in == 2) {
          w[f] = w[g] = w[h] = true;
          changed = true;
        }
      }
  }
  return {c, w};
}

// ---------------------------------------------------------------------------
// Localization

struct Localization {
  CategoryRef category;
  FinFunctor p;
  /// representative zig-zag per morphism, as letter names in path order
  std::vector<std::vector<std::string>> words;
};

namespace detail {

/// Coset enumeration of the representable Ho(C)(X, -) for one object X.
/// Letters are the non-identity morphisms of C and formal inverses of the
/// non-identity weak equivalences; relations are C's composition table and
/// w·w⁻¹ = w⁻¹·w = 1.
class HomEnumerator {
 public:
  struct LetterInfo {
    std::string name;
    ObjId src, dst;
  };
  struct Relation {
    ObjId at;
    std::vector<std::size_t> lhs, rhs;
  };

  HomEnumerator(const std::vector<LetterInfo>& letters, const std::vector<Relation>& relations,
                const std::vector<std::vector<std::size_t>>& letters_from, std::size_t cap)
      : letters_(letters), relations_(relations), letters_from_(letters_from), cap_(cap) {}

  /// Nodes are morphisms out of `start`.
  void run(ObjId start) {
    new_node(start);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (!alive(i)) continue;
      for (const Relation& r : relations_) {
        if (r.at != nodes_[i].obj) continue;
        std::size_t a = trace(i, r.lhs), b = trace(i, r.rhs);
        merge(a, b);
        if (!alive(i)) break;
      }
      if (!alive(i)) continue;
      for (std::size_t l : letters_from_[nodes_[i].obj])
        if (edge(i, l) == kNone) set_edge(i, l, new_node(letters_[l].dst));
    }
    if (live_ > cap_) exceeded();
  }

  [[nodiscard]] std::size_t find(std::size_t n) {
    while (parent_[n] != n) n = parent_[n] = parent_[parent_[n]];
    return n;
  }
  [[nodiscard]] bool alive(std::size_t n) const { return parent_[n] == n; }
  [[nodiscard]] ObjId object(std::size_t n) const { return nodes_[n].obj; }
  [[nodiscard]] std::size_t edge(std::size_t n, std::size_t letter) {
    auto it = nodes_[n].edges.find(letter);
    return it == nodes_[n].edges.end() ? kNone : find(it->second);
  }

  /// Live nodes in shortlex order of their shortest words, with those words.
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> shortlex() {
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> out;
    std::map<std::size_t, bool> seen;
    std::queue<std::pair<std::size_t, std::vector<std::size_t>>> q;
    q.push({find(0), {}});
    seen[find(0)] = true;
    while (!q.empty()) {
      auto [n, w] = q.front();
      q.pop();
      out.emplace_back(n, w);
      for (std::size_t l : letters_from_[nodes_[n].obj]) {
        std::size_t m = edge(n, l);
        if (seen[m]) continue;
        seen[m] = true;
        auto w2 = w;
        w2.push_back(l);
        q.push({m, std::move(w2)});
      }
    }
    return out;
  }

  std::size_t trace(std::size_t n, const std::vector<std::size_t>& word) {
    std::size_t cur = find(n);
    for (std::size_t l : word) {
      std::size_t next = edge(cur, l);
      if (next == kNone) {
        next = new_node(letters_[l].dst);
        set_edge(cur, l, next);
      }
      cur = find(next);
    }
    return cur;
  }

 private:
  struct Node {
    ObjId obj;
    std::map<std::size_t, std::size_t> edges;
  };

  std::size_t new_node(ObjId obj) {
    // intermediate tables may overshoot before coincidences collapse them
    if (++live_ > 16 * cap_ + 256 || nodes_.size() >= 256 * cap_ + 4096) exceeded();
    nodes_.push_back(Node{obj, {}});
    parent_.push_back(parent_.size());
    return nodes_.size() - 1;
  }
  [[noreturn]] void exceeded() const {
    fail(ErrorKind::CapExceeded, "more than " + std::to_string(cap_) + " zig-zag classes out of one object");
  }
  void set_edge(std::size_t n, std::size_t l, std::size_t m) { nodes_[find(n)].edges[l] = m; }

  void merge(std::size_t a, std::size_t b) {
    std::queue<std::pair<std::size_t, std::size_t>> pending;
    pending.push({a, b});
    while (!pending.empty()) {
      auto [x, y] = pending.front();
      pending.pop();
      x = find(x);
      y = find(y);
      if (x == y) continue;
      if (x > y) std::swap(x, y);
      parent_[y] = x;
      --live_;
      for (const auto& [l, t] : nodes_[y].edges) {
        auto it = nodes_[x].edges.find(l);
        if (it == nodes_[x].edges.end()) nodes_[x].edges[l] = t;
        else pending.push({it->second, t});
      }
      nodes_[y].edges.clear();
    }
  }

  const std::vector<LetterInfo>& letters_;
  const std::vector<Relation>& relations_;
  const std::vector<std::vector<std::size_t>>& letters_from_;
  std::size_t cap_;
  std::size_t live_ = 0;
  std::vector<Node> nodes_;
  std::vector<std::size_t> parent_;
};

}  // namespace detail

/// C[W⁻¹] with the localization functor p. Morphisms are named by their
/// shortlex-least zig-zag, letters joined by ';' in path order, with w^-1
/// for a formal inverse. Fails with CapExceeded when some object has more
/// than `cap` morphisms out of it.
inline Localization localize(const MarkedCategory& m, std::size_t cap = 1000) {
  const FinCategory& C = *m.base;
  using E = detail::HomEnumerator;
  std::vector<E::LetterInfo> letters;
  std::vector<std::size_t> letter_of(C.morphism_count(), kNone), inverse_letter(C.morphism_count(), kNone);
  for (MorId f = 0; f < C.morphism_count(); ++f)
    if (!C.is_identity(f)) {
      letter_of[f] = letters.size();
      letters.push_back({C.morphism(f).name, C.src(f), C.dst(f)});
    }
  for (MorId f = 0; f < C.morphism_count(); ++f)
    if (m.weq.at(f) && !C.is_identity(f)) {
      inverse_letter[f] = letters.size();
      letters.push_back({C.morphism(f).name + "^-1", C.dst(f), C.src(f)});
    }
  std::vector<std::vector<std::size_t>> letters_from(C.object_count());
  for (std::size_t l = 0; l < letters.size(); ++l) letters_from[letters[l].src].push_back(l);
  auto word_of = [&](MorId f) {
    return C.is_identity(f) ? std::vector<std::size_t>{} : std::vector<std::size_t>{letter_of[f]};
  };
  std::vector<E::Relation> relations;
  for (MorId g = 0; g < C.morphism_count(); ++g)
    for (MorId f = 0; f < C.morphism_count(); ++f)
      if (C.composable(g, f) && !C.is_identity(f) && !C.is_identity(g))
        relations.push_back({C.src(f), {letter_of[f], letter_of[g]}, word_of(C.compose(g, f))});
  for (MorId w = 0; w < C.morphism_count(); ++w)
    if (inverse_letter[w] != kNone) {
      relations.push_back({C.src(w), {letter_of[w], inverse_letter[w]}, {}});
      relations.push_back({C.dst(w), {inverse_letter[w], letter_of[w]}, {}});
    }

  const std::size_t n = C.object_count();
  std::vector<std::unique_ptr<E>> tables;
  std::vector<std::vector<std::pair<std::size_t, std::vector<std::size_t>>>> homs;
  std::vector<std::map<std::size_t, MorId>> mor_of_node(n);
  std::vector<Morphism> morphisms;
  std::vector<MorId> identities(n);
  std::vector<std::vector<std::string>> words;
  for (ObjId x = 0; x < n; ++x) {
    tables.push_back(std::make_unique<E>(letters, relations, letters_from, cap));
    tables.back()->run(x);
    homs.push_back(tables.back()->shortlex());
    for (const auto& [node, w] : homs.back()) {
      ObjId y = tables.back()->object(node);
      std::string name;
      std::vector<std::string> parts;
      for (std::size_t l : w) parts.push_back(letters[l].name);
      if (w.empty()) {
        name = identity_name(C.object_name(x));
        identities[x] = morphisms.size();
      } else {
        for (std::size_t i = 0; i < parts.size(); ++i) name += (i ? ";" : "") + parts[i];
      }
      mor_of_node[x][node] = morphisms.size();
      morphisms.push_back(Morphism{name, x, y});
      words.push_back(std::move(parts));
    }
  }
  // composition v∘u: follow v's word from u's node
  const std::size_t total = morphisms.size();
  std::vector<std::size_t> node_of(total);
  std::vector<std::vector<std::size_t>> letter_words(total);
  {
    std::size_t k = 0;
    for (ObjId x = 0; x < n; ++x)
      for (const auto& [node, w] : homs[x]) {
        node_of[k] = node;
        letter_words[k++] = w;
      }
  }
  std::vector<MorId> table(total * total, kNone);
  for (MorId u = 0; u < total; ++u)
    for (MorId v = 0; v < total; ++v) {
      if (morphisms[u].dst != morphisms[v].src) continue;
      ObjId x = morphisms[u].src;
      std::size_t node = tables[x]->trace(node_of[u], letter_words[v]);
      table[v * total + u] = mor_of_node[x].at(tables[x]->find(node));
    }
  Localization out;
  out.category = share(FinCategory::make(C.objects(), std::move(morphisms), std::move(identities), std::move(table)));
  out.words = std::move(words);
  out.p = FinFunctor{m.base, out.category, {}, {}};
  for (ObjId x = 0; x < n; ++x) out.p.on_objects.push_back(x);
  for (MorId f = 0; f < C.morphism_count(); ++f) {
    ObjId x = C.src(f);
    std::size_t node = tables[x]->trace(0, word_of(f));
    out.p.on_morphisms.push_back(mor_of_node[x].at(tables[x]->find(node)));
  }
  validate_functor(out.p);
  return out;
}

// ---------------------------------------------------------------------------
// Lifting

/// A commuting square u: A → X, v: B → Y with p∘u = v∘i.
struct Square {
  MorId i, p, top, bottom;
};

/// Every commuting square from i to p has a diagonal h: B → X with
/// h∘i = top and p∘h = bottom; otherwise the first square without one.
inline std::optional<Square> square_lifts(const FinCategory& c, MorId i, MorId p) {
  ObjId a = c.src(i), b = c.dst(i), x = c.src(p), y = c.dst(p);
  for (MorId u : c.hom(a, x))
    for (MorId v : c.hom(b, y)) {
      if (c.compose(p, u) != c.compose(v, i)) continue;
      bool lifted = false;
      for (MorId h : c.hom(b, x))
        if (c.compose(h, i) == u && c.compose(p, h) == v) {
          lifted = true;
          break;
        }
      if (!lifted) return Square{i, p, u, v};
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Model structures

struct ModelData {
  CategoryRef base;
  MorphismClass weq, fib, cof;
};

struct AxiomResult {
  std::string name;
  bool checked = true;
  bool passed = true;
  std::string witness{};
};

struct ModelReport {
  std::vector<AxiomResult> axioms;

  [[nodiscard]] bool passed() const {
    return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return !a.checked || a.passed; });
  }
  [[nodiscard]] const AxiomResult* first_failure() const {
    for (const auto& a : axioms)
      if (a.checked && !a.passed) return &a;
    return nullptr;
  }
};

/// f: A → B is a retract of g: C → D via i, r, j, s.
struct RetractWitness {
  MorId i, r, j, s;
};

inline std::optional<RetractWitness> find_retraction(const FinCategory& c, MorId f, MorId g) {
  ObjId a = c.src(f), b = c.dst(f), x = c.src(g), y = c.dst(g);
  for (MorId i : c.hom(a, x))
    for (MorId r : c.hom(x, a)) {
      if (c.compose(r, i) != c.identity(a)) continue;
      for (MorId j : c.hom(b, y))
        for (MorId s : c.hom(y, b)) {
          if (c.compose(s, j) != c.identity(b)) continue;
          if (c.compose(g, i) == c.compose(j, f) && c.compose(f, r) == c.compose(s, g)) return RetractWitness{i, r, j, s};
        }
    }
  return std::nullopt;
}

inline ModelReport check_model(const ModelData& m) {
  const FinCategory& C = *m.base;
  const std::size_t M = C.morphism_count();
  if (m.weq.size() != M || m.fib.size() != M || m.cof.size() != M)
    fail(ErrorKind::BadIndices, "class sizes do not match the category");
  auto nm = [&](MorId f) { return C.morphism(f).name; };
  ModelReport report;

  {
    AxiomResult a{"identities"};
    for (ObjId x = 0; x < C.object_count() && a.passed; ++x) {
      MorId id = C.identity(x);
      const char* missing = !m.weq[id] ? "weq" : !m.fib[id] ? "fib" : !m.cof[id] ? "cof" : nullptr;
      if (missing) {
        a.passed = false;
        a.witness = nm(id) + " is not in " + missing;
      }
    }
    report.axioms.push_back(a);
  }
  {
    AxiomResult a{"isomorphisms-are-weak-equivalences"};
    for (MorId f = 0; f < M && a.passed; ++f)
      if (is_isomorphism(C, f) && !m.weq[f]) {
        a.passed = false;
        a.witness = nm(f) + " is an isomorphism outside weq";
      }
    report.axioms.push_back(a);
  }
  {
    AxiomResult a{"two-of-three"};
    for (MorId g = 0; g < M && a.passed; ++g)
      for (MorId f = 0; f < M && a.passed; ++f) {
        if (!C.composable(g, f)) continue;
        MorId h = C.compose(g, f);
        if (int(m.weq[f]) + int(m.weq[g]) + int(m.weq[h]) == 2) {
          a.passed = false;
          a.witness = "f=" + nm(f) + ", g=" + nm(g) + ", g∘f=" + nm(h) + ": exactly two are weak equivalences";
        }
      }
    report.axioms.push_back(a);
  }
  {
    AxiomResult a{"retracts"};
    const std::pair<const char*, const MorphismClass*> classes[] = {{"weq", &m.weq}, {"fib", &m.fib}, {"cof", &m.cof}};
    for (const auto& [label, k] : classes) {
      for (MorId g = 0; g < M && a.passed; ++g) {
        if (!(*k)[g]) continue;
        for (MorId f = 0; f < M && a.passed; ++f) {
          if ((*k)[f]) continue;
          if (auto w = find_retraction(C, f, g)) {
            a.passed = false;
            a.witness = nm(f) + " is a retract of " + nm(g) + " in " + label + " (i=" + nm(w->i) + ", r=" + nm(w->r) +
                        ", j=" + nm(w->j) + ", s=" + nm(w->s) + ") but is not in " + label;
          }
        }
      }
    }
    report.axioms.push_back(a);
  }
  auto lifting = [&](const char* name, auto left, auto right) {
    AxiomResult a{name};
    for (MorId i = 0; i < M && a.passed; ++i) {
      if (!left(i)) continue;
      for (MorId p = 0; p < M && a.passed; ++p) {
        if (!right(p)) continue;
        if (auto sq = square_lifts(C, i, p)) {
          a.passed = false;
          a.witness = "no lift for i=" + nm(i) + ", p=" + nm(p) + " with top " + nm(sq->top) + " and bottom " +
                      nm(sq->bottom);
        }
      }
    }
    report.axioms.push_back(a);
  };
  lifting("lifting-cof-vs-acyclic-fib", [&](MorId f) { return bool(m.cof[f]); },
          [&](MorId f) { return m.fib[f] && m.weq[f]; });
  lifting("lifting-acyclic-cof-vs-fib", [&](MorId f) { return m.cof[f] && m.weq[f]; },
          [&](MorId f) { return bool(m.fib[f]); });
  auto factorization = [&](const char* name, auto first, auto second) {
    AxiomResult a{name};
    for (MorId f = 0; f < M && a.passed; ++f) {
      bool found = false;
      for (ObjId z = 0; z < C.object_count() && !found; ++z)
        for (MorId i : C.hom(C.src(f), z)) {
          if (!first(i)) continue;
          for (MorId p : C.hom(z, C.dst(f)))
            if (second(p) && C.compose(p, i) == f) {
              found = true;
              break;
            }
          if (found) break;
        }
      if (!found) {
        a.passed = false;
        a.witness = nm(f) + " has no factorization";
      }
    }
    report.axioms.push_back(a);
  };
  factorization("factorization-cof-then-acyclic-fib", [&](MorId f) { return bool(m.cof[f]); },
                [&](MorId f) { return m.fib[f] && m.weq[f]; });
  factorization("factorization-acyclic-cof-then-fib", [&](MorId f) { return m.cof[f] && m.weq[f]; },
                [&](MorId f) { return bool(m.fib[f]); });
  report.axioms.push_back(AxiomResult{"functorial-factorization", false, false, "not checked"});
  return report;
}

/// weq = isomorphisms, fib = cof = every morphism.
inline ModelData trivial_model(const CategoryRef& c) {
  ModelData m{c, MorphismClass(c->morphism_count(), false), MorphismClass(c->morphism_count(), true),
              MorphismClass(c->morphism_count(), true)};
  for (MorId f = 0; f < c->morphism_count(); ++f) m.weq[f] = is_isomorphism(*c, f);
  return m;
}

}  // namespace catkit
