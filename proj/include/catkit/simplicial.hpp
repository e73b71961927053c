#pragma once

// Truncated simplicial sets presented by nondegenerate cells and face data.
// Every cell, degenerate or not, is a CellRef: a nondegenerate base cell and
// a strictly decreasing degeneracy word (outermost operator first).

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "catkit/algebra.hpp"
#include "catkit/delta.hpp"
#include "catkit/error.hpp"
#include "catkit/fincat.hpp"

namespace catkit {

struct CellRef {
  int base_dim = 0;
  std::size_t base = 0;
  std::vector<int> word;  // strictly decreasing

  [[nodiscard]] int dim() const { return base_dim + static_cast<int>(word.size()); }
  [[nodiscard]] bool degenerate() const { return !word.empty(); }

  auto operator<=>(const CellRef&) const = default;
  bool operator==(const CellRef&) const = default;
};

/// s_i applied to c, computed on words alone.
inline CellRef apply_degeneracy(CellRef c, int i) {
  int n = c.dim();
  if (i < 0 || i > n) fail(ErrorKind::IndexOutOfRange, "s" + std::to_string(i) + " on a " + std::to_string(n) + "-cell");
  c.word = degenerate_word(c.word, n, i);
  return c;
}

class SimplicialSet {
 public:
  SimplicialSet() = default;

  /// names[n] lists the nondegenerate n-cells; faces[n][i] lists the n+1
  /// faces of cell i (empty for vertices).
  static SimplicialSet make(int max_dim, std::vector<std::vector<std::string>> names,
                            std::vector<std::vector<std::vector<CellRef>>> faces);

  [[nodiscard]] int max_dim() const noexcept { return max_dim_; }
  [[nodiscard]] std::size_t count(int n) const {
    return n >= 0 && n <= max_dim_ ? names_[static_cast<std::size_t>(n)].size() : 0;
  }
  [[nodiscard]] std::size_t nondegenerate_total() const {
    std::size_t t = 0;
    for (const auto& v : names_) t += v.size();
    return t;
  }
  [[nodiscard]] const std::vector<std::string>& names(int n) const { return names_.at(static_cast<std::size_t>(n)); }
  [[nodiscard]] const std::string& name(int n, std::size_t i) const { return names(n).at(i); }
  [[nodiscard]] const std::vector<CellRef>& faces(int n, std::size_t i) const {
    return faces_.at(static_cast<std::size_t>(n)).at(i);
  }
  [[nodiscard]] CellRef cell(int n, std::size_t i) const { return CellRef{n, i, {}}; }

  [[nodiscard]] std::optional<std::pair<int, std::size_t>> find(const std::string& name) const {
    auto it = lookup_.find(name);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }
  [[nodiscard]] CellRef cell(const std::string& name) const {
    auto f = find(name);
    if (!f) fail(ErrorKind::UnknownObject, "no cell named '" + name + "'");
    return CellRef{f->first, f->second, {}};
  }

  /// θ^*(c) for θ: [m] → [dim c], in normal form. No truncation check.
  [[nodiscard]] CellRef act(const CellRef& c, const DeltaMap& theta) const;

  [[nodiscard]] CellRef face(const CellRef& c, int i) const {
    int n = c.dim();
    if (n < 1 || i < 0 || i > n)
      fail(ErrorKind::IndexOutOfRange, "∂" + std::to_string(i) + " on a " + std::to_string(n) + "-cell");
    return act(c, face_map(n, i));
  }
  [[nodiscard]] CellRef degeneracy(const CellRef& c, int i) const {
    int n = c.dim();
    if (n + 1 > max_dim_)
      fail(ErrorKind::IndexOutOfRange, "s" + std::to_string(i) + " leaves the truncation at " + std::to_string(max_dim_));
    return apply_degeneracy(c, i);
  }

  /// "s1 s0 v", outermost operator first.
  [[nodiscard]] std::string format(const CellRef& c) const {
    std::string s;
    for (int j : c.word) s += "s" + std::to_string(j) + " ";
    return s + name(c.base_dim, c.base);
  }
  /// Compact form without spaces, used when cells name other cells.
  [[nodiscard]] std::string label(const CellRef& c) const {
    std::string s;
    for (int j : c.word) s += "s" + std::to_string(j) + ".";
    return s + name(c.base_dim, c.base);
  }
  [[nodiscard]] CellRef parse(const std::string& text) const;

  friend bool operator==(const SimplicialSet& a, const SimplicialSet& b) {
    return a.max_dim_ == b.max_dim_ && a.names_ == b.names_ && a.faces_ == b.faces_;
  }

 private:
  int max_dim_ = 0;
  std::vector<std::vector<std::string>> names_;
  std::vector<std::vector<std::vector<CellRef>>> faces_;
  std::unordered_map<std::string, std::pair<int, std::size_t>> lookup_;
};

using SSetRef = std::shared_ptr<const SimplicialSet>;
inline SSetRef share(SimplicialSet x) { return std::make_shared<const SimplicialSet>(std::move(x)); }

inline CellRef SimplicialSet::act(const CellRef& c, const DeltaMap& theta) const {
  if (theta.cod != c.dim()) fail(ErrorKind::BadIndices, "Δ map codomain does not match the cell");
  DeltaMap rho = compose(surjection_from_word(c.word, c.dim()), theta);
  auto [eta, mu] = delta_factor(rho);
  if (mu.dom == mu.cod) return CellRef{c.base_dim, c.base, degeneracy_word(eta)};
  // Peel one missing vertex j off μ and continue from the j-th face.
  int j = 0;
  while (j < static_cast<int>(mu.values.size()) && mu.values[static_cast<std::size_t>(j)] == j) ++j;
  DeltaMap rest{mu.dom, mu.cod - 1, {}};
  for (int v : mu.values) rest.values.push_back(v > j ? v - 1 : v);
  const CellRef& f = faces_[static_cast<std::size_t>(c.base_dim)][c.base][static_cast<std::size_t>(j)];
  return act(f, compose(rest, eta));
}

inline CellRef SimplicialSet::parse(const std::string& text) const {
  std::istringstream in(text);
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);
  if (tokens.empty()) fail(ErrorKind::Schema, "empty cell reference");
  CellRef c = cell(tokens.back());
  for (auto it = tokens.rbegin() + 1; it != tokens.rend(); ++it) {
    const std::string& t = *it;
    if (t.size() < 2 || t[0] != 's' ||
        !std::all_of(t.begin() + 1, t.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
      fail(ErrorKind::Schema, "bad degeneracy token '" + t + "' in '" + text + "'");
    c = apply_degeneracy(c, std::stoi(t.substr(1)));
  }
  return c;
}

inline SimplicialSet SimplicialSet::make(int max_dim, std::vector<std::vector<std::string>> names,
                                         std::vector<std::vector<std::vector<CellRef>>> faces) {
  if (max_dim < 0) fail(ErrorKind::InvalidSimplicialSet, "negative dimension");
  if (names.size() > static_cast<std::size_t>(max_dim) + 1)
    fail(ErrorKind::InvalidSimplicialSet, "cells above the truncation dimension");
  names.resize(static_cast<std::size_t>(max_dim) + 1);
  faces.resize(static_cast<std::size_t>(max_dim) + 1);
  SimplicialSet x;
  x.max_dim_ = max_dim;
  for (int n = 0; n <= max_dim; ++n) {
    auto un = static_cast<std::size_t>(n);
    if (n == 0 && faces[0].empty()) faces[0].resize(names[0].size());
    if (faces[un].size() != names[un].size())
      fail(ErrorKind::InvalidSimplicialSet, "face data missing in dimension " + std::to_string(n));
    for (std::size_t i = 0; i < names[un].size(); ++i) {
      const std::string& nm = names[un][i];
      if (nm.empty() || nm.find_first_of(" \t\n") != std::string::npos)
        fail(ErrorKind::InvalidSimplicialSet, "cell name '" + nm + "' is empty or contains whitespace");
      if (!x.lookup_.emplace(nm, std::make_pair(n, i)).second)
        fail(ErrorKind::DuplicateName, "cell '" + nm + "' listed twice");
    }
  }
  x.names_ = std::move(names);
  x.faces_.resize(static_cast<std::size_t>(max_dim) + 1);
  for (int n = 0; n <= max_dim; ++n) {
    auto un = static_cast<std::size_t>(n);
    x.faces_[un].resize(x.names_[un].size());
    for (std::size_t i = 0; i < x.names_[un].size(); ++i) {
      const auto& fs = faces[un][i];
      const std::string& nm = x.names_[un][i];
      if (n == 0) {
        if (!fs.empty()) fail(ErrorKind::InvalidSimplicialSet, "vertex '" + nm + "' has faces");
        continue;
      }
      if (fs.size() != un + 1)
        fail(ErrorKind::InvalidSimplicialSet, "cell '" + nm + "' needs " + std::to_string(n + 1) + " faces");
      for (const CellRef& r : fs) {
        if (r.dim() != n - 1 || r.base_dim < 0 || r.base_dim >= n ||
            r.base >= x.names_[static_cast<std::size_t>(r.base_dim)].size())
          fail(ErrorKind::InvalidSimplicialSet, "face of '" + nm + "' has the wrong dimension");
        for (std::size_t k = 0; k < r.word.size(); ++k)
          if (r.word[k] < 0 || r.word[k] >= r.dim() || (k > 0 && r.word[k] >= r.word[k - 1]))
            fail(ErrorKind::InvalidSimplicialSet, "face of '" + nm + "' has an inadmissible degeneracy word");
      }
      x.faces_[un][i] = fs;
      // ∂i∂j = ∂(j-1)∂i for i < j
      if (n >= 2) {
        for (int j = 1; j <= n; ++j)
          for (int a = 0; a < j; ++a) {
            CellRef lhs = x.face(fs[static_cast<std::size_t>(j)], a);
            CellRef rhs = x.face(fs[static_cast<std::size_t>(a)], j - 1);
            if (lhs != rhs)
              fail(ErrorKind::InvalidSimplicialSet,
                   "cell '" + nm + "': ∂" + std::to_string(a) + "∂" + std::to_string(j) + " = " + x.format(lhs) +
                       " but ∂" + std::to_string(j - 1) + "∂" + std::to_string(a) + " = " + x.format(rhs));
          }
      }
    }
  }
  return x;
}

/// Every cell (degenerate included) up to the truncation, with face and
/// degeneracy operators as index tables.
class CellTable {
 public:
  CellTable() = default;
  explicit CellTable(const SimplicialSet& x) : max_dim_(x.max_dim()) {
    auto levels = static_cast<std::size_t>(max_dim_) + 1;
    cells_.resize(levels);
    index_.resize(levels);
    faces_.resize(levels);
    degens_.resize(levels);
    for (int n = 0; n <= max_dim_; ++n) {
      auto& out = cells_[static_cast<std::size_t>(n)];
      for (int k = 0; k <= n; ++k) {
        // choose n-k collapse positions among 0..n-1
        std::vector<int> pick(static_cast<std::size_t>(n - k));
        for (std::size_t b = 0; b < x.count(k); ++b) {
          std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int from) {
            if (pos == pick.size()) {
              std::vector<int> word(pick.rbegin(), pick.rend());
              out.push_back(CellRef{k, b, word});
              return;
            }
            for (int v = from; v < n; ++v) {
              pick[pos] = v;
              rec(pos + 1, v + 1);
            }
          };
          rec(0, 0);
        }
      }
      for (std::size_t i = 0; i < out.size(); ++i) index_[static_cast<std::size_t>(n)].emplace(out[i], i);
    }
    for (int n = 1; n <= max_dim_; ++n) {
      auto& ft = faces_[static_cast<std::size_t>(n)];
      for (const CellRef& c : cells_[static_cast<std::size_t>(n)])
        for (int i = 0; i <= n; ++i) ft.push_back(index(x.face(c, i)));
    }
    for (int n = 0; n < max_dim_; ++n) {
      auto& dt = degens_[static_cast<std::size_t>(n)];
      for (const CellRef& c : cells_[static_cast<std::size_t>(n)])
        for (int i = 0; i <= n; ++i) dt.push_back(index(apply_degeneracy(c, i)));
    }
  }

  [[nodiscard]] int max_dim() const noexcept { return max_dim_; }
  [[nodiscard]] std::size_t count(int n) const {
    return n >= 0 && n <= max_dim_ ? cells_[static_cast<std::size_t>(n)].size() : 0;
  }
  [[nodiscard]] const CellRef& cell(int n, std::size_t i) const { return cells_.at(static_cast<std::size_t>(n)).at(i); }
  [[nodiscard]] const std::vector<CellRef>& cells(int n) const { return cells_.at(static_cast<std::size_t>(n)); }
  [[nodiscard]] std::size_t index(const CellRef& c) const {
    const auto& m = index_.at(static_cast<std::size_t>(c.dim()));
    auto it = m.find(c);
    if (it == m.end()) fail(ErrorKind::IndexOutOfRange, "cell outside the table");
    return it->second;
  }
  /// index of ∂_i of cell idx in dimension n
  [[nodiscard]] std::size_t face(int n, std::size_t idx, int i) const {
    return faces_[static_cast<std::size_t>(n)][idx * static_cast<std::size_t>(n + 1) + static_cast<std::size_t>(i)];
  }
  /// index of s_i of cell idx in dimension n (requires n < max_dim)
  [[nodiscard]] std::size_t degeneracy(int n, std::size_t idx, int i) const {
    return degens_[static_cast<std::size_t>(n)][idx * static_cast<std::size_t>(n + 1) + static_cast<std::size_t>(i)];
  }
  /// Table index of θ^*(cell) by walking faces and degeneracies.
  [[nodiscard]] std::size_t act(int n, std::size_t idx, const DeltaMap& theta) const {
    auto [eta, mu] = delta_factor(theta);
    std::size_t cur = idx;
    int d = n;
    // μ^*: delete missing vertices from the top down
    std::vector<bool> hit(static_cast<std::size_t>(mu.cod + 1), false);
    for (int v : mu.values) hit[static_cast<std::size_t>(v)] = true;
    for (int j = mu.cod; j >= 0; --j)
      if (!hit[static_cast<std::size_t>(j)]) cur = face(d--, cur, j);
    // η^* = s_{j1} ... s_{jr}, innermost (smallest) first
    auto word = degeneracy_word(eta);
    for (auto it = word.rbegin(); it != word.rend(); ++it) cur = degeneracy(d++, cur, *it);
    return cur;
  }

 private:
  int max_dim_ = 0;
  std::vector<std::vector<CellRef>> cells_;
  std::vector<std::map<CellRef, std::size_t>> index_;
  std::vector<std::vector<std::size_t>> faces_;
  std::vector<std::vector<std::size_t>> degens_;
};

// ---------------------------------------------------------------------------
// Maps

struct SimplicialMap {
  SSetRef source;
  SSetRef target;
  std::vector<std::vector<CellRef>> images;  // [dim][nondegenerate cell]

  [[nodiscard]] CellRef operator()(const CellRef& c) const {
    const CellRef& img = images.at(static_cast<std::size_t>(c.base_dim)).at(c.base);
    return target->act(img, surjection_from_word(c.word, c.dim()));
  }

  friend bool operator==(const SimplicialMap& a, const SimplicialMap& b) {
    return *a.source == *b.source && *a.target == *b.target && a.images == b.images;
  }
};

inline void validate_map(const SimplicialMap& f) {
  const SimplicialSet& X = *f.source;
  const SimplicialSet& Y = *f.target;
  if (f.images.size() != static_cast<std::size_t>(X.max_dim()) + 1)
    fail(ErrorKind::InvalidAssignment, "map does not cover every dimension");
  for (int n = 0; n <= X.max_dim(); ++n) {
    const auto& imgs = f.images[static_cast<std::size_t>(n)];
    if (imgs.size() != X.count(n)) fail(ErrorKind::InvalidAssignment, "map is not total in dimension " + std::to_string(n));
    for (std::size_t i = 0; i < imgs.size(); ++i) {
      const CellRef& y = imgs[i];
      if (y.dim() != n || y.base_dim > Y.max_dim() || y.base >= Y.count(y.base_dim))
        fail(ErrorKind::InvalidAssignment, "image of '" + X.name(n, i) + "' is not an " + std::to_string(n) + "-cell");
      if (n == 0) continue;
      for (int k = 0; k <= n; ++k) {
        CellRef lhs = Y.face(y, k);
        CellRef rhs = f(X.faces(n, i)[static_cast<std::size_t>(k)]);
        if (lhs != rhs)
          fail(ErrorKind::InvalidAssignment, "∂" + std::to_string(k) + " of the image of '" + X.name(n, i) + "' is " +
                                                 Y.format(lhs) + ", expected " + Y.format(rhs));
      }
    }
  }
}

inline SimplicialMap identity_map(const SSetRef& x) {
  SimplicialMap f{x, x, {}};
  for (int n = 0; n <= x->max_dim(); ++n) {
    f.images.emplace_back();
    for (std::size_t i = 0; i < x->count(n); ++i) f.images.back().push_back(x->cell(n, i));
  }
  return f;
}

/// g∘f
inline SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
  if (*f.target != *g.source) fail(ErrorKind::EndpointMismatch, "simplicial maps are not composable");
  SimplicialMap h{f.source, g.target, {}};
  for (const auto& level : f.images) {
    h.images.emplace_back();
    for (const CellRef& c : level) h.images.back().push_back(g(c));
  }
  return h;
}

// ---------------------------------------------------------------------------
// Standard complexes

/// "01", "012"; vertices ≥ 10 switch to "0.1.10".
inline std::string subset_name(const std::vector<int>& vertices) {
  bool wide = std::any_of(vertices.begin(), vertices.end(), [](int v) { return v >= 10; });
  std::string s;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (wide && i > 0) s += '.';
    s += std::to_string(vertices[i]);
  }
  return s;
}

/// Ordered simplicial complex generated by the given facets, truncated at N.
/// Every face of a facet becomes a nondegenerate cell named by subset_name.
inline SimplicialSet ordered_complex(const std::vector<std::vector<int>>& facets, int N,
                                     const std::function<std::string(const std::vector<int>&)>& namer = subset_name) {
  std::vector<std::set<std::vector<int>>> levels(static_cast<std::size_t>(N) + 1);
  for (auto facet : facets) {
    std::sort(facet.begin(), facet.end());
    facet.erase(std::unique(facet.begin(), facet.end()), facet.end());
    auto m = facet.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
      std::vector<int> s;
      for (std::size_t b = 0; b < m; ++b)
        if (mask >> b & 1U) s.push_back(facet[b]);
      if (s.size() <= static_cast<std::size_t>(N) + 1) levels[s.size() - 1].insert(s);
    }
  }
  std::vector<std::vector<std::string>> names(levels.size());
  std::vector<std::vector<std::vector<CellRef>>> faces(levels.size());
  std::vector<std::map<std::vector<int>, std::size_t>> index(levels.size());
  for (std::size_t n = 0; n < levels.size(); ++n) {
    for (const auto& s : levels[n]) {
      index[n].emplace(s, names[n].size());
      names[n].push_back(namer(s));
      std::vector<CellRef> fs;
      if (n > 0)
        for (std::size_t i = 0; i <= n; ++i) {
          std::vector<int> t = s;
          t.erase(t.begin() + static_cast<std::ptrdiff_t>(i));
          fs.push_back(CellRef{static_cast<int>(n) - 1, index[n - 1].at(t), {}});
        }
      faces[n].push_back(std::move(fs));
    }
  }
  return SimplicialSet::make(N, std::move(names), std::move(faces));
}

namespace detail {
inline void check_simplex_indices(int n, int k, int N) {
  if (n < 0 || k < 0 || k > n || n > N)
    fail(ErrorKind::BadIndices, "need 0 ≤ k ≤ n ≤ N, got k=" + std::to_string(k) + " n=" + std::to_string(n) +
                                    " N=" + std::to_string(N));
}
inline std::vector<int> iota_vertices(int n) {
  std::vector<int> v;
  for (int i = 0; i <= n; ++i) v.push_back(i);
  return v;
}
}  // namespace detail

inline SimplicialSet standard_simplex(int n, int N) {
  detail::check_simplex_indices(n, 0, N);
  return ordered_complex({detail::iota_vertices(n)}, N);
}

inline SimplicialSet boundary(int n, int N) {
  detail::check_simplex_indices(n, 0, N);
  std::vector<std::vector<int>> facets;
  if (n >= 1)
    for (int i = 0; i <= n; ++i) {
      auto f = detail::iota_vertices(n);
      f.erase(f.begin() + i);
      facets.push_back(f);
    }
  return ordered_complex(facets, N);
}

inline SimplicialSet horn(int n, int k, int N) {
  detail::check_simplex_indices(n, k, N);
  if (n == 0) fail(ErrorKind::BadIndices, "horns need n ≥ 1");
  std::vector<std::vector<int>> facets;
  for (int i = 0; i <= n; ++i) {
    if (i == k) continue;
    auto f = detail::iota_vertices(n);
    f.erase(f.begin() + i);
    facets.push_back(f);
  }
  return ordered_complex(facets, N);
}

/// Characteristic map Δⁿ → X of an n-cell (degenerate cells allowed).
inline SimplicialMap characteristic_map(const SSetRef& x, const CellRef& c, const SSetRef& simplex) {
  int n = c.dim();
  SimplicialMap f{simplex, x, {}};
  for (int d = 0; d <= simplex->max_dim(); ++d) {
    f.images.emplace_back();
    for (std::size_t i = 0; i < simplex->count(d); ++i) {
      // the subset named by the cell, read back through its vertex faces
      std::vector<int> verts;
      CellRef s = simplex->cell(d, i);
      for (int v = 0; v <= d; ++v) {
        DeltaMap pick{0, d, {v}};
        verts.push_back(std::stoi(simplex->name(0, simplex->act(s, pick).base)));
      }
      f.images.back().push_back(x->act(c, DeltaMap{d, n, verts}));
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Nerves

/// Nerve of a finite category truncated at N. Vertices are objects; an
/// n-chain f1;...;fn (f1 first) with no identities is nondegenerate.
inline SimplicialSet nerve(const FinCategory& c, int N) {
  if (N < 0) fail(ErrorKind::BadIndices, "negative truncation");
  std::vector<std::vector<std::string>> names(static_cast<std::size_t>(N) + 1);
  std::vector<std::vector<std::vector<CellRef>>> faces(static_cast<std::size_t>(N) + 1);
  std::vector<std::map<std::vector<MorId>, std::size_t>> index(static_cast<std::size_t>(N) + 1);
  std::vector<std::vector<std::vector<MorId>>> chains(static_cast<std::size_t>(N) + 1);

  for (ObjId x = 0; x < c.object_count(); ++x) {
    names[0].push_back(c.object_name(x));
    faces[0].emplace_back();
  }
  std::vector<MorId> proper;
  for (MorId f = 0; f < c.morphism_count(); ++f)
    if (!c.is_identity(f)) proper.push_back(f);

  // Cell of an arbitrary chain: strip identities into a degeneracy word.
  auto ref_of = [&](const std::vector<MorId>& chain, ObjId start) {
    std::vector<MorId> base;
    std::vector<int> word;
    for (std::size_t j = 0; j < chain.size(); ++j) {
      if (c.is_identity(chain[j])) word.push_back(static_cast<int>(j));
      else base.push_back(chain[j]);
    }
    std::reverse(word.begin(), word.end());
    if (base.empty()) return CellRef{0, start, word};
    return CellRef{static_cast<int>(base.size()), index[base.size()].at(base), word};
  };

  for (int n = 1; n <= N; ++n) {
    auto un = static_cast<std::size_t>(n);
    if (n == 1) {
      for (MorId f : proper) chains[1].push_back({f});
    } else {
      for (const auto& ch : chains[un - 1])
        for (MorId f : proper)
          if (c.src(f) == c.dst(ch.back())) {
            auto next = ch;
            next.push_back(f);
            chains[un].push_back(std::move(next));
          }
    }
    for (const auto& ch : chains[un]) {
      index[un].emplace(ch, names[un].size());
      std::string nm;
      for (std::size_t j = 0; j < ch.size(); ++j) nm += (j ? ";" : "") + c.morphism(ch[j]).name;
      names[un].push_back(nm);
      std::vector<CellRef> fs;
      if (n == 1) {
        fs.push_back(CellRef{0, c.dst(ch[0]), {}});
        fs.push_back(CellRef{0, c.src(ch[0]), {}});
      } else {
        for (int i = 0; i <= n; ++i) {
          std::vector<MorId> sub;
          ObjId start = c.src(ch[0]);
          if (i == 0) {
            sub.assign(ch.begin() + 1, ch.end());
            start = c.dst(ch[0]);
          } else if (i == n) {
            sub.assign(ch.begin(), ch.end() - 1);
          } else {
            for (int j = 0; j < n; ++j) {
              if (j == i - 1) sub.push_back(c.compose(ch[static_cast<std::size_t>(i)], ch[static_cast<std::size_t>(i - 1)]));
              else if (j != i) sub.push_back(ch[static_cast<std::size_t>(j)]);
            }
          }
          fs.push_back(ref_of(sub, start));
        }
      }
      faces[un].push_back(std::move(fs));
    }
  }
  return SimplicialSet::make(N, std::move(names), std::move(faces));
}

/// The chain of morphisms represented by a nerve cell (identities restored).
inline std::vector<MorId> nerve_chain(const FinCategory& c, const SimplicialSet& nc, const CellRef& cell) {
  std::vector<MorId> base;
  ObjId start = 0;
  if (cell.base_dim == 0) {
    start = cell.base;
  } else {
    std::string nm = nc.name(cell.base_dim, cell.base);
    std::size_t pos = 0;
    while (true) {
      auto next = nm.find(';', pos);
      base.push_back(c.morphism_id(nm.substr(pos, next - pos)));
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    start = c.src(base.front());
  }
  DeltaMap sigma = surjection_from_word(cell.word, cell.dim());
  std::vector<MorId> chain;
  ObjId cur = start;
  for (int j = 0; j < cell.dim(); ++j) {
    if (sigma(j) == sigma(j + 1)) {
      chain.push_back(c.identity(cur));
    } else {
      MorId f = base[static_cast<std::size_t>(sigma(j))];
      chain.push_back(f);
      cur = c.dst(f);
    }
  }
  return chain;
}

/// Nerve of a functor, as a map between nerves truncated at N.
inline SimplicialMap nerve_functor(const FinFunctor& F, int N, SSetRef source = nullptr, SSetRef target = nullptr) {
  if (!source) source = share(nerve(*F.source, N));
  if (!target) target = share(nerve(*F.target, N));
  const FinCategory& D = *F.target;
  SimplicialMap m{source, target, {}};
  for (int n = 0; n <= N; ++n) {
    m.images.emplace_back();
    for (std::size_t i = 0; i < source->count(n); ++i) {
      if (n == 0) {
        m.images.back().push_back(CellRef{0, F(i), {}});
        continue;
      }
      auto chain = nerve_chain(*F.source, *source, source->cell(n, i));
      std::vector<MorId> base;
      std::vector<int> word;
      for (std::size_t j = 0; j < chain.size(); ++j) {
        MorId g = F.map(chain[j]);
        if (D.is_identity(g)) word.push_back(static_cast<int>(j));
        else base.push_back(g);
      }
      std::reverse(word.begin(), word.end());
      if (base.empty()) {
        m.images.back().push_back(CellRef{0, F(F.source->src(chain[0])), word});
      } else {
        std::string nm;
        for (std::size_t j = 0; j < base.size(); ++j) nm += (j ? ";" : "") + D.morphism(base[j]).name;
        CellRef b = target->cell(nm);
        b.word = word;
        m.images.back().push_back(b);
      }
    }
  }
  return m;
}

/// One-object category of a group; the unit is the identity of "*".
inline FinCategory delooping(const FinMonoid& g) {
  std::vector<Morphism> mors;
  std::vector<MorId> ids{g.unit};
  for (std::size_t a = 0; a < g.carrier.size(); ++a)
    mors.push_back(Morphism{a == g.unit ? identity_name("*") : g.carrier[a], 0, 0});
  std::size_t m = mors.size();
  std::vector<MorId> table(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) table[a * m + b] = g.op(a, b);
  return FinCategory::make({"*"}, std::move(mors), std::move(ids), std::move(table));
}

struct EGNerves {
  CategoryRef eg;
  CategoryRef bg;
  FinFunctor projection;
  SSetRef eg_nerve;
  SSetRef bg_nerve;
  SimplicialMap p;
};

/// EG: objects are group elements with one arrow g→h for each pair, named
/// "g>h". The projection to BG sends g→h to h·g⁻¹.
inline EGNerves nerve_EG(const FinMonoid& g, int N) {
  auto inv = check_group(g);
  const std::size_t n = g.carrier.size();
  std::vector<Morphism> mors;
  std::vector<MorId> ids;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) {
        ids.push_back(mors.size());
        mors.push_back(Morphism{identity_name(g.carrier[a]), a, a});
      } else {
        mors.push_back(Morphism{g.carrier[a] + ">" + g.carrier[b], a, b});
      }
    }
  // arrow a→b has index a*n+b; (b→c)∘(a→b) = a→c
  std::vector<MorId> table(n * n * n * n, kNone);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) table[(b * n + c) * n * n + a * n + b] = a * n + c;
  EGNerves r;
  r.eg = share(FinCategory::make(g.carrier.elements(), std::move(mors), std::move(ids), std::move(table)));
  r.bg = share(delooping(g));
  r.projection = FinFunctor{r.eg, r.bg, std::vector<ObjId>(n, 0), {}};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) r.projection.on_morphisms.push_back(g.op(b, inv[a]));
  validate_functor(r.projection);
  r.eg_nerve = share(nerve(*r.eg, N));
  r.bg_nerve = share(nerve(*r.bg, N));
  r.p = nerve_functor(r.projection, N, r.eg_nerve, r.bg_nerve);
  return r;
}

// ---------------------------------------------------------------------------
// Map enumeration

namespace detail {

/// Backtracking over images of nondegenerate cells, dimension by dimension.
/// images[n][i] is a table index into Y's n-cells.
inline void for_each_map_indices(const SimplicialSet& X, const CellTable& Y, Budget& budget,
                                 const std::function<bool(const std::vector<std::vector<std::size_t>>&)>& visit) {
  int top = -1;
  for (int n = 0; n <= X.max_dim(); ++n)
    if (X.count(n) > 0) top = n;
  if (top > Y.max_dim())
    fail(ErrorKind::BadIndices, "source has " + std::to_string(top) + "-cells beyond the target truncation");
  // Face tuple → candidate cells, per dimension.
  std::vector<std::map<std::vector<std::size_t>, std::vector<std::size_t>>> by_faces(static_cast<std::size_t>(top + 1));
  for (int n = 1; n <= top; ++n)
    for (std::size_t c = 0; c < Y.count(n); ++c) {
      std::vector<std::size_t> key;
      for (int i = 0; i <= n; ++i) key.push_back(Y.face(n, c, i));
      by_faces[static_cast<std::size_t>(n)][key].push_back(c);
    }
  std::vector<std::pair<int, std::size_t>> order;
  for (int n = 0; n <= top; ++n)
    for (std::size_t i = 0; i < X.count(n); ++i) order.emplace_back(n, i);
  std::vector<std::vector<std::size_t>> images(static_cast<std::size_t>(X.max_dim()) + 1);
  for (int n = 0; n <= X.max_dim(); ++n) images[static_cast<std::size_t>(n)].assign(X.count(n), 0);
  std::vector<std::size_t> all_vertices(Y.count(0));
  for (std::size_t v = 0; v < all_vertices.size(); ++v) all_vertices[v] = v;

  auto image_of = [&](const CellRef& r) {
    std::size_t cur = images[static_cast<std::size_t>(r.base_dim)][r.base];
    int d = r.base_dim;
    for (auto it = r.word.rbegin(); it != r.word.rend(); ++it) cur = Y.degeneracy(d++, cur, *it);
    return cur;
  };
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (stop) return;
    if (pos == order.size()) {
      if (!visit(images)) stop = true;
      return;
    }
    auto [n, i] = order[pos];
    const std::vector<std::size_t>* cands = &all_vertices;
    if (n > 0) {
      std::vector<std::size_t> key;
      for (const CellRef& r : X.faces(n, i)) key.push_back(image_of(r));
      auto it = by_faces[static_cast<std::size_t>(n)].find(key);
      if (it == by_faces[static_cast<std::size_t>(n)].end()) return;
      cands = &it->second;
    }
    for (std::size_t c : *cands) {
      budget.spend();
      images[static_cast<std::size_t>(n)][i] = c;
      rec(pos + 1);
      if (stop) return;
    }
  };
  rec(0);
}

inline SimplicialMap to_map(const SSetRef& x, const SSetRef& y, const CellTable& table,
                            const std::vector<std::vector<std::size_t>>& images) {
  SimplicialMap f{x, y, {}};
  for (std::size_t n = 0; n < images.size(); ++n) {
    f.images.emplace_back();
    for (std::size_t idx : images[n]) f.images.back().push_back(table.cell(static_cast<int>(n), idx));
  }
  return f;
}

}  // namespace detail

inline void for_each_map(const SSetRef& x, const SSetRef& y, Budget& budget,
                         const std::function<bool(const SimplicialMap&)>& visit) {
  CellTable table(*y);
  detail::for_each_map_indices(*x, table, budget, [&](const auto& images) {
    return visit(detail::to_map(x, y, table, images));
  });
}

inline std::vector<SimplicialMap> enumerate_maps(const SSetRef& x, const SSetRef& y, Budget& budget) {
  std::vector<SimplicialMap> out;
  for_each_map(x, y, budget, [&](const SimplicialMap& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

inline std::size_t count_maps(const SimplicialSet& x, const SimplicialSet& y, Budget& budget) {
  CellTable table(y);
  std::size_t n = 0;
  detail::for_each_map_indices(x, table, budget, [&](const auto&) {
    ++n;
    return true;
  });
  return n;
}

// ---------------------------------------------------------------------------
// Horns

/// All n-cells of X (degenerate ones included) extending the assignment.
inline std::vector<CellRef> horn_fillers(const SSetRef& x, int n, int k, const SimplicialMap& assignment) {
  detail::check_simplex_indices(n, k, std::max(n, x->max_dim()));
  if (n < 1) fail(ErrorKind::InvalidAssignment, "horns need n ≥ 1");
  if (n > x->max_dim()) fail(ErrorKind::InvalidAssignment, "X is truncated below dimension " + std::to_string(n));
  if (!assignment.source || *assignment.source != horn(n, k, assignment.source->max_dim()))
    fail(ErrorKind::InvalidAssignment, "assignment is not defined on the horn Λ" + std::to_string(n) + "," +
                                           std::to_string(k));
  if (*assignment.target != *x) fail(ErrorKind::InvalidAssignment, "assignment does not land in X");
  validate_map(assignment);
  const SimplicialSet& H = *assignment.source;
  std::vector<std::pair<int, CellRef>> required;
  for (int i = 0; i <= n; ++i) {
    if (i == k) continue;
    auto verts = detail::iota_vertices(n);
    verts.erase(verts.begin() + i);
    required.emplace_back(i, assignment(H.cell(subset_name(verts))));
  }
  CellTable table(*x);
  std::vector<CellRef> out;
  for (const CellRef& c : table.cells(n)) {
    bool ok = true;
    for (const auto& [i, want] : required)
      if (x->face(c, i) != want) {
        ok = false;
        break;
      }
    if (ok) out.push_back(c);
  }
  return out;
}

enum class Verdict { kan, quasi, neither };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kan: return "kan";
    case Verdict::quasi: return "quasi";
    case Verdict::neither: return "neither";
  }
  return "?";
}

struct HornStat {
  int n = 0;
  int k = 0;
  std::size_t assignments = 0;
  std::size_t unfilled = 0;
  /// faces of the first unfilled assignment, "∂i=ref" joined by ", "
  std::string witness;

  [[nodiscard]] bool inner() const { return k > 0 && k < n; }
};

struct ClassifyReport {
  Verdict verdict = Verdict::kan;
  std::vector<HornStat> horns;

  [[nodiscard]] std::size_t unfilled_total() const {
    std::size_t t = 0;
    for (const auto& h : horns) t += h.unfilled;
    return t;
  }
  [[nodiscard]] std::size_t unfilled_inner() const {
    std::size_t t = 0;
    for (const auto& h : horns)
      if (h.inner()) t += h.unfilled;
    return t;
  }
  [[nodiscard]] const HornStat* first_failure(bool inner_only = false) const {
    for (const auto& h : horns)
      if (h.unfilled > 0 && (!inner_only || h.inner())) return &h;
    return nullptr;
  }
};

/// Scans every horn Λⁿₖ → X for 1 ≤ n ≤ N. A horn is determined by
/// compatible images of its n faces, so assignments are enumerated as maps.
inline ClassifyReport classify(const SimplicialSet& x, int N, Budget& budget) {
  if (N < 1 || N > x.max_dim())
    fail(ErrorKind::BadIndices, "classification dimension must lie in 1.." + std::to_string(x.max_dim()));
  CellTable table(x);
  ClassifyReport report;
  bool inner_ok = true, all_ok = true;
  for (int n = 1; n <= N; ++n) {
    for (int k = 0; k <= n; ++k) {
      SimplicialSet h = horn(n, k, n);
      std::set<std::vector<std::size_t>> fillable;
      for (std::size_t c = 0; c < table.count(n); ++c) {
        std::vector<std::size_t> key;
        for (int i = 0; i <= n; ++i)
          if (i != k) key.push_back(table.face(n, c, i));
        fillable.insert(std::move(key));
      }
      std::vector<std::size_t> face_cells;
      for (int i = 0; i <= n; ++i) {
        if (i == k) continue;
        auto verts = detail::iota_vertices(n);
        verts.erase(verts.begin() + i);
        face_cells.push_back(h.cell(subset_name(verts)).base);
      }
      HornStat stat{n, k, 0, 0, {}};
      detail::for_each_map_indices(h, table, budget, [&](const auto& images) {
        ++stat.assignments;
        std::vector<std::size_t> key;
        for (std::size_t fc : face_cells) key.push_back(images[static_cast<std::size_t>(n - 1)][fc]);
        if (!fillable.count(key)) {
          if (stat.unfilled == 0) {
            std::size_t slot = 0;
            for (int i = 0; i <= n; ++i) {
              if (i == k) continue;
              if (!stat.witness.empty()) stat.witness += ", ";
              stat.witness += "∂" + std::to_string(i) + "=" + x.format(table.cell(n - 1, key[slot++]));
            }
          }
          ++stat.unfilled;
        }
        return true;
      });
      if (stat.unfilled > 0) {
        all_ok = false;
        if (stat.inner()) inner_ok = false;
      }
      report.horns.push_back(std::move(stat));
    }
  }
  report.verdict = all_ok ? Verdict::kan : inner_ok ? Verdict::quasi : Verdict::neither;
  return report;
}

// ---------------------------------------------------------------------------
// Products, gluing, truncation

/// Levelwise product, re-presented by its nondegenerate cells: a pair of
/// cells is nondegenerate iff the two degeneracy words share no index.
inline SimplicialSet product_sset(const SimplicialSet& x, const SimplicialSet& y) {
  int N = std::min(x.max_dim(), y.max_dim());
  CellTable tx(x), ty(y);
  std::vector<std::vector<std::string>> names(static_cast<std::size_t>(N) + 1);
  std::vector<std::vector<std::vector<CellRef>>> faces(static_cast<std::size_t>(N) + 1);
  std::vector<std::map<std::pair<CellRef, CellRef>, std::size_t>> index(static_cast<std::size_t>(N) + 1);

  // A pair (a, b) of n-cells equals s_J applied to a nondegenerate pair,
  // where J is the set of shared collapse indices.
  auto ref_of = [&](const CellRef& a, const CellRef& b) {
    int n = a.dim();
    std::vector<int> common;
    for (int j : a.word)
      if (std::find(b.word.begin(), b.word.end(), j) != b.word.end()) common.push_back(j);
    DeltaMap sigma = surjection_from_word(common, n);
    // section of σ: first preimage of each value
    std::vector<int> sect;
    for (int v = 0; v <= n; ++v)
      if (v == 0 || sigma(v) != sigma(v - 1)) sect.push_back(v);
    DeltaMap d{sigma.cod, n, sect};
    CellRef a0 = x.act(a, d), b0 = y.act(b, d);
    std::size_t base = index[static_cast<std::size_t>(sigma.cod)].at({a0, b0});
    return CellRef{sigma.cod, base, common};
  };

  for (int n = 0; n <= N; ++n) {
    auto un = static_cast<std::size_t>(n);
    for (const CellRef& a : tx.cells(n))
      for (const CellRef& b : ty.cells(n)) {
        bool shared = std::any_of(a.word.begin(), a.word.end(), [&](int j) {
          return std::find(b.word.begin(), b.word.end(), j) != b.word.end();
        });
        if (shared) continue;
        index[un].emplace(std::make_pair(a, b), names[un].size());
        names[un].push_back("(" + x.label(a) + "," + y.label(b) + ")");
        std::vector<CellRef> fs;
        for (int i = 0; n > 0 && i <= n; ++i) fs.push_back(ref_of(x.face(a, i), y.face(b, i)));
        faces[un].push_back(std::move(fs));
      }
  }
  return SimplicialSet::make(N, std::move(names), std::move(faces));
}

/// X truncated (or padded with no new cells) at N.
inline SimplicialSet retruncate(const SimplicialSet& x, int N) {
  std::vector<std::vector<std::string>> names;
  std::vector<std::vector<std::vector<CellRef>>> faces;
  for (int n = 0; n <= N; ++n) {
    names.emplace_back();
    faces.emplace_back();
    if (n > x.max_dim()) continue;
    names.back() = x.names(n);
    for (std::size_t i = 0; i < x.count(n); ++i) faces.back().push_back(x.faces(n, i));
  }
  return SimplicialSet::make(N, std::move(names), std::move(faces));
}

struct Gluing {
  SSetRef result;
  SimplicialMap from_x;
  SimplicialMap from_y;
};

/// Pushout X ⊔_A Y where g: A → Y is an inclusion of nondegenerate cells.
/// Cells of Y outside the image of g keep their names, primed on collision.
inline Gluing glue(const SimplicialMap& f, const SimplicialMap& g) {
  if (*f.source != *g.source) fail(ErrorKind::EndpointMismatch, "gluing maps need a common source");
  const SimplicialSet& A = *f.source;
  const SimplicialSet& X = *f.target;
  const SimplicialSet& Y = *g.target;
  if (X.max_dim() != Y.max_dim()) fail(ErrorKind::EndpointMismatch, "glued complexes must share their truncation");
  int N = X.max_dim();
  // preimage under g, per dimension
  std::vector<std::map<std::size_t, std::size_t>> from_a(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= A.max_dim(); ++n)
    for (std::size_t a = 0; a < A.count(n); ++a) {
      const CellRef& img = g.images[static_cast<std::size_t>(n)][a];
      if (img.degenerate() || !from_a[static_cast<std::size_t>(n)].emplace(img.base, a).second)
        fail(ErrorKind::InvalidAssignment, "g is not an inclusion at '" + A.name(n, a) + "'");
    }
  std::set<std::string> used;
  for (int n = 0; n <= N; ++n)
    for (const auto& nm : X.names(n)) used.insert(nm);
  std::vector<std::vector<std::string>> names(static_cast<std::size_t>(N) + 1);
  std::vector<std::vector<std::vector<CellRef>>> faces(static_cast<std::size_t>(N) + 1);
  std::vector<std::vector<std::size_t>> y_index(static_cast<std::size_t>(N) + 1);
  auto translate = [&](const CellRef& r) {
    auto ur = static_cast<std::size_t>(r.base_dim);
    auto it = from_a[ur].find(r.base);
    if (it != from_a[ur].end())
      return X.act(f.images[ur][it->second], surjection_from_word(r.word, r.dim()));
    return CellRef{r.base_dim, y_index[ur][r.base], r.word};
  };
  for (int n = 0; n <= N; ++n) {
    auto un = static_cast<std::size_t>(n);
    names[un] = X.names(n);
    for (std::size_t i = 0; i < X.count(n); ++i) faces[un].push_back(X.faces(n, i));
    y_index[un].assign(Y.count(n), kNone);
    for (std::size_t i = 0; i < Y.count(n); ++i) {
      if (from_a[un].count(i)) continue;
      std::string nm = Y.name(n, i);
      while (used.count(nm)) nm += "'";
      used.insert(nm);
      y_index[un][i] = names[un].size();
      names[un].push_back(nm);
      std::vector<CellRef> fs;
      for (const CellRef& r : Y.faces(n, i)) fs.push_back(translate(r));
      faces[un].push_back(std::move(fs));
    }
  }
  Gluing out;
  out.result = share(SimplicialSet::make(N, std::move(names), std::move(faces)));
  out.from_x = SimplicialMap{f.target, out.result, {}};
  out.from_y = SimplicialMap{g.target, out.result, {}};
  for (int n = 0; n <= N; ++n) {
    out.from_x.images.emplace_back();
    for (std::size_t i = 0; i < X.count(n); ++i) out.from_x.images.back().push_back(CellRef{n, i, {}});
    out.from_y.images.emplace_back();
    for (std::size_t i = 0; i < Y.count(n); ++i) out.from_y.images.back().push_back(translate(CellRef{n, i, {}}));
  }
  return out;
}

/// Wedge of two pointed complexes, glued at the named vertices.
inline Gluing wedge(const SSetRef& x, const std::string& x_point, const SSetRef& y, const std::string& y_point) {
  int N = x->max_dim();
  auto point = share(retruncate(standard_simplex(0, 0), N));
  SimplicialMap f{point, x, {{x->cell(x_point)}}};
  SimplicialMap g{point, y, {{y->cell(y_point)}}};
  for (int n = 1; n <= N; ++n) {
    f.images.emplace_back();
    g.images.emplace_back();
  }
  return glue(f, g);
}

/// Disjoint union, as gluing along the empty complex.
inline Gluing disjoint_union(const SSetRef& x, const SSetRef& y) {
  int N = x->max_dim();
  auto empty = share(SimplicialSet::make(N, {}, {}));
  SimplicialMap f{empty, x, std::vector<std::vector<CellRef>>(static_cast<std::size_t>(N) + 1)};
  SimplicialMap g{empty, y, std::vector<std::vector<CellRef>>(static_cast<std::size_t>(N) + 1)};
  return glue(f, g);
}

}  // namespace catkit
