#pragma once

// The simplex category: monotone maps [n] → [m], their epi-mono
// factorization, and simplicial operator words.

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "catkit/error.hpp"

namespace catkit {

/// Monotone map [dom] → [cod]; values[i] is the image of i.
struct DeltaMap {
  int dom = 0;
  int cod = 0;
  std::vector<int> values;

  [[nodiscard]] int operator()(int i) const { return values.at(static_cast<std::size_t>(i)); }
  [[nodiscard]] bool injective() const {
    return std::adjacent_find(values.begin(), values.end()) == values.end();
  }
  [[nodiscard]] bool surjective() const {
    return !values.empty() && values.front() == 0 && values.back() == cod &&
           std::adjacent_find(values.begin(), values.end(),
                              [](int a, int b) { return b > a + 1; }) == values.end();
  }
  [[nodiscard]] bool is_identity() const { return dom == cod && injective(); }

  friend bool operator==(const DeltaMap&, const DeltaMap&) = default;
};

inline DeltaMap make_delta_map(std::vector<int> values, int cod) {
  if (values.empty() || cod < 0) fail(ErrorKind::BadIndices, "Δ maps need nonempty domain and codomain");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0 || values[i] > cod)
      fail(ErrorKind::BadIndices, "value " + std::to_string(values[i]) + " outside [" +
                                      std::to_string(cod) + "]");
    if (i > 0 && values[i] < values[i - 1])
      fail(ErrorKind::NotMonotone, "f(" + std::to_string(i - 1) + ") > f(" + std::to_string(i) + ")");
  }
  int dom = static_cast<int>(values.size()) - 1;
  return DeltaMap{dom, cod, std::move(values)};
}

inline DeltaMap delta_identity(int n) {
  DeltaMap d{n, n, {}};
  for (int i = 0; i <= n; ++i) d.values.push_back(i);
  return d;
}

/// δ_i : [n-1] → [n], skipping i.
inline DeltaMap face_map(int n, int i) {
  DeltaMap d{n - 1, n, {}};
  for (int v = 0; v < n; ++v) d.values.push_back(v < i ? v : v + 1);
  return d;
}

/// σ_i : [n+1] → [n], hitting i twice.
inline DeltaMap degeneracy_map(int n, int i) {
  DeltaMap d{n + 1, n, {}};
  for (int v = 0; v <= n + 1; ++v) d.values.push_back(v <= i ? v : v - 1);
  return d;
}

/// g∘f
inline DeltaMap compose(const DeltaMap& g, const DeltaMap& f) {
  if (f.cod != g.dom) fail(ErrorKind::BadIndices, "Δ maps are not composable");
  DeltaMap h{f.dom, g.cod, {}};
  for (int v : f.values) h.values.push_back(g.values[static_cast<std::size_t>(v)]);
  return h;
}

struct DeltaFactorization {
  DeltaMap epi;
  DeltaMap mono;
};

/// The unique factorization f = mono ∘ epi through the image of f.
inline DeltaFactorization delta_factor(const DeltaMap& f) {
  for (std::size_t i = 1; i < f.values.size(); ++i)
    if (f.values[i] < f.values[i - 1])
      fail(ErrorKind::NotMonotone, "f(" + std::to_string(i - 1) + ") > f(" + std::to_string(i) + ")");
  std::vector<int> image;
  std::vector<int> epi;
  for (int v : f.values) {
    if (image.empty() || image.back() != v) image.push_back(v);
    epi.push_back(static_cast<int>(image.size()) - 1);
  }
  int r = static_cast<int>(image.size()) - 1;
  return {DeltaMap{f.dom, r, std::move(epi)}, DeltaMap{r, f.cod, std::move(image)}};
}

/// Degeneracy word of a surjection σ: [n] ↠ [k]: the positions j with
/// σ(j) = σ(j+1), strictly decreasing. σ^* = s_{j1} s_{j2} ... with j1 > j2 > ...
inline std::vector<int> degeneracy_word(const DeltaMap& surjection) {
  std::vector<int> word;
  for (int j = surjection.dom - 1; j >= 0; --j)
    if (surjection(j) == surjection(j + 1)) word.push_back(j);
  return word;
}

/// Inverse of degeneracy_word: the surjection [n] ↠ [n - |word|].
inline DeltaMap surjection_from_word(const std::vector<int>& word, int n) {
  std::vector<bool> collapse(static_cast<std::size_t>(std::max(n, 0)), false);
  for (int j : word) {
    if (j < 0 || j >= n) fail(ErrorKind::IndexOutOfRange, "degeneracy index " + std::to_string(j));
    collapse[static_cast<std::size_t>(j)] = true;
  }
  DeltaMap s{n, n - static_cast<int>(word.size()), {0}};
  for (int j = 0; j < n; ++j) s.values.push_back(s.values.back() + (collapse[static_cast<std::size_t>(j)] ? 0 : 1));
  return s;
}

/// Word of the degeneracy operator s_i applied after the operator with the
/// given word, on a cell of dimension n (the dimension before s_i).
inline std::vector<int> degenerate_word(const std::vector<int>& word, int n, int i) {
  DeltaMap sigma = surjection_from_word(word, n);
  return degeneracy_word(compose(sigma, degeneracy_map(n, i)));
}

// ---------------------------------------------------------------------------
// Operator words. A word o_1 o_2 ... o_r acts on a cell as o_1(o_2(...o_r(x))).

struct SimplicialOp {
  enum class Kind { face, degeneracy };
  Kind kind;
  int index;
  friend bool operator==(const SimplicialOp&, const SimplicialOp&) = default;
};

inline std::string to_string(const std::vector<SimplicialOp>& word) {
  std::string s;
  for (const auto& op : word) {
    if (!s.empty()) s += ' ';
    s += (op.kind == SimplicialOp::Kind::face ? "d" : "s") + std::to_string(op.index);
  }
  return s;
}

/// The Δ map θ with word^* = θ^* on cells of dimension `dim`.
inline DeltaMap delta_of_word(const std::vector<SimplicialOp>& word, int dim) {
  DeltaMap total = delta_identity(dim);
  int d = dim;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (it->kind == SimplicialOp::Kind::face) {
      if (d < 1 || it->index < 0 || it->index > d)
        fail(ErrorKind::IndexOutOfRange, "d" + std::to_string(it->index) + " on dimension " + std::to_string(d));
      total = compose(total, face_map(d, it->index));
      --d;
    } else {
      if (it->index < 0 || it->index > d)
        fail(ErrorKind::IndexOutOfRange, "s" + std::to_string(it->index) + " on dimension " + std::to_string(d));
      total = compose(total, degeneracy_map(d, it->index));
      ++d;
    }
  }
  return total;
}

/// Normal form s_{i1}...s_{ip} d_{j1}...d_{jq}, i1 > ... > ip, j1 < ... < jq,
/// computed through the epi-mono factorization.
inline std::vector<SimplicialOp> normal_form(const std::vector<SimplicialOp>& word, int dim) {
  auto [epi, mono] = delta_factor(delta_of_word(word, dim));
  std::vector<SimplicialOp> out;
  for (int j : degeneracy_word(epi)) out.push_back({SimplicialOp::Kind::degeneracy, j});
  std::vector<bool> hit(static_cast<std::size_t>(mono.cod + 1), false);
  for (int v : mono.values) hit[static_cast<std::size_t>(v)] = true;
  for (int j = 0; j <= mono.cod; ++j)
    if (!hit[static_cast<std::size_t>(j)]) out.push_back({SimplicialOp::Kind::face, j});
  return out;
}

/// One rewrite of the adjacent pair at `pos` by a simplicial identity, or
/// false when the pair is already in normal order.
inline bool rewrite_at(std::vector<SimplicialOp>& word, std::size_t pos) {
  using K = SimplicialOp::Kind;
  if (pos + 1 >= word.size()) return false;
  SimplicialOp a = word[pos], b = word[pos + 1];
  auto it = word.begin() + static_cast<std::ptrdiff_t>(pos);
  if (a.kind == K::face && b.kind == K::face) {
    if (a.index < b.index) return false;
    // d_a d_b = d_b d_{a+1} for a ≥ b
    word[pos] = {K::face, b.index};
    word[pos + 1] = {K::face, a.index + 1};
    return true;
  }
  if (a.kind == K::degeneracy && b.kind == K::degeneracy) {
    if (a.index > b.index) return false;
    // s_a s_b = s_{b+1} s_a for a ≤ b
    word[pos] = {K::degeneracy, b.index + 1};
    word[pos + 1] = {K::degeneracy, a.index};
    return true;
  }
  if (a.kind == K::face && b.kind == K::degeneracy) {
    int i = a.index, j = b.index;
    if (i == j || i == j + 1) {
      word.erase(it, it + 2);
    } else if (i < j) {
      word[pos] = {K::degeneracy, j - 1};
      word[pos + 1] = {K::face, i};
    } else {
      word[pos] = {K::degeneracy, j};
      word[pos + 1] = {K::face, i - 1};
    }
    return true;
  }
  return false;  // s d is the normal order
}

/// Rewrites until no identity applies. `pick` chooses which of the
/// applicable positions to rewrite next, so callers can vary the order.
inline std::vector<SimplicialOp> rewrite_to_normal_form(
    std::vector<SimplicialOp> word,
    const std::function<std::size_t(std::size_t)>& pick = [](std::size_t) { return std::size_t{0}; }) {
  while (true) {
    std::vector<std::size_t> candidates;
    for (std::size_t p = 0; p + 1 < word.size(); ++p) {
      std::vector<SimplicialOp> probe = word;
      if (rewrite_at(probe, p)) candidates.push_back(p);
    }
    if (candidates.empty()) return word;
    rewrite_at(word, candidates[pick(candidates.size()) % candidates.size()]);
  }
}

}  // namespace catkit
