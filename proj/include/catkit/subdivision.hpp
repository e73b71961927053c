#pragma once

// Barycentric subdivision, the last-vertex map, and Ex.
//
// A nondegenerate cell of sd(X) is a nondegenerate m-cell x of X together
// with a strict chain S0 ⊂ ... ⊂ Sn of nonempty subsets of [m] ending at [m].
// Subsets are bitmasks.

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "catkit/simplicial.hpp"

namespace catkit {

using VertexMask = std::uint32_t;

inline std::string mask_name(VertexMask s) {
  std::vector<int> v;
  for (int i = 0; i < 32; ++i)
    if (s >> i & 1U) v.push_back(i);
  return subset_name(v);
}

struct SdCell {
  int x_dim = 0;
  std::size_t x = 0;
  std::vector<VertexMask> chain;
};

class Subdivision {
 public:
  explicit Subdivision(SSetRef x) : base_(std::move(x)) {
    const SimplicialSet& X = *base_;
    const int N = X.max_dim();
    if (N > 20) fail(ErrorKind::BadIndices, "subdivision is limited to dimension 20");
    auto levels = static_cast<std::size_t>(N) + 1;
    cells_.resize(levels);
    std::vector<std::vector<std::string>> names(levels);
    std::vector<std::vector<std::vector<CellRef>>> faces(levels);
    for (int n = 0; n <= N; ++n) {
      auto un = static_cast<std::size_t>(n);
      for (int m = n; m <= N; ++m) {
        VertexMask full = (VertexMask{1} << (m + 1)) - 1;
        for (std::size_t x = 0; x < X.count(m); ++x) {
          // strict chains of length n+1 ending at [m], built top down
          std::vector<VertexMask> chain(un + 1);
          chain[un] = full;
          std::function<void(int)> rec = [&](int pos) {
            if (pos < 0) {
              SdCell c{m, x, chain};
              index_.emplace(key(c), cells_[un].size());
              std::string nm = X.name(m, x) + "|";
              for (std::size_t j = 0; j < chain.size(); ++j) nm += (j ? "<" : "") + mask_name(chain[j]);
              names[un].push_back(nm);
              faces[un].push_back(faces_of(c));
              cells_[un].push_back(std::move(c));
              return;
            }
            VertexMask above = chain[static_cast<std::size_t>(pos) + 1];
            // proper nonempty submasks of `above`, in increasing order
            std::vector<VertexMask> subs;
            for (VertexMask s = (above - 1) & above; s != 0; s = (s - 1) & above) subs.push_back(s);
            std::sort(subs.begin(), subs.end());
            for (VertexMask s : subs) {
              if (std::popcount(s) < pos + 1) continue;
              chain[static_cast<std::size_t>(pos)] = s;
              rec(pos - 1);
            }
          };
          rec(n - 1);
        }
      }
    }
    result_ = share(SimplicialSet::make(N, std::move(names), std::move(faces)));
  }

  [[nodiscard]] const SSetRef& base() const noexcept { return base_; }
  [[nodiscard]] const SSetRef& result() const noexcept { return result_; }
  [[nodiscard]] const SdCell& cell(int n, std::size_t i) const { return cells_.at(static_cast<std::size_t>(n)).at(i); }

  /// The sd-cell of a chain (not necessarily strict, ending at [t]) in
  /// sd(Δᵗ), pushed along τ^*: Δᵗ → X where τ: [t] ↠ [k] and y is a
  /// nondegenerate k-cell of X. Repeated subsets become degeneracies.
  [[nodiscard]] CellRef reduce(int k, std::size_t y, const DeltaMap& tau, const std::vector<VertexMask>& chain) const {
    std::vector<VertexMask> image;
    for (VertexMask s : chain) {
      VertexMask t = 0;
      for (int v = 0; v <= tau.dom; ++v)
        if (s >> v & 1U) t |= VertexMask{1} << tau(v);
      image.push_back(t);
    }
    std::vector<VertexMask> strict;
    std::vector<int> word;
    for (std::size_t j = 0; j < image.size(); ++j) {
      if (j > 0 && image[j] == image[j - 1]) word.push_back(static_cast<int>(j) - 1);
      else strict.push_back(image[j]);
    }
    std::reverse(word.begin(), word.end());
    SdCell c{k, y, strict};
    int d = static_cast<int>(strict.size()) - 1;
    return CellRef{d, index_.at(key(c)), word};
  }

  /// Image of an sd-cell under sd(f) for f: X → Y, where `target` subdivides Y.
  [[nodiscard]] static CellRef map_cell(const Subdivision& target, const SimplicialMap& f, const SdCell& c) {
    CellRef r = f(CellRef{c.x_dim, c.x, {}});
    return target.reduce(r.base_dim, r.base, surjection_from_word(r.word, c.x_dim), c.chain);
  }

  /// last vertex: vertex j of the chain goes to max S_j.
  [[nodiscard]] CellRef last_vertex_image(const SdCell& c) const {
    DeltaMap theta{static_cast<int>(c.chain.size()) - 1, c.x_dim, {}};
    for (VertexMask s : c.chain) theta.values.push_back(31 - std::countl_zero(s));
    return base_->act(CellRef{c.x_dim, c.x, {}}, theta);
  }

 private:
  using Key = std::tuple<int, std::size_t, std::vector<VertexMask>>;
  static Key key(const SdCell& c) { return {c.x_dim, c.x, c.chain}; }

  std::vector<CellRef> faces_of(const SdCell& c) const {
    const int n = static_cast<int>(c.chain.size()) - 1;
    std::vector<CellRef> out;
    for (int i = 0; n > 0 && i <= n; ++i) {
      if (i < n) {
        SdCell d = c;
        d.chain.erase(d.chain.begin() + i);
        out.push_back(CellRef{n - 1, index_.at(key(d)), {}});
        continue;
      }
      // Dropping the top lands in the face of x spanned by T = S_{n-1}.
      VertexMask top = c.chain[static_cast<std::size_t>(n) - 1];
      DeltaMap delta{std::popcount(top) - 1, c.x_dim, {}};
      std::vector<int> rank(static_cast<std::size_t>(c.x_dim) + 1, -1);
      for (int v = 0; v <= c.x_dim; ++v)
        if (top >> v & 1U) {
          rank[static_cast<std::size_t>(v)] = static_cast<int>(delta.values.size());
          delta.values.push_back(v);
        }
      std::vector<VertexMask> local;
      for (int j = 0; j < n; ++j) {
        VertexMask s = 0;
        for (int v = 0; v <= c.x_dim; ++v)
          if (c.chain[static_cast<std::size_t>(j)] >> v & 1U) s |= VertexMask{1} << rank[static_cast<std::size_t>(v)];
        local.push_back(s);
      }
      CellRef r = base_->act(CellRef{c.x_dim, c.x, {}}, delta);
      out.push_back(reduce(r.base_dim, r.base, surjection_from_word(r.word, delta.dom), local));
    }
    return out;
  }

  SSetRef base_;
  SSetRef result_;
  std::vector<std::vector<SdCell>> cells_;
  std::map<Key, std::size_t> index_;
};

inline SSetRef sd(const SSetRef& x) { return Subdivision(x).result(); }

/// sd(f): sd(X) → sd(Y).
inline SimplicialMap sd_map(const Subdivision& sx, const Subdivision& sy, const SimplicialMap& f) {
  const SimplicialSet& S = *sx.result();
  SimplicialMap out{sx.result(), sy.result(), {}};
  for (int n = 0; n <= S.max_dim(); ++n) {
    out.images.emplace_back();
    for (std::size_t i = 0; i < S.count(n); ++i) out.images.back().push_back(Subdivision::map_cell(sy, f, sx.cell(n, i)));
  }
  return out;
}

inline SimplicialMap last_vertex(const Subdivision& sx) {
  const SimplicialSet& S = *sx.result();
  SimplicialMap out{sx.result(), sx.base(), {}};
  for (int n = 0; n <= S.max_dim(); ++n) {
    out.images.emplace_back();
    for (std::size_t i = 0; i < S.count(n); ++i) out.images.back().push_back(sx.last_vertex_image(sx.cell(n, i)));
  }
  return out;
}

/// θ: [m] → [n] as a map Δᵐ → Δⁿ, both truncated at N.
inline SimplicialMap delta_simplicial_map(const DeltaMap& theta, const SSetRef& dm, const SSetRef& dn) {
  SimplicialMap f{dm, dn, {}};
  for (int d = 0; d <= dm->max_dim(); ++d) {
    f.images.emplace_back();
    for (std::size_t i = 0; i < dm->count(d); ++i) {
      DeltaMap verts{d, theta.dom, {}};
      for (int v = 0; v <= d; ++v) verts.values.push_back(static_cast<int>(dm->act(dm->cell(d, i), DeltaMap{0, d, {v}}).base));
      f.images.back().push_back(dn->act(dn->cell(theta.cod, 0), compose(theta, verts)));
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Ex

struct ExOptions {
  /// Ex above dimension 2 on complexes with more than 50 nondegenerate
  /// cells is refused unless this is set.
  bool allow_large = false;
};

/// Ex(X)_n = maps sd(Δⁿ) → X, with operators by precomposition with sd(θ).
class ExComplex {
 public:
  ExComplex(SSetRef x, Budget& budget, ExOptions options = {}) : base_(std::move(x)), table_(*base_) {
    const int N = base_->max_dim();
    if (N > 2 && base_->nondegenerate_total() > 50 && !options.allow_large)
      fail(ErrorKind::CapExceeded, "Ex above dimension 2 on " + std::to_string(base_->nondegenerate_total()) +
                                       " nondegenerate cells needs the large-input override");
    auto levels = static_cast<std::size_t>(N) + 1;
    for (int n = 0; n <= N; ++n) {
      simplices_.push_back(share(standard_simplex(n, N)));
      subdivisions_.emplace_back(simplices_.back());
    }
    elements_.resize(levels);
    lookup_.resize(levels);
    for (int n = 0; n <= N; ++n) {
      const SimplicialSet& S = *subdivisions_[static_cast<std::size_t>(n)].result();
      detail::for_each_map_indices(S, table_, budget, [&](const std::vector<std::vector<std::size_t>>& images) {
        std::vector<std::size_t> flat;
        for (const auto& level : images) flat.insert(flat.end(), level.begin(), level.end());
        lookup_[static_cast<std::size_t>(n)].emplace(flat, elements_[static_cast<std::size_t>(n)].size());
        elements_[static_cast<std::size_t>(n)].push_back(std::move(flat));
        return true;
      });
    }
    // precomposition plans for faces and degeneracies
    face_plans_.resize(levels);
    degen_plans_.resize(levels);
    for (int n = 1; n <= N; ++n)
      for (int i = 0; i <= n; ++i) face_plans_[static_cast<std::size_t>(n)].push_back(plan(face_map(n, i)));
    for (int n = 0; n < N; ++n)
      for (int i = 0; i <= n; ++i) degen_plans_[static_cast<std::size_t>(n)].push_back(plan(degeneracy_map(n, i)));
    // nondegenerate elements and their presentation
    nondeg_index_.resize(levels);
    refs_.resize(levels);
    std::vector<std::vector<std::string>> names(levels);
    std::vector<std::vector<std::vector<CellRef>>> faces(levels);
    for (int n = 0; n <= N; ++n) {
      auto un = static_cast<std::size_t>(n);
      nondeg_index_[un].assign(elements_[un].size(), kNone);
      refs_[un].resize(elements_[un].size());
      for (std::size_t e = 0; e < elements_[un].size(); ++e) {
        std::optional<int> collapse;
        for (int i = 0; n > 0 && i < n && !collapse; ++i)
          if (degeneracy(n - 1, face(n, e, i), i) == e) collapse = i;
        if (collapse) {
          refs_[un][e] = apply_degeneracy(refs_[un - 1][face(n, e, *collapse)], *collapse);
          continue;
        }
        nondeg_index_[un][e] = names[un].size();
        refs_[un][e] = CellRef{n, names[un].size(), {}};
        names[un].push_back("e" + std::to_string(n) + "_" + std::to_string(e));
        std::vector<CellRef> fs;
        for (int i = 0; n > 0 && i <= n; ++i) fs.push_back(refs_[un - 1][face(n, e, i)]);
        faces[un].push_back(std::move(fs));
      }
    }
    result_ = share(SimplicialSet::make(N, std::move(names), std::move(faces)));
  }

  [[nodiscard]] const SSetRef& base() const noexcept { return base_; }
  [[nodiscard]] const SSetRef& result() const noexcept { return result_; }
  [[nodiscard]] std::size_t element_count(int n) const { return elements_.at(static_cast<std::size_t>(n)).size(); }
  /// images of the nondegenerate cells of sd(Δⁿ), flattened by dimension, as
  /// indices into CellTable(X)
  [[nodiscard]] const std::vector<std::size_t>& element(int n, std::size_t e) const {
    return elements_.at(static_cast<std::size_t>(n)).at(e);
  }
  [[nodiscard]] const CellRef& ref(int n, std::size_t e) const { return refs_.at(static_cast<std::size_t>(n)).at(e); }

  [[nodiscard]] std::size_t face(int n, std::size_t e, int i) const {
    return apply(n - 1, face_plans_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)], e, n);
  }
  [[nodiscard]] std::size_t degeneracy(int n, std::size_t e, int i) const {
    return apply(n + 1, degen_plans_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)], e, n);
  }

  /// Index in Ex(X)_n of a map sd(Δⁿ) → X given on nondegenerate cells.
  [[nodiscard]] std::size_t find(int n, const std::vector<std::size_t>& flat) const {
    const auto& m = lookup_.at(static_cast<std::size_t>(n));
    auto it = m.find(flat);
    if (it == m.end()) fail(ErrorKind::InvalidAssignment, "not a simplicial map sd(Δⁿ) → X");
    return it->second;
  }

  /// The unit X → Ex(X): a cell goes to its characteristic map after the
  /// last-vertex map.
  [[nodiscard]] SimplicialMap unit() const {
    const SimplicialSet& X = *base_;
    SimplicialMap u{base_, result_, {}};
    for (int n = 0; n <= X.max_dim(); ++n) {
      u.images.emplace_back();
      const Subdivision& sub = subdivisions_[static_cast<std::size_t>(n)];
      const SimplicialSet& S = *sub.result();
      const SimplicialSet& D = *simplices_[static_cast<std::size_t>(n)];
      for (std::size_t x = 0; x < X.count(n); ++x) {
        std::vector<std::size_t> flat;
        for (int d = 0; d <= S.max_dim(); ++d)
          for (std::size_t i = 0; i < S.count(d); ++i) {
            const SdCell& c = sub.cell(d, i);
            DeltaMap theta{d, n, {}};
            for (VertexMask s : c.chain) {
              int local_top = 31 - std::countl_zero(s);
              auto v = D.act(D.cell(c.x_dim, c.x), DeltaMap{0, c.x_dim, {local_top}});
              theta.values.push_back(static_cast<int>(v.base));
            }
            flat.push_back(table_.index(X.act(X.cell(n, x), theta)));
          }
        u.images.back().push_back(ref(n, find(n, flat)));
      }
    }
    return u;
  }

 private:
  // For each nondegenerate cell of sd(Δᵐ): the sd(Δⁿ)-cell it maps to under sd(θ).
  struct Plan {
    std::vector<CellRef> targets;
  };

  Plan plan(const DeltaMap& theta) const {
    const auto m = static_cast<std::size_t>(theta.dom), n = static_cast<std::size_t>(theta.cod);
    SimplicialMap f = delta_simplicial_map(theta, simplices_[m], simplices_[n]);
    SimplicialMap s = sd_map(subdivisions_[m], subdivisions_[n], f);
    Plan p;
    for (const auto& level : s.images) p.targets.insert(p.targets.end(), level.begin(), level.end());
    return p;
  }

  std::size_t apply(int m, const Plan& p, std::size_t e, int n) const {
    const SimplicialSet& S = *subdivisions_[static_cast<std::size_t>(n)].result();
    std::vector<std::size_t> offset(static_cast<std::size_t>(S.max_dim()) + 2, 0);
    for (int d = 0; d <= S.max_dim(); ++d)
      offset[static_cast<std::size_t>(d) + 1] = offset[static_cast<std::size_t>(d)] + S.count(d);
    const auto& phi = elements_[static_cast<std::size_t>(n)][e];
    std::vector<std::size_t> flat;
    flat.reserve(p.targets.size());
    for (const CellRef& r : p.targets) {
      std::size_t cur = phi[offset[static_cast<std::size_t>(r.base_dim)] + r.base];
      int d = r.base_dim;
      for (auto it = r.word.rbegin(); it != r.word.rend(); ++it) cur = table_.degeneracy(d++, cur, *it);
      flat.push_back(cur);
    }
    return find(m, flat);
  }

  SSetRef base_;
  CellTable table_;
  std::vector<SSetRef> simplices_;
  std::vector<Subdivision> subdivisions_;
  std::vector<std::vector<std::vector<std::size_t>>> elements_;
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> lookup_;
  std::vector<std::vector<Plan>> face_plans_;
  std::vector<std::vector<Plan>> degen_plans_;
  std::vector<std::vector<std::size_t>> nondeg_index_;
  std::vector<std::vector<CellRef>> refs_;
  SSetRef result_;
};

struct ExStage {
  SSetRef complex;
  ClassifyReport report;
};

/// X, Ex(X), ..., Ex^k(X) with a horn report per stage.
inline std::vector<ExStage> ex_iter(const SSetRef& x, int k, Budget& budget, ExOptions options = {}) {
  if (k < 0) fail(ErrorKind::BadIndices, "negative iteration count");
  std::vector<ExStage> out;
  SSetRef cur = x;
  for (int stage = 0; stage <= k; ++stage) {
    if (stage > 0) cur = ExComplex(cur, budget, options).result();
    out.push_back(ExStage{cur, classify(*cur, cur->max_dim(), budget)});
  }
  return out;
}

}  // namespace catkit
