#include <catch_amalgamated.hpp>

#include "support/gen.hpp"

using namespace catkit;
using catkit::testing::pick;
using catkit::testing::Rng;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Schema;
}

AbelianInvariants pi1_of(const SimplicialSet& x, Pi1Options options = {}) {
  return abelian_invariants(pi1(x, x.name(0, 0), options));
}

using Matrix = std::vector<std::vector<std::int64_t>>;

std::int64_t det(const Matrix& m) {
  if (m.size() == 1) return m[0][0];
  std::int64_t d = 0;
  for (std::size_t c = 0; c < m.size(); ++c) {
    Matrix minor;
    for (std::size_t r = 1; r < m.size(); ++r) {
      minor.emplace_back();
      for (std::size_t k = 0; k < m.size(); ++k)
        if (k != c) minor.back().push_back(m[r][k]);
    }
    d += (c % 2 ? -1 : 1) * m[0][c] * det(minor);
  }
  return d;
}

void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// d_k = gcd of k×k minors; invariant factors are the ratios d_k / d_{k-1}.
std::vector<std::int64_t> invariant_factors(const Matrix& m, std::size_t cols) {
  std::vector<std::int64_t> out;
  std::int64_t prev = 1;
  for (std::size_t k = 1; k <= std::min(m.size(), cols); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(m.size(), k, 0, cur, rs);
    subsets(cols, k, 0, cur, cs);
    std::int64_t g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        Matrix sub;
        for (auto i : r) {
          sub.emplace_back();
          for (auto j : c) sub.back().push_back(m[i][j]);
        }
        g = std::gcd(g, det(sub));
      }
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

GroupPresentation free_group(std::vector<std::string> gens) { return {std::move(gens), {}}; }

GroupPresentation random_presentation(Rng& rng) {
  GroupPresentation p;
  std::size_t g = pick(rng, 1, 3);
  for (std::size_t i = 0; i < g; ++i) p.generators.push_back(std::string(1, static_cast<char>('a' + i)));
  std::size_t r = pick(rng, 0, 3);
  for (std::size_t i = 0; i < r; ++i) {
    Word w;
    std::size_t len = pick(rng, 1, 6);
    for (std::size_t k = 0; k < len; ++k) w.push_back(Letter{pick(rng, 0, g - 1), pick(rng, 0, 1) == 1});
    p.relators.push_back(w);
  }
  return p;
}

}  // namespace

TEST_CASE("path components", "[homotopy]") {
  auto s1 = catkit::testing::corpus_sset("s1.json");
  CHECK(pi0(*s1).size() == 1);
  auto u = disjoint_union(s1, catkit::testing::corpus_sset("torus7.json"));
  auto p = pi0(*u.result);
  REQUIRE(p.size() == 2);
  CHECK(p[0].size() + p[1].size() == 8);
  CHECK(pi0(boundary(1, 2)).size() == 2);
}

TEST_CASE("fundamental groups of the corpus complexes", "[homotopy][pi1]") {
  const std::vector<std::pair<std::string, std::string>> expected{
      {"s1.json", "Z"},         {"boundary_delta3.json", "0"},      {"wedge_circles.json", "Z^2"},
      {"torus7.json", "Z^2"},   {"figure_eight_disk.json", "Z"},    {"delta2.json", "0"},
      {"horn21.json", "0"}};
  for (const auto& [file, inv] : expected) {
    auto x = catkit::testing::corpus_sset(file);
    INFO(file);
    CHECK(pi1_of(*x).to_string() == inv);
    CHECK(pi1_of(*x, Pi1Options{true}) == pi1_of(*x));
  }
  auto s1 = catkit::testing::corpus_sset("s1.json");
  auto p = pi1(*s1, "v");
  CHECK(p.generators.size() == 1);
  CHECK(p.relators.empty());
}

TEST_CASE("π₁ needs a vertex and a 2-skeleton", "[homotopy][pi1]") {
  auto s1 = catkit::testing::corpus_sset("s1.json");
  CHECK(kind_of([&] { (void)pi1(*s1, "a"); }) == ErrorKind::BaseNotFound);
  CHECK(kind_of([&] { (void)pi1(*s1, "nowhere"); }) == ErrorKind::BaseNotFound);
  CHECK(kind_of([&] { (void)pi1(retruncate(*s1, 1), "v"); }) == ErrorKind::DimensionTooLow);
}

TEST_CASE("π₁ sees only the base component", "[homotopy][pi1]") {
  auto u = disjoint_union(catkit::testing::corpus_sset("s1.json"), catkit::testing::corpus_sset("torus7.json"));
  const SimplicialSet& x = *u.result;
  std::set<std::string> seen;
  for (std::size_t v = 0; v < x.count(0); ++v) seen.insert(abelian_invariants(pi1(x, x.name(0, v))).to_string());
  CHECK(seen == std::set<std::string>{"Z", "Z^2"});
}

TEST_CASE("nerves of groups have the group as π₁ after abelianization", "[homotopy][pi1]") {
  for (std::size_t n = 2; n <= 4; ++n) {
    auto bg = nerve_EG(cyclic_group(n), 2).bg_nerve;
    auto inv = pi1_of(*bg);
    CHECK(inv.rank == 0);
    CHECK(inv.torsion == std::vector<std::int64_t>{static_cast<std::int64_t>(n)});
  }
}

TEST_CASE("Smith form matches determinantal divisors", "[homotopy][smith][property]") {
  Rng rng(catkit::testing::kDefaultSeed + 60);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t rows = pick(rng, 1, 4), cols = pick(rng, 1, 4);
    Matrix m(rows, std::vector<std::int64_t>(cols));
    for (auto& row : m)
      for (auto& e : row) e = static_cast<std::int64_t>(pick(rng, 0, 12)) - 6;
    auto form = catkit::detail::smith(m, cols);
    INFO("trial " << trial);
    CHECK(form.diagonal == invariant_factors(m, cols));
    // the column transform is unimodular
    CHECK(std::abs(det(form.column_ops)) == 1);
  }
}

TEST_CASE("Tietze simplification keeps the abelianization", "[homotopy][tietze][property]") {
  Rng rng(catkit::testing::kDefaultSeed + 61);
  for (int trial = 0; trial < 300; ++trial) {
    auto p = random_presentation(rng);
    auto q = tietze_simplify(p, 100);
    CHECK(abelian_invariants(q) == abelian_invariants(p));
    CHECK(q.generators.size() <= p.generators.size());
  }
  auto b = pi1(*catkit::testing::corpus_sset("boundary_delta3.json"), "0");
  auto t = tietze_simplify(b, 1000);
  CHECK(t.generators.empty());
  CHECK(t.relators.empty());
  auto s = tietze_simplify(pi1(*catkit::testing::corpus_sset("s1.json"), "v"), 1000);
  CHECK(s.generators.size() == 1);
  CHECK(tietze_simplify(b, 0).generators.size() == b.generators.size());
}

TEST_CASE("free and cyclic reduction", "[homotopy]") {
  Word w{{0, false}, {1, false}, {1, true}, {0, true}};
  CHECK(free_reduce(w).empty());
  Word c{{0, true}, {1, false}, {0, false}};
  CHECK(cyclic_reduce(c) == Word{{1, false}});
  CHECK(inverse(Word{{0, false}, {1, true}}) == Word{{1, false}, {0, true}});
}

TEST_CASE("homomorphism specifications are checked", "[homotopy][svk]") {
  GroupPresentation z2{{"t"}, {{{0, false}, {0, false}}}};
  GroupPresentation z = free_group({"x"});
  CHECK(kind_of([&] { check_hom_spec({z2, z, {}}); }) == ErrorKind::InvalidAssignment);
  CHECK(kind_of([&] { check_hom_spec({z2, z, {{{1, false}}}}); }) == ErrorKind::InvalidAssignment);
  // t ↦ x sends t² to a nontrivial element of Z
  CHECK(kind_of([&] { check_hom_spec({z2, z, {{{0, false}}}}); }) == ErrorKind::InvalidAssignment);
  CHECK_NOTHROW(check_hom_spec({z2, z, {{}}}));
  CHECK_NOTHROW(check_hom_spec({z, z2, {{{0, false}}}}));
  CHECK(kind_of([&] { (void)svk_pushout({z, z, {{{0, false}}}}, {z2, z2, {{{0, false}}}}); }) ==
        ErrorKind::EndpointMismatch);
}

TEST_CASE("amalgamation agrees with π₁ of the glued complex", "[homotopy][svk]") {
  auto wedge_in = io::read_svk(io::read_file(catkit::testing::corpus_path("svk_circles.json")));
  CHECK(abelian_invariants(svk_pushout(wedge_in.phi1, wedge_in.phi2)) ==
        pi1_of(*catkit::testing::corpus_sset("wedge_circles.json")));
  auto disk_in = io::read_svk(io::read_file(catkit::testing::corpus_path("svk_figure_eight_disk.json")));
  CHECK(abelian_invariants(svk_pushout(disk_in.phi1, disk_in.phi2)) ==
        pi1_of(*catkit::testing::corpus_sset("figure_eight_disk.json")));

  // colliding generator names get primed
  GroupPresentation one = free_group({});
  auto merged = svk_pushout({one, free_group({"a"}), {}}, {one, free_group({"a"}), {}});
  CHECK(merged.generators == std::vector<std::string>{"a", "a'"});
}

TEST_CASE("wedges of corpus complexes amalgamate over the trivial group", "[homotopy][svk][property]") {
  std::vector<SSetRef> xs;
  for (const char* f : {"s1.json", "torus7.json", "figure_eight_disk.json", "boundary_delta3.json"})
    xs.push_back(catkit::testing::corpus_sset(f));
  xs.push_back(share(retruncate(*nerve_EG(cyclic_group(3), 2).bg_nerve, 2)));
  GroupPresentation one = free_group({});
  for (const auto& x : xs)
    for (const auto& y : xs) {
      auto w = wedge(x, x->name(0, 0), y, y->name(0, 0));
      auto px = pi1(*x, x->name(0, 0)), py = pi1(*y, y->name(0, 0));
      auto amalgam = svk_pushout({one, px, {}}, {one, py, {}});
      CHECK(abelian_invariants(amalgam) == pi1_of(*w.result));
    }
}
