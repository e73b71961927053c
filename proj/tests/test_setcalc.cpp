#include <catch_amalgamated.hpp>

#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace catkit;
using catkit::testing::iterated;
using catkit::testing::Rng;
using catkit::testing::slice_first;
using catkit::testing::slice_second;

namespace {

CategoryRef arrow() { return share(validate_category({{"A", "B"}, {{"f", "A", "B"}}, {}})); }

FinSet named(const std::string& name, std::size_t n, const std::string& prefix) {
  std::vector<std::string> els;
  for (std::size_t i = 0; i < n; ++i) els.push_back(prefix + std::to_string(i));
  return FinSet(name, els);
}

FinFunctor inclusion(const CategoryRef& c, const CategoryRef& d, const std::vector<std::string>& objects) {
  FinFunctor f{c, d, {}, {}};
  for (const auto& o : objects) f.on_objects.push_back(d->object_id(o));
  for (MorId m = 0; m < c->morphism_count(); ++m)
    f.on_morphisms.push_back(c->is_identity(m) ? d->identity(f.on_objects[c->src(m)])
                                               : d->morphism_id(c->morphism(m).name));
  validate_functor(f);
  return f;
}

Diagram on_points(const CategoryRef& c, const std::vector<std::size_t>& sizes) {
  Diagram d{c, {}, {}};
  for (ObjId x = 0; x < c->object_count(); ++x) d.sets.push_back(named(c->object_name(x), sizes[x], c->object_name(x)));
  for (MorId m = 0; m < c->morphism_count(); ++m) d.arrows.push_back(catkit::detail::identity_map(sizes[c->src(m)]));
  validate_diagram(d);
  return d;
}

}  // namespace

TEST_CASE("binary product and coproduct", "[setcalc]") {
  FinSet a("A", {"x", "y"}), b("B", {"p", "q", "r"});
  auto p = product({a, b});
  CHECK(p.apex.size() == 6);
  CHECK(p.legs[1].map[p.apex.index_of("(y,q)")] == 1);
  auto s = coproduct({a, b});
  CHECK(s.apex.size() == 5);
}

TEST_CASE("equalizer and coequalizer of a parallel pair", "[setcalc]") {
  FinSet a("A", {"0", "1", "2"}), b("B", {"u", "v"});
  FinFunction f{a, b, {0, 1, 0}}, g{a, b, {0, 0, 0}};
  auto e = equalizer(f, g);
  CHECK(e.apex.elements() == std::vector<std::string>{"0", "2"});
  auto q = coequalizer(f, g);
  CHECK(q.apex.size() == 1);
}

TEST_CASE("pullback and pushout through the generic constructions", "[setcalc]") {
  FinSet a("A", {"a0", "a1"}), b("B", {"b0", "b1", "b2"}), c("C", {"c0", "c1"});
  auto pb = pullback(FinFunction{a, c, {0, 1}}, FinFunction{b, c, {0, 0, 1}});
  CHECK(pb.apex.size() == 3);
  FinSet x("X", {"x", "y"});
  auto po = pushout(FinFunction{x, b, {0, 0}}, FinFunction{x, c, {0, 1}});
  // b0 ~ c0 ~ c1, leaving b1 and b2 alone
  CHECK(po.apex.size() == 3);
}

TEST_CASE("limits match the exhaustive cone oracle", "[setcalc][property]") {
  Rng rng(catkit::testing::kDefaultSeed + 10);
  for (int trial = 0; trial < 150; ++trial) {
    auto shape = share(catkit::testing::random_category(rng));
    auto d = catkit::testing::random_diagram(rng, shape);
    INFO("trial " << trial);
    CHECK(catkit::testing::limit_matches_oracle(d, limit(d)));
  }
}

TEST_CASE("colimits match the exhaustive cocone oracle", "[setcalc][property]") {
  Rng rng(catkit::testing::kDefaultSeed + 11);
  for (int trial = 0; trial < 150; ++trial) {
    auto shape = share(catkit::testing::random_category(rng));
    auto d = catkit::testing::random_diagram(rng, shape);
    INFO("trial " << trial);
    CHECK(catkit::testing::colimit_matches_oracle(d, colimit(d)));
  }
}

TEST_CASE("natural transformation count agrees with brute force", "[setcalc][property]") {
  Rng rng(catkit::testing::kDefaultSeed + 12);
  for (int trial = 0; trial < 60; ++trial) {
    auto shape = share(catkit::testing::random_category(rng, 3, 4));
    auto f = catkit::testing::random_diagram(rng, shape, 2);
    auto g = catkit::testing::random_diagram(rng, shape, 3);
    Budget budget;
    CHECK(count_nat(f, g, budget) == catkit::testing::brute_nat_count(f, g));
  }
}

TEST_CASE("Yoneda evaluation is a bijection", "[setcalc][property]") {
  Rng rng(catkit::testing::kDefaultSeed + 13);
  for (int trial = 0; trial < 60; ++trial) {
    auto c = share(catkit::testing::random_category(rng));
    const auto& x = c->object_name(catkit::testing::pick(rng, 0, c->object_count() - 1));
    Budget budget;
    auto f = catkit::testing::random_diagram(rng, c);
    auto w = yoneda_check(c, x, f, Variance::co, budget);
    CHECK(w.nat_count == f.sets[c->object_id(x)].size());
    auto op = share(opposite(*c));
    auto g = catkit::testing::random_diagram(rng, op);
    auto v = yoneda_check(c, x, g, Variance::contra, budget);
    CHECK(v.nat_count == g.sets[c->object_id(x)].size());
  }
}

TEST_CASE("Kan extensions along the inclusion of the endpoints", "[setcalc][kan]") {
  auto d = arrow();
  auto disc = share(discrete_category({"A", "B"}));
  auto i = inclusion(disc, d, {"A", "B"});
  auto f = on_points(disc, {2, 3});
  auto l = lan(f, i);
  CHECK(l.extension.sets[0].size() == 2);
  CHECK(l.extension.sets[1].size() == 5);
  auto r = ran(f, i);
  CHECK(r.extension.sets[0].size() == 6);
  CHECK(r.extension.sets[1].size() == 3);
  Budget budget;
  auto tests = enumerate_set_functors(d, 2, budget);
  CHECK(check_kan_universal(l, f, i, tests, budget).rows.size() == tests.size());
  CHECK(check_kan_universal(r, f, i, tests, budget).rows.size() == tests.size());
}

TEST_CASE("Kan extensions from a point into the arrow", "[setcalc][kan]") {
  auto d = arrow();
  auto one = share(terminal_category("A"));
  auto one_b = share(terminal_category("B"));
  Budget budget;
  auto tests = enumerate_set_functors(d, 2, budget);
  auto f = on_points(one, {2});
  auto at_a = inclusion(one, d, {"A"});
  auto l = lan(f, at_a);
  CHECK(l.extension.sets[1].size() == 2);
  auto r = ran(f, at_a);
  CHECK(r.extension.sets[1].size() == 1);
  auto fb = on_points(one_b, {2});
  auto at_b = inclusion(one_b, d, {"B"});
  CHECK(lan(fb, at_b).extension.sets[0].size() == 0);
  CHECK(ran(fb, at_b).extension.sets[0].size() == 2);
  for (const auto& [ext, fn, inc] :
       {std::tuple{l, f, at_a}, std::tuple{r, f, at_a}, std::tuple{lan(fb, at_b), fb, at_b},
        std::tuple{ran(fb, at_b), fb, at_b}})
    CHECK_NOTHROW(check_kan_universal(ext, fn, inc, tests, budget));
}

TEST_CASE("a mutated left Kan extension is not universal", "[setcalc][kan]") {
  auto d = arrow();
  auto disc = share(discrete_category({"A", "B"}));
  auto i = inclusion(disc, d, {"A", "B"});
  auto f = on_points(disc, {2, 1});
  auto l = lan(f, i);
  l.unit[0][0] = l.unit[0][1];
  Budget budget;
  auto tests = enumerate_set_functors(d, 2, budget);
  CHECK_THROWS_MATCHES(check_kan_universal(l, f, i, tests, budget), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.kind() == ErrorKind::NotUniversal; }));
}

TEST_CASE("Kan extensions along random functors are universal", "[setcalc][kan][property]") {
  Rng rng(catkit::testing::kDefaultSeed + 14);
  int checked = 0;
  for (int trial = 0; trial < 12; ++trial) {
    auto c = share(catkit::testing::random_category(rng, 2, 2));
    auto d = share(catkit::testing::random_category(rng, 2, 2));
    Budget budget;
    auto functors = enumerate_functors(c, d, budget);
    if (functors.empty()) continue;
    const auto& i = functors[catkit::testing::pick(rng, 0, functors.size() - 1)];
    auto f = catkit::testing::random_diagram(rng, c, 2);
    auto tests = enumerate_set_functors(d, 2, budget);
    CHECK_NOTHROW(check_kan_universal(lan(f, i), f, i, tests, budget));
    CHECK_NOTHROW(check_kan_universal(ran(f, i), f, i, tests, budget));
    ++checked;
  }
  CHECK(checked > 0);
}

TEST_CASE("end and coend of the hom bifunctor of the arrow", "[setcalc][end]") {
  auto d = arrow();
  auto id = identity_functor(d);
  auto h = hom_bifunctor(id, id);
  CHECK(end(h).size() == 1);
  CHECK(coend(h).size() == 2);
}

TEST_CASE("end of Set(F, G) counts natural transformations", "[setcalc][end][property]") {
  Rng rng(catkit::testing::kDefaultSeed + 15);
  for (int trial = 0; trial < 40; ++trial) {
    auto shape = share(catkit::testing::random_category(rng, 3, 3));
    auto f = catkit::testing::random_diagram(rng, shape, 2);
    auto g = catkit::testing::random_diagram(rng, shape, 2);
    CHECK(end(function_bifunctor(f, g)).size() == catkit::testing::brute_nat_count(f, g));
  }
}

TEST_CASE("end of a bifunctor constant in its first argument is a limit", "[setcalc][end][property]") {
  Rng rng(catkit::testing::kDefaultSeed + 16);
  for (int trial = 0; trial < 60; ++trial) {
    auto c = share(catkit::testing::random_category(rng));
    auto g = catkit::testing::random_diagram(rng, c);
    const std::size_t n = c->object_count(), m = c->morphism_count();
    std::vector<FinSet> sets;
    for (ObjId x = 0; x < n; ++x)
      for (ObjId y = 0; y < n; ++y) sets.push_back(g.sets[y]);
    std::vector<std::vector<std::size_t>> left(m * n), right(n * m);
    for (MorId f = 0; f < m; ++f)
      for (ObjId y = 0; y < n; ++y) left[f * n + y] = catkit::detail::identity_map(g.sets[y].size());
    for (ObjId x = 0; x < n; ++x)
      for (MorId u = 0; u < m; ++u) right[x * m + u] = g.arrows[u];
    auto h = make_bifunctor(c, sets, left, right);
    auto fam = end_families(h);
    auto lim = limit(g);
    std::set<std::vector<std::size_t>> from_end, from_limit;
    for (std::size_t k = 0; k < fam.apex.size(); ++k) {
      std::vector<std::size_t> t;
      for (ObjId x = 0; x < n; ++x) t.push_back(fam.families[k][x]);
      from_end.insert(t);
    }
    for (std::size_t k = 0; k < lim.apex.size(); ++k) {
      std::vector<std::size_t> t;
      for (ObjId x = 0; x < n; ++x) t.push_back(lim.legs[x].map[k]);
      from_limit.insert(t);
    }
    CHECK(fam.apex.size() == lim.apex.size());
    CHECK(from_end == from_limit);
  }
}

TEST_CASE("iterated ends agree in either order", "[setcalc][end][property]") {
  Rng rng(catkit::testing::kDefaultSeed + 17);
  for (int trial = 0; trial < 20; ++trial) {
    auto c = share(catkit::testing::random_category(rng, 2, 2));
    auto d = share(catkit::testing::random_category(rng, 2, 2));
    auto p = share(product_category(*c, *d));
    auto f = catkit::testing::random_diagram(rng, p, 2);
    auto g = catkit::testing::random_diagram(rng, p, 2);
    std::size_t whole = end(function_bifunctor(f, g)).size();
    auto over_c = iterated(
        c, [&](const Diagram& x, ObjId a) { return slice_first(x, *c, d, a); },
        [&](const Diagram& x, MorId u, std::size_t y) { return x.arrows[pair_morphism(*d, u, d->identity(y))]; }, f, g);
    auto over_d = iterated(
        d, [&](const Diagram& x, ObjId b) { return slice_second(x, c, *d, b); },
        [&](const Diagram& x, MorId u, std::size_t y) { return x.arrows[pair_morphism(*d, c->identity(y), u)]; }, f, g);
    INFO("trial " << trial);
    CHECK(end(over_c).size() == whole);
    CHECK(end(over_d).size() == whole);
  }
}
