#include <catch_amalgamated.hpp>

#include "support/gen.hpp"

using namespace catkit;
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

}  // namespace

TEST_CASE("categories survive a JSON round trip", "[io][property]") {
  Rng rng(catkit::testing::kDefaultSeed + 80);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = catkit::testing::random_category(rng);
    auto text = io::category_json(c).dump();
    CHECK(io::read_category(io::parse_text(text)) == c);
  }
}

TEST_CASE("functors survive a JSON round trip", "[io][property]") {
  Rng rng(catkit::testing::kDefaultSeed + 81);
  int seen = 0;
  for (int trial = 0; trial < 20; ++trial) {
    auto c = share(catkit::testing::random_category(rng, 2, 3));
    auto d = share(catkit::testing::random_category(rng, 3, 3));
    Budget budget;
    for (const auto& f : enumerate_functors(c, d, budget)) {
      CHECK(io::read_functor(io::functor_json(f)) == f);
      if (++seen > 200) return;
    }
  }
}

TEST_CASE("diagrams survive a JSON round trip", "[io][property]") {
  Rng rng(catkit::testing::kDefaultSeed + 82);
  for (int trial = 0; trial < 60; ++trial) {
    auto shape = share(catkit::testing::random_category(rng));
    auto d = catkit::testing::random_diagram(rng, shape);
    auto back = io::read_diagram(io::diagram_json(d));
    CHECK(*back.shape == *shape);
    CHECK(back.sets == d.sets);
    CHECK(back.arrows == d.arrows);
    auto bare = io::read_diagram(io::diagram_json(d, false), shape);
    CHECK(bare.arrows == d.arrows);
  }
}

TEST_CASE("simplicial sets survive a JSON round trip", "[io]") {
  for (const char* f : {"s1.json", "torus7.json", "boundary_delta3.json", "figure_eight_disk.json", "horn21.json"}) {
    auto x = catkit::testing::corpus_sset(f);
    CHECK(io::read_simplicial_set(io::simplicial_set_json(*x)) == *x);
  }
  auto n = nerve(validate_category({{"A", "B"}, {{"f", "A", "B"}}, {}}), 3);
  CHECK(io::read_simplicial_set(io::simplicial_set_json(n)) == n);
}

TEST_CASE("presentations and their letters", "[io]") {
  auto p = io::read_presentation(io::parse_text(R"({"gens": ["a", "b"], "rels": [["a", "B", "a^-1", "b"]]})"));
  REQUIRE(p.relators.size() == 1);
  CHECK(p.relators[0] == Word{{0, false}, {1, true}, {0, true}, {1, false}});
  CHECK(io::read_presentation(io::presentation_json(p)) == p);
  CHECK(kind_of([] { (void)io::read_presentation(io::parse_text(R"({"gens": ["a"], "rels": [["c"]]})")); }) ==
        ErrorKind::Schema);
  // an uppercase generator is itself, not an inverse
  auto q = io::read_presentation(io::parse_text(R"({"gens": ["A", "a"], "rels": [["A"]]})"));
  CHECK(q.relators[0] == Word{{0, false}});
}

TEST_CASE("schema violations are reported as such", "[io]") {
  CHECK(kind_of([] { (void)io::parse_text("{ not json"); }) == ErrorKind::Schema);
  CHECK(kind_of([] { (void)io::read_file("/nonexistent/catkit.json"); }) == ErrorKind::Schema);
  CHECK(kind_of([] { (void)io::read_category(io::parse_text(R"({"v": 2, "objects": ["A"]})")); }) == ErrorKind::Schema);
  CHECK(kind_of([] { (void)io::read_category(io::parse_text(R"({"objects": ["A"], "extra": 1})")); }) ==
        ErrorKind::Schema);
  CHECK(kind_of([] { (void)io::read_category(io::parse_text(R"({"morphisms": []})")); }) == ErrorKind::Schema);
  CHECK(kind_of([] { (void)io::read_category(io::parse_text(R"([1, 2])")); }) == ErrorKind::Schema);
  // a well-formed file can still describe an invalid category
  CHECK(kind_of([] {
          (void)io::read_category(io::parse_text(
              R"({"objects": ["A", "B", "C"], "morphisms": [{"name": "f", "src": "A", "dst": "B"},
                  {"name": "g", "src": "B", "dst": "C"}]})"));
        }) == ErrorKind::MissingComposite);
  CHECK(kind_of([] { (void)io::read_diagram(io::parse_text(R"({"sets": {}})")); }) == ErrorKind::Schema);
}

TEST_CASE("the version field is optional", "[io]") {
  auto a = io::read_category(io::parse_text(R"({"objects": ["A"]})"));
  auto b = io::read_category(io::parse_text(R"({"v": 1, "objects": ["A"]})"));
  CHECK(a == b);
}

TEST_CASE("corpus files load", "[io]") {
  CHECK_NOTHROW(io::read_diagram(io::read_file(catkit::testing::corpus_path("pullback_diagram.json"))));
  CHECK_NOTHROW(io::read_diagram(io::read_file(catkit::testing::corpus_path("pushout_diagram.json"))));
  CHECK_NOTHROW(io::read_bifunctor(io::read_file(catkit::testing::corpus_path("hom_arrow.json"))));
  auto m = check_monoid(io::read_monoid(io::read_file(catkit::testing::corpus_path("z2_monoid.json"))));
  CHECK(m.size() == 2);
  auto a = check_action(io::read_action(io::read_file(catkit::testing::corpus_path("z2_action.json"))));
  CHECK(orbit(a).size() >= 1);
  auto model = io::read_model(io::read_file(catkit::testing::corpus_path("model_trivial_arrow.json")));
  for (ObjId x = 0; x < model.base->object_count(); ++x) CHECK(model.weq[model.base->identity(x)]);
}
