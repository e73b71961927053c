#include <catch_amalgamated.hpp>

#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace catkit;
using catkit::testing::inverts;
using catkit::testing::pick;
using catkit::testing::universal_against;
using catkit::testing::Rng;

namespace {

const std::vector<std::string> kCorpusCategories{"walking_arrow.json", "walking_iso.json", "span.json",
                                                 "commuting_triangle.json", "z2_delooping.json", "idempotent.json"};

MarkedCategory random_marked(Rng& rng) {
  auto c = share(catkit::testing::random_category(rng, 3, 4));
  MorphismClass seed(c->morphism_count(), false);
  for (MorId f = 0; f < seed.size(); ++f) seed[f] = pick(rng, 0, 3) == 0;
  return saturate_two_of_three(c, seed);
}

}  // namespace

TEST_CASE("saturation under two-of-three", "[modelcat]") {
  auto c = catkit::testing::corpus_category("commuting_triangle.json");
  auto names = [&](const MarkedCategory& m) { return class_names(*m.base, m.weq); };
  auto none = saturate_two_of_three(c, MorphismClass(c->morphism_count(), false));
  CHECK(names(none) == std::vector<std::string>{"id_A", "id_B", "id_C"});
  auto two = saturate_two_of_three(c, class_of(*c, {"f", "g"}));
  CHECK(two.weq == MorphismClass(c->morphism_count(), true));
  CHECK_THROWS_AS(class_of(*c, {"nope"}), Error);
}

TEST_CASE("saturated classes are closed under two-of-three", "[modelcat][property]") {
  Rng rng(catkit::testing::kDefaultSeed + 70);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = random_marked(rng);
    const FinCategory& C = *m.base;
    for (MorId f = 0; f < C.morphism_count(); ++f) {
      if (is_isomorphism(C, f)) CHECK(m.weq[f]);
      for (MorId g = 0; g < C.morphism_count(); ++g)
        if (C.composable(g, f)) CHECK(int(m.weq[f]) + int(m.weq[g]) + int(m.weq[C.compose(g, f)]) != 2);
    }
  }
}

TEST_CASE("inverting only isomorphisms changes nothing", "[modelcat][localize][property]") {
  Rng rng(catkit::testing::kDefaultSeed + 71);
  std::vector<CategoryRef> cs;
  for (const auto& f : kCorpusCategories) cs.push_back(catkit::testing::corpus_category(f));
  for (int i = 0; i < 40; ++i) cs.push_back(share(catkit::testing::random_category(rng)));
  for (const auto& c : cs) {
    auto m = saturate_two_of_three(c, MorphismClass(c->morphism_count(), false));
    auto loc = localize(m);
    Budget budget;
    CHECK(loc.category->morphism_count() == c->morphism_count());
    CHECK(find_isomorphism(c, loc.category, budget).has_value());
    CHECK_NOTHROW(validate_functor(loc.p));
  }
}

TEST_CASE("the walking weak equivalence localizes to the walking isomorphism", "[modelcat][localize]") {
  auto c = catkit::testing::corpus_category("walking_arrow.json");
  auto m = saturate_two_of_three(c, class_of(*c, {"f"}));
  auto loc = localize(m);
  CHECK(loc.category->morphism_count() == 4);
  std::vector<std::string> names;
  for (MorId f = 0; f < loc.category->morphism_count(); ++f) names.push_back(loc.category->morphism(f).name);
  std::sort(names.begin(), names.end());
  CHECK(names == std::vector<std::string>{"f", "f^-1", "id_A", "id_B"});
  Budget budget;
  CHECK(find_isomorphism(loc.category, catkit::testing::corpus_category("walking_iso.json"), budget).has_value());
}

TEST_CASE("an inverted idempotent becomes the identity", "[modelcat][localize]") {
  auto c = catkit::testing::corpus_category("idempotent.json");
  MorphismClass all(c->morphism_count(), true);
  auto loc = localize(saturate_two_of_three(c, all));
  CHECK(loc.category->morphism_count() == 1);
}

TEST_CASE("localization is universal among functors inverting the class", "[modelcat][localize][property]") {
  Rng rng(catkit::testing::kDefaultSeed + 72);
  std::vector<CategoryRef> targets;
  for (const auto& f : kCorpusCategories) targets.push_back(catkit::testing::corpus_category(f));
  auto c = catkit::testing::corpus_category("walking_arrow.json");
  auto weq = saturate_two_of_three(c, class_of(*c, {"f"}));
  auto loc = localize(weq);
  for (const auto& d : targets) CHECK(universal_against(loc, weq, d));
  for (int trial = 0; trial < 30; ++trial) {
    auto m = random_marked(rng);
    auto l = localize(m);
    CHECK(inverts(l.p, m.weq));
    for (int k = 0; k < 3; ++k) {
      const auto& d = pick(rng, 0, 1) == 0 ? targets[pick(rng, 0, targets.size() - 1)]
                                           : share(catkit::testing::random_category(rng, 2, 4));
      INFO("trial " << trial);
      CHECK(universal_against(l, m, d));
    }
  }
}

TEST_CASE("localization respects its cap", "[modelcat][localize]") {
  auto c = catkit::testing::corpus_category("commuting_triangle.json");
  auto m = saturate_two_of_three(c, MorphismClass(c->morphism_count(), false));
  try {
    (void)localize(m, 1);
    FAIL("expected CapExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CapExceeded);
  }
}

TEST_CASE("lifting and retracts in the walking arrow", "[modelcat]") {
  auto c = catkit::testing::corpus_category("walking_arrow.json");
  MorId f = c->morphism_id("f"), ida = c->identity(0), idb = c->identity(1);
  auto sq = square_lifts(*c, f, f);
  REQUIRE(sq.has_value());
  CHECK(sq->top == ida);
  CHECK(sq->bottom == idb);
  CHECK_FALSE(square_lifts(*c, ida, f).has_value());
  CHECK(find_retraction(*c, f, f).has_value());
  CHECK_FALSE(find_retraction(*c, ida, f).has_value());
}

TEST_CASE("the trivial model structure is valid", "[modelcat][model][property]") {
  Rng rng(catkit::testing::kDefaultSeed + 73);
  std::vector<CategoryRef> cs;
  for (const auto& f : kCorpusCategories) cs.push_back(catkit::testing::corpus_category(f));
  for (int i = 0; i < 40; ++i) cs.push_back(share(catkit::testing::random_category(rng)));
  for (const auto& c : cs) {
    auto report = check_model(trivial_model(c));
    CHECK(report.passed());
    CHECK(report.axioms.back().checked == false);
  }
  auto stored = io::read_model(io::read_file(catkit::testing::corpus_path("model_trivial_arrow.json")));
  CHECK(check_model(stored).passed());
}

TEST_CASE("single mutations of the trivial model are caught", "[modelcat][model]") {
  for (const auto& file : kCorpusCategories) {
    auto c = catkit::testing::corpus_category(file);
    auto base = trivial_model(c);
    for (int which = 0; which < 3; ++which)
      for (MorId f = 0; f < c->morphism_count(); ++f) {
        auto m = base;
        MorphismClass& k = which == 0 ? m.weq : which == 1 ? m.fib : m.cof;
        k[f] = !k[f];
        auto report = check_model(m);
        INFO(file << " class " << which << " flips " << c->morphism(f).name);
        CHECK_FALSE(report.passed());
        REQUIRE(report.first_failure() != nullptr);
        CHECK_FALSE(report.first_failure()->witness.empty());
      }
  }
}

TEST_CASE("model classes must match the category", "[modelcat][model]") {
  auto c = catkit::testing::corpus_category("walking_arrow.json");
  auto m = trivial_model(c);
  m.fib.pop_back();
  CHECK_THROWS_AS(check_model(m), Error);
}
