// One PASS/FAIL line per acceptance criterion. Exits nonzero when any
// criterion fails, so ctest sees the regression.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace catkit;
using catkit::testing::pick;
using catkit::testing::Rng;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Collects the first reason a criterion fails.
struct Tally {
  bool ok = true;
  std::string why;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why = what;
    }
  }
  Outcome done(const std::string& summary) const { return {ok, ok ? summary : why}; }
};

int failures = 0;

void criterion(int id, const char* name, double limit_seconds, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const Error& e) {
    out = {false, std::string("error: ") + e.what()};
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::string timing;
  char buf[64];
  if (limit_seconds > 0) {
    std::snprintf(buf, sizeof buf, "%.2f s, limit %.0f s", secs, limit_seconds);
    if (secs >= limit_seconds && out.ok) out = {false, "too slow: " + out.detail};
  } else {
    std::snprintf(buf, sizeof buf, "%.2f s", secs);
  }
  timing = buf;
  if (!out.ok) ++failures;
  std::printf("%s %2d %s: %s (%s)\n", out.ok ? "PASS" : "FAIL", id, name, out.detail.c_str(), timing.c_str());
  std::fflush(stdout);
}

CategoryRef arrow() { return catkit::testing::corpus_category("walking_arrow.json"); }

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
  for (ObjId x = 0; x < c->object_count(); ++x) {
    std::vector<std::string> els;
    for (std::size_t i = 0; i < sizes[x]; ++i) els.push_back(c->object_name(x) + std::to_string(i));
    d.sets.emplace_back(c->object_name(x), els);
  }
  for (MorId m = 0; m < c->morphism_count(); ++m) d.arrows.push_back(catkit::detail::identity_map(sizes[c->src(m)]));
  validate_diagram(d);
  return d;
}

std::vector<std::size_t> all_counts(const SimplicialSet& x) {
  CellTable t(x);
  std::vector<std::size_t> v;
  for (int n = 0; n <= x.max_dim(); ++n) v.push_back(t.count(n));
  return v;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

const std::vector<std::string> kCorpusCategories{"walking_arrow.json", "walking_iso.json", "span.json",
                                                 "commuting_triangle.json", "z2_delooping.json", "idempotent.json"};

Outcome limits() {
  Rng rng(catkit::testing::kDefaultSeed + 100);
  const int trials = 250;
  int agree = 0;
  for (int t = 0; t < trials; ++t) {
    auto shape = share(catkit::testing::random_category(rng, 3, 5));
    auto d = catkit::testing::random_diagram(rng, shape, 3);
    if (catkit::testing::limit_matches_oracle(d, limit(d))) ++agree;
  }
  return {agree == trials, std::to_string(agree) + "/" + std::to_string(trials) + " diagrams agree with the cone search"};
}

Outcome yoneda() {
  Rng rng(catkit::testing::kDefaultSeed + 101);
  Tally tally;
  const int trials = 60;
  for (int t = 0; t < trials; ++t) {
    auto c = share(catkit::testing::random_category(rng));
    const auto x = c->object_name(pick(rng, 0, c->object_count() - 1));
    for (Variance v : {Variance::co, Variance::contra}) {
      auto shape = v == Variance::co ? c : share(opposite(*c));
      auto f = catkit::testing::random_diagram(rng, shape);
      Budget budget;
      auto w = yoneda_check(c, x, f, v, budget);
      std::size_t fx = f.sets[c->object_id(x)].size();
      auto sorted = w.evaluation;
      std::sort(sorted.begin(), sorted.end());
      std::vector<std::size_t> expected(fx);
      std::iota(expected.begin(), expected.end(), std::size_t{0});
      tally.require(w.nat_count == fx, "case " + std::to_string(t) + ": |Nat| differs from |F(X)|");
      tally.require(catkit::testing::brute_nat_count(hom_functor(c, x, v), f) == fx,
                    "case " + std::to_string(t) + ": brute-force |Nat| differs from |F(X)|");
      tally.require(sorted == expected, "case " + std::to_string(t) + ": evaluation is not a bijection");
    }
  }
  return tally.done(std::to_string(2 * trials) + " cases (co and contra), evaluation bijective");
}

Outcome kan() {
  Tally tally;
  auto d = arrow();
  Budget budget;
  auto tests = enumerate_set_functors(d, 2, budget);
  std::size_t checks = 0;
  auto both = [&](const Diagram& f, const FinFunctor& i) {
    check_kan_universal(lan(f, i), f, i, tests, budget);
    check_kan_universal(ran(f, i), f, i, tests, budget);
    checks += 2;
  };
  auto disc = share(discrete_category({"A", "B"}));
  auto i = inclusion(disc, d, {"A", "B"});
  for (std::size_t a = 0; a <= 2; ++a)
    for (std::size_t b = 0; b <= 2; ++b) both(on_points(disc, {a, b}), i);
  for (const char* o : {"A", "B"}) {
    auto one = share(terminal_category(o));
    auto at = inclusion(one, d, {o});
    for (std::size_t a = 0; a <= 3; ++a) both(on_points(one, {a}), at);
  }
  auto f = on_points(disc, {2, 1});
  auto l = lan(f, i);
  l.unit[0][0] = l.unit[0][1];
  bool caught = false;
  try {
    check_kan_universal(l, f, i, tests, budget);
  } catch (const Error& e) {
    caught = e.kind() == ErrorKind::NotUniversal;
  }
  tally.require(caught, "the mutated Lan passed the universality check");
  return tally.done(std::to_string(checks) + " extensions universal against " + std::to_string(tests.size()) +
                    " test functors; mutated Lan rejected");
}

Outcome ends() {
  Rng rng(catkit::testing::kDefaultSeed + 103);
  Tally tally;
  const int constant_trials = 60, fubini_trials = 25;
  for (int trial = 0; trial < constant_trials; ++trial) {
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
    auto fam = end_families(make_bifunctor(c, sets, left, right));
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
    tally.require(fam.apex.size() == lim.apex.size() && from_end == from_limit,
                  "constant bifunctor " + std::to_string(trial) + ": end differs from the limit");
  }
  for (int trial = 0; trial < fubini_trials; ++trial) {
    auto c = share(catkit::testing::random_category(rng, 2, 2));
    auto d = share(catkit::testing::random_category(rng, 2, 2));
    auto p = share(product_category(*c, *d));
    auto f = catkit::testing::random_diagram(rng, p, 2);
    auto g = catkit::testing::random_diagram(rng, p, 2);
    std::size_t whole = end(function_bifunctor(f, g)).size();
    auto over_c = catkit::testing::iterated(
        c, [&](const Diagram& x, ObjId a) { return catkit::testing::slice_first(x, *c, d, a); },
        [&](const Diagram& x, MorId u, std::size_t y) { return x.arrows[pair_morphism(*d, u, d->identity(y))]; }, f, g);
    auto over_d = catkit::testing::iterated(
        d, [&](const Diagram& x, ObjId b) { return catkit::testing::slice_second(x, c, *d, b); },
        [&](const Diagram& x, MorId u, std::size_t y) { return x.arrows[pair_morphism(*d, c->identity(y), u)]; }, f, g);
    tally.require(end(over_c).size() == whole && end(over_d).size() == whole,
                  "Fubini instance " + std::to_string(trial) + ": iterated ends disagree");
  }
  return tally.done(std::to_string(constant_trials) + " constant bifunctors, " + std::to_string(fubini_trials) +
                    " Fubini instances");
}

Outcome nerves() {
  auto eg = nerve_EG(cyclic_group(2), 3);
  auto bg = all_counts(*eg.bg_nerve), e = all_counts(*eg.eg_nerve);
  bool ok = bg == std::vector<std::size_t>{1, 2, 4, 8} && e == std::vector<std::size_t>{2, 4, 8, 16};
  return {ok, "N(BZ/2) " + join(bg) + ", N(EZ/2) " + join(e)};
}

Outcome horns() {
  Tally tally;
  Budget budget(Budget::kDefaultHornSearch);
  auto bg = nerve_EG(cyclic_group(2), 3).bg_nerve;
  tally.require(classify(*bg, 3, budget).verdict == Verdict::kan, "N(BZ/2) is not kan up to dimension 3");
  auto na = nerve(*arrow(), 3);
  auto report = classify(na, 3, budget);
  tally.require(report.verdict == Verdict::quasi, "the walking arrow nerve is not quasi");
  const HornStat* h = report.first_failure();
  std::string witness = h ? "horn " + std::to_string(h->n) + "," + std::to_string(h->k) + " [" + h->witness + "]" : "none";
  tally.require(h && h->n == 2 && h->k == 0 && h->witness == "∂1=s0 A, ∂2=f", "unexpected witness " + witness);
  Rng rng(catkit::testing::kDefaultSeed + 105);
  std::vector<CategoryRef> cs;
  for (const auto& f : kCorpusCategories) cs.push_back(catkit::testing::corpus_category(f));
  for (int i = 0; i < 30; ++i) cs.push_back(share(catkit::testing::random_category(rng, 3, 5)));
  auto horn21 = share(horn(2, 1, 2));
  std::size_t horns_seen = 0;
  for (const auto& c : cs) {
    auto n = share(nerve(*c, 2));
    Budget b;
    for (const auto& a : enumerate_maps(horn21, n, b)) {
      ++horns_seen;
      tally.require(horn_fillers(n, 2, 1, a).size() == 1, "an inner horn without a unique filler");
    }
  }
  return tally.done("N(BZ/2) kan; walking arrow quasi with " + witness + "; " + std::to_string(horns_seen) +
                    " inner 2-horns in " + std::to_string(cs.size()) + " nerves fill uniquely");
}

Outcome fundamental_groups() {
  Tally tally;
  auto inv = [](const char* file) {
    auto x = catkit::testing::corpus_sset(file);
    return abelian_invariants(pi1(*x, x->name(0, 0)));
  };
  auto s1 = inv("s1.json");
  tally.require(s1.to_string() == "Z", "S¹ gives " + s1.to_string());
  auto b = catkit::testing::corpus_sset("boundary_delta3.json");
  auto reduced = tietze_simplify(pi1(*b, b->name(0, 0)), 1000);
  tally.require(reduced.generators.empty() && reduced.relators.empty(), "∂Δ³ does not reduce to the empty presentation");
  auto w = inv("wedge_circles.json");
  tally.require(w.rank == 2 && w.torsion.empty(), "wedge gives " + w.to_string());
  auto t = inv("torus7.json");
  tally.require(t.rank == 2 && t.torsion.empty(), "torus gives " + t.to_string());
  return tally.done("S¹ " + s1.to_string() + ", ∂Δ³ empty after Tietze, wedge " + w.to_string() + ", torus " +
                    t.to_string());
}

Outcome van_kampen() {
  Tally tally;
  std::string detail;
  for (const auto& [svk, glued] : {std::pair{"svk_circles.json", "wedge_circles.json"},
                                   std::pair{"svk_figure_eight_disk.json", "figure_eight_disk.json"}}) {
    auto in = io::read_svk(io::read_file(catkit::testing::corpus_path(svk)));
    auto x = catkit::testing::corpus_sset(glued);
    auto a = abelian_invariants(svk_pushout(in.phi1, in.phi2));
    auto b = abelian_invariants(pi1(*x, x->name(0, 0)));
    tally.require(a == b, std::string(glued) + ": amalgam " + a.to_string() + " vs direct " + b.to_string());
    detail += (detail.empty() ? "" : ", ") + std::string(glued) + " " + a.to_string();
  }
  return tally.done(detail);
}

Outcome subdivision() {
  Tally tally;
  auto counts = [](const SSetRef& x) {
    std::vector<std::size_t> v;
    for (int n = 0; n <= x->max_dim(); ++n) v.push_back(x->count(n));
    return v;
  };
  auto d1 = counts(sd(share(standard_simplex(1, 1)))), d2 = counts(sd(share(standard_simplex(2, 2))));
  tally.require(d1 == std::vector<std::size_t>{3, 2}, "sd(Δ¹) is " + join(d1));
  tally.require(d2 == std::vector<std::size_t>{7, 12, 6}, "sd(Δ²) is " + join(d2));
  Budget budget;
  ExComplex ex(catkit::testing::corpus_sset("s1.json"), budget);
  tally.require(ex.element_count(1) == 4, "Ex(S¹)₁ has " + std::to_string(ex.element_count(1)) + " elements");
  std::vector<SSetRef> xs{share(standard_simplex(1, 2)), catkit::testing::corpus_sset("s1.json"),
                          catkit::testing::corpus_sset("horn21.json"), catkit::testing::corpus_sset("delta2.json"),
                          share(boundary(2, 2)), share(nerve(*arrow(), 2))};
  std::size_t pairs = 0;
  for (const auto& y : xs) {
    ExComplex ey(y, budget);
    for (const auto& x : xs) {
      ++pairs;
      std::size_t lhs = count_maps(*sd(x), *y, budget), rhs = count_maps(*x, *ey.result(), budget);
      tally.require(lhs == rhs, "adjunction count " + std::to_string(lhs) + " vs " + std::to_string(rhs));
    }
  }
  return tally.done("sd(Δ¹) " + join(d1) + ", sd(Δ²) " + join(d2) + ", |Ex(S¹)₁| 4, adjunction exact on " +
                    std::to_string(pairs) + " pairs");
}

Outcome localization() {
  Tally tally;
  Rng rng(catkit::testing::kDefaultSeed + 110);
  std::vector<CategoryRef> targets;
  for (const auto& f : kCorpusCategories) targets.push_back(catkit::testing::corpus_category(f));
  for (int i = 0; i < 4; ++i) targets.push_back(share(catkit::testing::random_category(rng, 2, 4)));
  for (const auto& c : targets) {
    auto m = saturate_two_of_three(c, MorphismClass(c->morphism_count(), false));
    auto loc = localize(m);
    Budget budget;
    tally.require(find_isomorphism(c, loc.category, budget).has_value(),
                  "weq = isos changed " + c->object_name(0) + "'s category");
    for (const auto& d : targets) tally.require(catkit::testing::universal_against(loc, m, d), "universality failed (isos)");
  }
  auto c = arrow();
  auto weq = saturate_two_of_three(c, class_of(*c, {"f"}));
  auto loc = localize(weq);
  std::size_t size = loc.category->morphism_count();
  tally.require(size == 4, "walking weak equivalence gives " + std::to_string(size) + " morphisms");
  for (const auto& d : targets) tally.require(catkit::testing::universal_against(loc, weq, d), "universality failed (f)");
  return tally.done("weq = isos recovers " + std::to_string(targets.size()) + " categories; walking weq gives " +
                    std::to_string(size) + " morphisms; universal against " + std::to_string(targets.size()) +
                    " targets");
}

Outcome models() {
  Tally tally;
  std::size_t mutations = 0;
  for (const auto& file : kCorpusCategories) {
    auto c = catkit::testing::corpus_category(file);
    auto base = trivial_model(c);
    auto report = check_model(base);
    tally.require(report.passed(), file + ": trivial model fails " +
                                       (report.first_failure() ? report.first_failure()->name : std::string("?")));
    for (int which = 0; which < 3; ++which)
      for (MorId f = 0; f < c->morphism_count(); ++f) {
        auto m = base;
        MorphismClass& k = which == 0 ? m.weq : which == 1 ? m.fib : m.cof;
        k[f] = !k[f];
        ++mutations;
        auto r = check_model(m);
        const AxiomResult* bad = r.first_failure();
        tally.require(bad && !bad->witness.empty(), file + ": flipping " + c->morphism(f).name + " went unnoticed");
      }
  }
  return tally.done("trivial model valid on " + std::to_string(kCorpusCategories.size()) + " categories; " +
                    std::to_string(mutations) + " mutations each fail with a witness");
}

Outcome eckmann_hilton() {
  Tally tally;
  Budget budget(1'000'000'000);
  auto report = eckmann_hilton_scan(3, budget);
  std::vector<std::size_t> pairs;
  std::size_t counterexamples = 0;
  for (const auto& row : report.rows) {
    pairs.push_back(row.interchange_pairs);
    counterexamples += row.counterexamples;
  }
  tally.require(report.passed() && counterexamples == 0, std::to_string(counterexamples) + " counterexamples");
  for (std::size_t n = 1; n <= 3; ++n) {
    auto [brute, bad] = catkit::testing::interchange_brute_force(n);
    tally.require(n - 1 < pairs.size() && pairs[n - 1] == brute && bad == 0,
                  "size " + std::to_string(n) + ": scan and brute force disagree");
  }
  return tally.done("0 counterexamples; interchange pairs " + join(pairs) + " match brute force");
}

Outcome orbits() {
  Rng rng(catkit::testing::kDefaultSeed + 113);
  const int trials = 150;
  int agree = 0;
  for (int t = 0; t < trials; ++t) {
    auto a = check_action(catkit::testing::random_action(rng));
    if (orbits_by_pushout(a) == orbits_by_closure(a)) ++agree;
  }
  return {agree == trials, std::to_string(agree) + "/" + std::to_string(trials) + " actions agree"};
}

}  // namespace

int main() {
  criterion(1, "limit oracle", 60, limits);
  criterion(2, "Yoneda", 0, yoneda);
  criterion(3, "Kan universality", 0, kan);
  criterion(4, "ends and Fubini", 0, ends);
  criterion(5, "nerve counts", 0, nerves);
  criterion(6, "horn classification", 0, horns);
  criterion(7, "fundamental groups", 10, fundamental_groups);
  criterion(8, "van Kampen", 0, van_kampen);
  criterion(9, "subdivision and Ex", 0, subdivision);
  criterion(10, "localization", 0, localization);
  criterion(11, "model axioms", 0, models);
  criterion(12, "Eckmann-Hilton", 120, eckmann_hilton);
  criterion(13, "orbits", 0, orbits);
  std::printf("%d of 13 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
