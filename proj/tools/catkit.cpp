// catkit command-line front end.
//
// Exit status: 0 on success, 1 on a domain error (the witness goes to
// stderr), 2 when the command line or an input file does not parse.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "catkit/catkit.hpp"

namespace {

using catkit::io::json;
namespace io = catkit::io;

struct Globals {
  std::uint64_t budget = catkit::Budget::kDefaultFunctorSearch;
  int max_dim = -1;
  std::uint64_t seed = 1;
};

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json cone_json(const catkit::ConeResult& r, const catkit::FinCategory& shape) {
  json j;
  j["v"] = io::kSchemaVersion;
  j["apex"] = r.apex.elements();
  j["legs"] = json::object();
  for (std::size_t x = 0; x < r.legs.size(); ++x) {
    const auto& leg = r.legs[x];
    json m = json::object();
    for (std::size_t i = 0; i < leg.source.size(); ++i) m[leg.source[i]] = leg.target[leg.map[i]];
    j["legs"][shape.object_name(x)] = m;
  }
  return j;
}

std::string counts(const catkit::SimplicialSet& x) {
  std::string s;
  for (int d = 0; d <= x.max_dim(); ++d) s += (d ? "," : "") + std::to_string(x.count(d));
  return "(" + s + ")";
}

catkit::SSetRef read_sset(const std::string& path, const Globals& g) {
  auto x = io::read_simplicial_set(io::read_file(path));
  if (g.max_dim >= 0 && g.max_dim != x.max_dim()) x = catkit::retruncate(x, g.max_dim);
  return catkit::share(std::move(x));
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"catkit: finite category theory and simplicial homotopy"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--budget", g.budget, "search step limit")->capture_default_str();
  app.add_option("--max-dim", g.max_dim, "truncation dimension for simplicial output");
  app.add_option("--seed", g.seed, "seed for randomized steps")->capture_default_str();
  app.fallthrough();

  std::string file;
  auto needs_file = [&](CLI::App* sub, const std::string& what) {
    sub->add_option("file", file, what)->required()->check(CLI::ExistingFile);
    return sub;
  };

  auto* check = needs_file(app.add_subcommand("check", "validate a category file"), "category JSON");
  auto* limit = needs_file(app.add_subcommand("limit", "limit of a diagram of finite sets"), "diagram JSON");
  auto* colimit = needs_file(app.add_subcommand("colimit", "colimit of a diagram of finite sets"), "diagram JSON");
  auto* kan_left = needs_file(app.add_subcommand("kan-left", "pointwise left Kan extension"), "Kan JSON");
  auto* kan_right = needs_file(app.add_subcommand("kan-right", "pointwise right Kan extension"), "Kan JSON");
  auto* end = needs_file(app.add_subcommand("end", "end of a bifunctor"), "bifunctor JSON");
  auto* coend = needs_file(app.add_subcommand("coend", "coend of a bifunctor"), "bifunctor JSON");
  auto* nerve = needs_file(app.add_subcommand("nerve", "nerve of a category"), "category JSON");
  auto* horns = needs_file(app.add_subcommand("horns", "horn filling statistics"), "simplicial set JSON");
  auto* classify = needs_file(app.add_subcommand("classify", "Kan / quasi-category verdict"), "simplicial set JSON");
  auto* pi0 = needs_file(app.add_subcommand("pi0", "connected components"), "simplicial set JSON");
  std::string base;
  bool reversed = false;
  auto* pi1 = needs_file(app.add_subcommand("pi1", "edge-path presentation of the fundamental group"),
                         "simplicial set JSON");
  pi1->add_option("--base", base, "base vertex")->required();
  pi1->add_flag("--reversed", reversed, "build the spanning tree in reverse edge order");
  auto* svk = needs_file(app.add_subcommand("svk", "amalgamated pushout of presentations"), "svk JSON");
  auto* sd = needs_file(app.add_subcommand("sd", "barycentric subdivision"), "simplicial set JSON");
  bool allow_large = false;
  auto* ex = needs_file(app.add_subcommand("ex", "Ex of a simplicial set"), "simplicial set JSON");
  ex->add_flag("--allow-large", allow_large, "lift the size limit above dimension 2");
  int k = 1;
  auto* ex_iter = needs_file(app.add_subcommand("ex-iter", "iterate Ex and classify each stage"),
                             "simplicial set JSON");
  ex_iter->add_option("-k", k, "number of iterations")->capture_default_str();
  ex_iter->add_flag("--allow-large", allow_large, "lift the size limit above dimension 2");
  std::string weq;
  std::size_t cap = 1000;
  auto* localize = needs_file(app.add_subcommand("localize", "localization at weak equivalences"), "category JSON");
  localize->add_option("--weq", weq, "comma-separated weak equivalences");
  localize->add_option("--cap", cap, "bound on morphisms per hom-set")->capture_default_str();
  auto* model_check = needs_file(app.add_subcommand("model-check", "check model category axioms"), "model JSON");
  auto* orbit = needs_file(app.add_subcommand("orbit", "orbits of a monoid action"), "action JSON");
  std::size_t max_size = 3;
  auto* eckmann = app.add_subcommand("eckmann-hilton", "exhaustive interchange scan");
  eckmann->add_option("--max-size", max_size, "largest carrier size")->capture_default_str();
  auto* check_monoid = needs_file(app.add_subcommand("check-monoid", "validate a monoid table"), "monoid JSON");
  auto* check_action = needs_file(app.add_subcommand("check-action", "validate an action table"), "action JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  catkit::Budget budget(g.budget);
  const int dim = g.max_dim >= 0 ? g.max_dim : 3;

  try {
    if (check->parsed()) {
      auto c = io::read_category(io::read_file(file));
      std::size_t ids = c.object_count();
      std::cout << "objects: " << c.object_count() << ", morphisms: " << c.morphism_count()
                << ", non-identity: " << c.morphism_count() - ids << "\n";
    } else if (limit->parsed() || colimit->parsed()) {
      auto d = io::read_diagram(io::read_file(file));
      emit(cone_json(limit->parsed() ? catkit::limit(d) : catkit::colimit(d), *d.shape));
    } else if (kan_left->parsed() || kan_right->parsed()) {
      json j = io::read_file(file);
      io::detail::check_fields(j, {"functor", "diagram"}, {"functor", "diagram"}, "kan");
      auto i = io::read_functor(j["functor"]);
      auto f = io::read_diagram(j["diagram"], i.source);
      auto ext = kan_left->parsed() ? catkit::lan(f, i) : catkit::ran(f, i);
      emit(io::diagram_json(ext.extension, false));
    } else if (end->parsed() || coend->parsed()) {
      auto h = io::read_bifunctor(io::read_file(file));
      json j;
      j["v"] = io::kSchemaVersion;
      j["apex"] = (end->parsed() ? catkit::end(h) : catkit::coend(h)).elements();
      emit(j);
    } else if (nerve->parsed()) {
      auto c = io::read_category(io::read_file(file));
      emit(io::simplicial_set_json(catkit::nerve(c, dim)));
    } else if (horns->parsed() || classify->parsed()) {
      auto x = read_sset(file, g);
      budget = catkit::Budget(g.budget == catkit::Budget::kDefaultFunctorSearch ? catkit::Budget::kDefaultHornSearch
                                                                                 : g.budget);
      auto report = catkit::classify(*x, x->max_dim(), budget);
      if (horns->parsed()) {
        for (const auto& h : report.horns)
          std::cout << "horn " << h.n << "," << h.k << (h.inner() ? " inner" : " outer")
                    << ": assignments " << h.assignments << ", unfilled " << h.unfilled << "\n";
      } else {
        std::cout << "verdict: " << catkit::to_string(report.verdict) << "\n";
        if (const auto* h = report.first_failure(report.verdict == catkit::Verdict::neither))
          std::cout << "witness: horn " << h->n << "," << h->k << " [" << h->witness << "]\n";
      }
    } else if (pi0->parsed()) {
      auto x = read_sset(file, g);
      json j;
      j["v"] = io::kSchemaVersion;
      j["components"] = io::partition_json(catkit::pi0(*x), x->names(0));
      emit(j);
    } else if (pi1->parsed()) {
      auto x = read_sset(file, g);
      auto p = catkit::pi1(*x, base, {reversed});
      std::cout << "generators: " << p.generators.size() << ", relators: "
                << p.relators.size()
                << ", abelianization: " << catkit::abelian_invariants(p).to_string() << "\n";
    } else if (svk->parsed()) {
      auto in = io::read_svk(io::read_file(file));
      auto p = catkit::svk_pushout(in.phi1, in.phi2);
      json j = io::presentation_json(p);
      j["abelianization"] = catkit::abelian_invariants(p).to_string();
      emit(j);
    } else if (sd->parsed()) {
      emit(io::simplicial_set_json(*catkit::sd(read_sset(file, g))));
    } else if (ex->parsed()) {
      catkit::ExComplex e(read_sset(file, g), budget, {allow_large});
      emit(io::simplicial_set_json(*e.result()));
    } else if (ex_iter->parsed()) {
      auto stages = catkit::ex_iter(read_sset(file, g), k, budget, {allow_large});
      for (std::size_t s = 0; s < stages.size(); ++s) {
        const auto& st = stages[s];
        std::cout << "stage " << s << ": cells " << counts(*st.complex) << ", verdict "
                  << catkit::to_string(st.report.verdict) << ", unfilled " << st.report.unfilled_total()
                  << " (inner " << st.report.unfilled_inner() << ")\n";
      }
    } else if (localize->parsed()) {
      auto c = catkit::share(io::read_category(io::read_file(file)));
      auto marked = catkit::saturate_two_of_three(c, catkit::class_of(*c, split_commas(weq)));
      auto loc = catkit::localize(marked, cap);
      json j;
      j["v"] = io::kSchemaVersion;
      j["weq"] = catkit::class_names(*c, marked.weq);
      j["category"] = io::category_json(*loc.category);
      j["p"] = json::object();
      for (catkit::MorId f = 0; f < c->morphism_count(); ++f)
        j["p"][c->morphism(f).name] = loc.category->morphism(loc.p.map(f)).name;
      emit(j);
    } else if (model_check->parsed()) {
      auto report = catkit::check_model(io::read_model(io::read_file(file)));
      for (const auto& a : report.axioms) {
        std::cout << (!a.checked ? "UNCHECKED " : a.passed ? "PASS " : "FAIL ") << a.name;
        if (a.checked && !a.passed) std::cout << ": " << a.witness;
        std::cout << "\n";
      }
      std::cout << "model: " << (report.passed() ? "valid" : "invalid") << "\n";
    } else if (orbit->parsed()) {
      auto a = catkit::check_action(io::read_action(io::read_file(file)));
      json j;
      j["v"] = io::kSchemaVersion;
      j["orbits"] = io::partition_json(catkit::orbit(a), a.space.elements());
      emit(j);
    } else if (eckmann->parsed()) {
      auto report = catkit::eckmann_hilton_scan(max_size, budget);
      for (const auto& r : report.rows)
        std::cout << "size " << r.size << ": interchange pairs " << r.interchange_pairs << ", distinct units "
                  << r.distinct_units << ", counterexamples " << r.counterexamples << "\n";
      std::cout << (report.passed() ? "no counterexamples" : "counterexample found") << "\n";
    } else if (check_monoid->parsed()) {
      auto m = catkit::check_monoid(io::read_monoid(io::read_file(file)));
      bool group = true;
      try {
        (void)catkit::check_group(m);
      } catch (const catkit::Error&) {
        group = false;
      }
      std::cout << "monoid: " << m.size() << " elements, unit " << m.carrier[m.unit]
                << ", group: " << (group ? "yes" : "no") << "\n";
    } else if (check_action->parsed()) {
      auto a = catkit::check_action(io::read_action(io::read_file(file)));
      std::cout << "action: monoid of " << a.actor.size() << " elements on " << a.space.size()
                << " points, orbits: " << catkit::orbit(a).size() << "\n";
    }
  } catch (const catkit::Error& e) {
    std::cerr << "error: " << catkit::to_string(e.kind()) << ": " << e.witness() << "\n";
    return e.kind() == catkit::ErrorKind::Schema ? 2 : 1;
  }
  return 0;
}
