// Command-line front end: reads JSON instances, runs checks, prints a JSON
// report. Exit codes: 0 pass, 1 fail, 2 usage or parse error, 3 unknown only.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ucstar/io/json.hpp"
#include "ucstar/suites.hpp"

using namespace ucstar;
using io::Json;
namespace fs = std::filesystem;

namespace {

struct Config {
  std::uint64_t seed = 1;
  std::optional<double> tolerance;
  std::size_t coset_budget = default_coset_budget;
  std::size_t dim_cap = 2;
  std::string output;
  bool timing = false;
  double scale = 1.0;
  std::string mode;
  std::string suite;
  std::vector<std::string> inputs;
  std::string kind;
  std::size_t objects = 2;
  std::size_t order = 2;
  std::vector<std::size_t> dims{2};

  Tolerance tol() const { return tolerance ? Tolerance{*tolerance, *tolerance} : Tolerance{}; }
  fs::path base(std::size_t i = 0) const { return fs::path(inputs.at(i)).parent_path(); }
};

/// A command's report plus the artifact it built, if any.
struct Outcome {
  RunReport report;
  std::optional<Json> artifact;
};

Check verdict_check(const std::string& name, const WeqResult& w) {
  const CheckStatus s = w.verdict == Verdict::Yes ? CheckStatus::Pass
                        : w.verdict == Verdict::No ? CheckStatus::Fail
                                                   : CheckStatus::Unknown;
  return {name, s, 0.0, std::string(to_string(w.verdict)) + (w.witness.empty() ? "" : ": " + w.witness)};
}

void add_validation(RunReport& r, const std::string& name, const ValidationReport& v) {
  double worst = 0.0;
  for (const auto& x : v.violations) worst = std::max(worst, x.residual);
  std::string witness = v.ok() ? "valid" : std::to_string(v.violations.size()) + " violations; first: " +
                                               v.violations[0].check + " at " + v.violations[0].where +
                                               (v.violations[0].detail.empty() ? "" : " (" + v.violations[0].detail + ")");
  r.add(name, v.ok(), worst, witness);
}

void add_residual(RunReport& r, const std::string& name, double residual, double bound = certify_eps) {
  std::ostringstream b;
  b << "bound " << bound;
  r.add(name, residual <= bound, residual, b.str());
}

std::string dims_summary(const MatCategory& c) {
  std::ostringstream s;
  for (std::size_t x = 0; x < c.size(); ++x)
    for (std::size_t y = 0; y < c.size(); ++y) s << (x + y ? ", " : "") << "hom " << c.pair_name(x, y) << ": " << c.hom(x, y).dimension();
  return s.str();
}

Outcome validate(const Config& cfg) {
  Outcome o{{"validate", {}, {}}, {}};
  RunReport& r = o.report;
  for (std::size_t i = 0; i < cfg.inputs.size(); ++i) {
    const Json j = io::load(cfg.inputs[i]);
    const std::string tag = cfg.inputs[i] + ": ";
    if (j.contains("top")) {
      const LiftingSquare s = io::square_from_json(j, cfg.base(i), cfg.tol());
      add_residual(r, tag + "square commutes", square_residual(s));
    } else if (j.contains("object_map")) {
      const StarFunctor f = io::functor_from_json(j, cfg.base(i), cfg.tol());
      add_validation(r, tag + "source", validate_category(*f.source(), cfg.tol()));
      add_validation(r, tag + "target", validate_category(*f.target(), cfg.tol()));
      add_validation(r, tag + "functor", validate_functor(f, cfg.tol()));
    } else if (j.contains("simplices")) {
      const FiniteSimplicialSet k = io::sset_from_json(j);
      try {
        k.validate();
        r.add(tag + "simplicial set", true, 0.0, "valid");
      } catch (const Error& e) {
        r.add(tag + "simplicial set", false, 0.0, e.what());
      }
    } else if (j.contains("generators")) {
      const FPGroupoid p = io::fp_groupoid_from_json(j);
      r.add(tag + "presented groupoid", true, 0.0,
            std::to_string(p.generators.size()) + " generators, " + std::to_string(p.relations.size()) + " relations");
    } else if (j.contains("compose")) {
      const FiniteCategory g = io::finite_category_from_json(j);
      r.add(tag + "finite category", true, 0.0, g.is_groupoid() ? "groupoid" : "not a groupoid");
    } else if (j.contains("arrows")) {
      const Presentation p = io::presentation_from_json(j);
      r.add(tag + "presentation", true, 0.0, std::to_string(p.relations.size()) + " relations");
    } else {
      add_validation(r, tag + "category", validate_category(io::category_from_json(j, cfg.tol()), cfg.tol()));
    }
  }
  return o;
}

StarFunctor input_functor(const Config& cfg, std::size_t i = 0) {
  return io::functor_from_json(io::load(cfg.inputs.at(i)), cfg.base(i), cfg.tol());
}

Outcome factorize(const Config& cfg) {
  Outcome o{{"factorize --mode " + cfg.mode, {}, {}}, {}};
  RunReport& r = o.report;
  const StarFunctor f = input_functor(cfg);
  if (cfg.mode == "path") {
    const Factorization p = factor_path(f, {}, cfg.tol());
    add_residual(r, "P.I = F", p.residual);
    r.add("I cofibration", is_cofibration(p.first));
    r.add(verdict_check("I weak equivalence", is_weak_equivalence(p.first, cfg.seed, cfg.tol())));
    add_validation(r, "path category snapshot", validate_category(*p.midway, cfg.tol()));
    o.artifact = Json{{"midway", io::category_to_json(*p.midway)},
                      {"first", io::functor_to_json(p.first)},
                      {"second", io::functor_to_json(p.second)}};
  } else {
    const Factorization c = factor_cylinder(f);
    add_residual(r, "Q.J = F", c.residual);
    r.add("J cofibration", is_cofibration(c.first));
    r.add("Q trivial fibration", is_trivial_fibration(c.second, cfg.tol()));
    add_validation(r, "cylinder", validate_category(*c.midway, cfg.tol()));
    o.artifact = Json{{"midway", io::category_to_json(*c.midway)},
                      {"first", io::functor_to_json(c.first)},
                      {"second", io::functor_to_json(c.second)}};
  }
  return o;
}

Outcome lift(const Config& cfg) {
  Outcome o{{"lift --mode " + cfg.mode, {}, {}}, {}};
  RunReport& r = o.report;
  const Json j = io::load(cfg.inputs.at(0));
  try {
    if (cfg.mode == "generator") {
      const io::GeneratorSquare g = io::generator_square_from_json(j, cfg.base(), cfg.tol());
      const GeneratorLift l = lift_generator(g.functor, g.x, g.v, g.y, cfg.tol());
      add_residual(r, "F.L = bottom", l.residual);
      o.artifact = io::functor_to_json(l.lift);
      return o;
    }
    const LiftingSquare s = io::square_from_json(j, cfg.base(), cfg.tol());
    const LiftResult l = cfg.mode == "tcof-fib" ? lift_tcof_fib(s, cfg.seed, cfg.tol()) : lift_cof_tfib(s, cfg.tol());
    add_residual(r, "L.left = top", l.upper_residual);
    add_residual(r, "right.L = bottom", l.lower_residual);
    r.add("objects commute", suites::objects_commute(s, l));
    o.artifact = io::functor_to_json(l.lift);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    r.add("lift", false, 0.0, e.what());
  }
  return o;
}

Outcome tensor(const Config& cfg) {
  Outcome o{{"tensor", {}, {}}, {}};
  if (cfg.inputs.size() != 2) throw Error(ErrorKind::InvalidParams, "tensor needs two category files");
  const MatCategory a = io::category_from_json(io::load(cfg.inputs[0]), cfg.tol());
  const MatCategory b = io::category_from_json(io::load(cfg.inputs[1]), cfg.tol());
  const MatCategory t = tensor_max(a, b, cfg.tol());
  bool dims = t.size() == a.size() * b.size();
  for (std::size_t x = 0; x < a.size() && dims; ++x)
    for (std::size_t y = 0; y < a.size(); ++y)
      for (std::size_t u = 0; u < b.size(); ++u)
        for (std::size_t v = 0; v < b.size(); ++v)
          dims = dims && t.hom(pair_index(b, x, u), pair_index(b, y, v)).dimension() ==
                             a.hom(x, y).dimension() * b.hom(u, v).dimension();
  o.report.add("hom dimensions multiply", dims, 0.0, dims_summary(t));
  add_validation(o.report, "tensor category", validate_category(t, cfg.tol()));
  o.artifact = io::category_to_json(t);
  return o;
}

Outcome groupoid_cstar(const Config& cfg) {
  Outcome o{{"groupoid-cstar", {}, {}}, {}};
  const FiniteCategory g = io::finite_category_from_json(io::load(cfg.inputs.at(0)));
  const CStarMax c = cstar_max(g);
  bool dims = true;
  for (std::size_t x = 0; x < g.objects(); ++x)
    for (std::size_t y = 0; y < g.objects(); ++y) dims = dims && c.category->hom(x, y).dimension() == g.hom(x, y).size();
  o.report.add("hom dimension = number of arrows", dims, 0.0, dims_summary(*c.category));
  add_validation(o.report, "groupoid C*-category", validate_category(*c.category, cfg.tol()));
  o.artifact = io::category_to_json(*c.category);
  return o;
}

Check finiteness(const FPNormalization& n, std::size_t budget) {
  if (n.finite())
    return {"finite within budget", CheckStatus::Pass, 0.0,
            std::to_string(n.groupoid->objects()) + " objects, " + std::to_string(n.groupoid->arrows()) + " arrows"};
  return {"finite within budget", CheckStatus::Unknown, 0.0,
          "NotFiniteWithinBound: " + n.detail + " (budget " + std::to_string(budget) + ")"};
}

Outcome fundamental(const Config& cfg) {
  Outcome o{{"fundamental-groupoid", {}, {}}, {}};
  const FiniteSimplicialSet k = io::sset_from_json(io::load(cfg.inputs.at(0)));
  const FPGroupoid p = fundamental_groupoid(k);
  const FPNormalization n = normalize_fp(p, cfg.coset_budget);
  o.report.add(finiteness(n, cfg.coset_budget));
  Json art{{"presentation", io::fp_groupoid_to_json(p)}};
  if (n.finite()) art["groupoid"] = io::groupoid_to_json(*n.groupoid);
  o.artifact = art;
  return o;
}

Outcome nerve_cmd(const Config& cfg) {
  Outcome o{{"nerve", {}, {}}, {}};
  const FiniteCategory g = io::finite_category_from_json(io::load(cfg.inputs.at(0)));
  const FiniteSimplicialSet k = nerve(g, cfg.dim_cap);
  std::string counts;
  for (std::size_t m = 0; m <= k.dim_cap(); ++m) counts += (m ? ", " : "") + std::to_string(k.count(m)) + " " + std::to_string(m) + "-simplices";
  try {
    k.validate();
    o.report.add("simplicial identities", true, 0.0, counts);
  } catch (const Error& e) {
    o.report.add("simplicial identities", false, 0.0, e.what());
  }
  o.artifact = io::sset_to_json(k);
  return o;
}

Outcome pi_cmd(const Config& cfg) {
  Outcome o{{"pi", {}, {}}, {}};
  const FiniteSimplicialSet k = io::sset_from_json(io::load(cfg.inputs.at(0)));
  const FPNormalization n = normalize_fp(fundamental_groupoid(k), cfg.coset_budget);
  o.report.add(finiteness(n, cfg.coset_budget));
  if (n.finite()) {
    const CStarMax c = cstar_max(*n.groupoid);
    add_validation(o.report, "groupoid C*-category", validate_category(*c.category, cfg.tol()));
    o.artifact = io::category_to_json(*c.category);
  }
  return o;
}

Outcome verify(const Config& cfg) {
  suites::SuiteOptions opt{cfg.seed, cfg.scale, cfg.coset_budget};
  return {suites::run_suite(cfg.suite, opt), std::nullopt};
}

Outcome generate(const Config& cfg) {
  Outcome o{{"generate " + cfg.kind, {}, {}}, {}};
  Rng rng(cfg.seed);
  auto check_dims = [&] {
    if (cfg.dims.empty() || cfg.dims.size() > 5) throw Error(ErrorKind::InvalidParams, "between 1 and 5 objects");
    for (auto d : cfg.dims)
      if (d == 0 || d > 6) throw Error(ErrorKind::InvalidParams, "dimensions must lie in 1..6");
  };
  if (cfg.kind == "random_groupoid") {
    const FiniteGroupoid g = random_groupoid(rng, cfg.objects, cfg.order);
    o.report.add("groupoid", g.is_groupoid(), 0.0, std::to_string(g.objects()) + " objects, " + std::to_string(g.arrows()) + " arrows");
    o.artifact = io::groupoid_to_json(g);
  } else if (cfg.kind == "random_matcat") {
    check_dims();
    const BlockModel m = random_block_model(rng, cfg.dims);
    add_validation(o.report, "category", validate_category(*m.category, cfg.tol()));
    o.artifact = io::category_to_json(*m.category);
  } else if (cfg.kind == "random_weq") {
    check_dims();
    const BlockModel m = random_block_model(rng, cfg.dims);
    const StarFunctor f = random_weak_equivalence(rng, m, 6).functor;
    add_validation(o.report, "functor", validate_functor(f, cfg.tol()));
    o.report.add(verdict_check("weak equivalence", is_weak_equivalence(f, cfg.seed, cfg.tol())));
    o.artifact = io::functor_to_json(f);
  } else {
    throw Error(ErrorKind::InvalidParams, "unknown generator " + cfg.kind);
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unitary model structure on small C*-categories"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--seed", cfg.seed, "random seed")->check(CLI::PositiveNumber);
  app.add_option("--tolerance", cfg.tolerance, "absolute and relative tolerance")->check(CLI::PositiveNumber);
  app.add_option("--coset-budget", cfg.coset_budget, "coset enumeration budget")->check(CLI::PositiveNumber);
  app.add_option("--dim-cap", cfg.dim_cap, "top simplicial dimension");
  app.add_option("--output", cfg.output, "write the constructed object (or the report) here");
  app.add_flag("--timing", cfg.timing, "add wall-clock seconds to the report");

  std::map<std::string, std::function<Outcome(const Config&)>> commands;
  auto command = [&](const std::string& name, const std::string& help, std::function<Outcome(const Config&)> run,
                     std::size_t inputs) {
    CLI::App* sub = app.add_subcommand(name, help);
    if (inputs > 0) sub->add_option("inputs", cfg.inputs, "input files")->required()->expected(1, static_cast<int>(inputs))->check(CLI::ExistingFile);
    commands[name] = std::move(run);
    return sub;
  };
  command("validate", "validate category, functor, groupoid, simplicial set or presentation files", validate, 16);
  command("factorize", "path or cylinder factorization of a functor", factorize, 1)
      ->add_option("--mode", cfg.mode)
      ->required()
      ->check(CLI::IsMember({"path", "cylinder"}));
  command("lift", "solve a lifting square", lift, 1)
      ->add_option("--mode", cfg.mode)
      ->required()
      ->check(CLI::IsMember({"tcof-fib", "cof-tfib", "generator"}));
  command("tensor", "maximal tensor product of two categories", tensor, 2);
  command("groupoid-cstar", "groupoid C*-category of a finite groupoid", groupoid_cstar, 1);
  command("fundamental-groupoid", "presented and normalized fundamental groupoid", fundamental, 1);
  command("nerve", "nerve of a finite category up to --dim-cap", nerve_cmd, 1);
  command("pi", "groupoid C*-category of the fundamental groupoid", pi_cmd, 1);
  auto* va = command("verify-axioms", "run a verification suite", verify, 0);
  va->add_option("--suite", cfg.suite)->required()->check(CLI::IsMember(suites::suite_names()));
  va->add_option("--scale", cfg.scale, "fraction of the full instance counts")->check(CLI::Range(0.001, 1.0));
  auto* gen = command("generate", "random instance generators", generate, 0);
  gen->add_option("kind", cfg.kind)->required()->check(CLI::IsMember({"random_groupoid", "random_matcat", "random_weq"}));
  gen->add_option("--objects", cfg.objects, "groupoid objects (1..5)");
  gen->add_option("--order", cfg.order, "largest vertex group order (1..8)");
  gen->add_option("--dims", cfg.dims, "object dimensions (each 1..6, at most 5)")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    out = commands.at(name)(cfg);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::InvalidParams) {
      std::cerr << "ucstar " << name << ": " << e.what() << '\n';
      return 2;
    }
    out.report = RunReport{name, {}, std::nullopt};
    out.report.add("error", false, 0.0, e.what());
  }
  if (cfg.timing) out.report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const Json report = io::report_to_json(out.report);
  std::cout << report.dump(2) << '\n';
  if (!cfg.output.empty()) {
    try {
      io::save(cfg.output, out.artifact ? *out.artifact : report);
    } catch (const Error& e) {
      std::cerr << "ucstar " << name << ": " << e.what() << '\n';
      return 2;
    }
  }
  return out.report.exit_code();
}
