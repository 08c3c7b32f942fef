#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "germcalc/blowup.hpp"
#include "germcalc/errors.hpp"
#include "germcalc/expr.hpp"
#include "germcalc/implicit_systems.hpp"
#include "germcalc/json_io.hpp"
#include "germcalc/operators.hpp"
#include "germcalc/random_jet.hpp"
#include "germcalc/scenarios.hpp"

namespace {

using namespace germcalc;

int default_order() {
  if (const char* env = std::getenv("GERMCALC_ORDER")) {
    try {
      int v = std::stoi(env);
      if (v >= 0) return v;
    } catch (...) {
    }
    std::cerr << "warning: ignoring malformed GERMCALC_ORDER\n";
  }
  return 16;
}

void write_output(const json& doc, const std::string& out_path) {
  std::string text = canonical_dump(doc);
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  require(out.good(), ErrorKind::BadArgument, "cannot write file '" + out_path + "'");
  out << text;
}

// --germ name=path bindings; one name may be bound at several base points.
GermEnv load_env(const std::vector<std::string>& germ_args) {
  GermEnv env;
  for (const auto& spec : germ_args) {
    auto eq = spec.find('=');
    require(eq != std::string::npos && eq > 0, ErrorKind::BadArgument,
            "--germ expects NAME=FILE, got '" + spec + "'");
    env.bind(spec.substr(0, eq), jet_from_json(load_json_file(spec.substr(eq + 1))));
  }
  return env;
}

// Best-effort synthetic bindings for probing expressions without user data:
// random jets repaired to satisfy the domain conditions of the operator that
// consumes each leaf directly.
GermEnv synthesize_env(const ExprPtr& root, int order, std::uint64_t seed) {
  GermEnv env;
  std::uint64_t counter = 0;
  auto visit = [&](auto&& self, const ExprPtr& node, const ExprPtr& parent,
                   std::size_t slot) -> void {
    if (node->kind == ExprKind::InputGerm) {
      if (env.find(node->name, node->base)) return;
      int dim = static_cast<int>(node->base.size());
      Jet jet = generate_random_jet_at(dim, order, seed + (++counter), 6, node->base);
      if (parent) {
        switch (parent->kind) {
          case ExprKind::Deram: {
            Jet::CoeffMap c;
            for (const auto& [alpha, v] : jet.coeffs())
              if (alpha[dim - 1] % parent->deram_m == 0) c.emplace(alpha, v);
            jet = Jet(dim, order, node->base, std::move(c));
            break;
          }
          case ExprKind::MonomialDiv: {
            Jet::CoeffMap c;
            for (const auto& [alpha, v] : jet.coeffs())
              if (alpha[dim - 1] > 0) c.emplace(alpha, v);
            jet = Jet(dim, order, node->base, std::move(c));
            break;
          }
          case ExprKind::Implicit:
            jet = jet.with_coeff(MultiIndex::zero(dim), GaussianRational(0));
            break;
          case ExprKind::Compose:
            if (slot >= 1) {
              // Inner germ of a composition: its value must hit the outer base.
              const ExprPtr& outer = parent->children[0];
              if (slot - 1 < outer->base.size())
                jet = jet.with_coeff(MultiIndex::zero(dim), outer->base[slot - 1]);
            }
            break;
          default:
            break;
        }
      }
      env.bind(node->name, std::move(jet));
      return;
    }
    for (std::size_t i = 0; i < node->children.size(); ++i)
      self(self, node->children[i], node, i);
  };
  visit(visit, root, nullptr, 0);
  return env;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"exact germ calculus on truncated Taylor jets over Q(i)"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format)->check(CLI::IsMember({"json"}));

  // generate
  auto* gen = app.add_subcommand("generate", "emit a seeded random jet (or a named special jet)");
  int g_dim = 1, g_order = default_order();
  std::uint64_t g_seed = 1;
  long g_bound = 10;
  std::string g_special, g_out;
  gen->add_option("--dim", g_dim);
  gen->add_option("--order", g_order);
  gen->add_option("--seed", g_seed);
  gen->add_option("--coeff-bound", g_bound);
  gen->add_option("--special", g_special)->check(CLI::IsMember({"exp", "alt-geom"}));
  gen->add_option("--out", g_out);

  // apply
  auto* ap = app.add_subcommand("apply", "evaluate an operator expression on bound germs");
  std::string a_expr, a_out;
  int a_order = default_order();
  std::vector<std::string> a_germs;
  ap->add_option("--expr", a_expr)->required();
  ap->add_option("--order", a_order);
  ap->add_option("--germ", a_germs);
  ap->add_option("--out", a_out);

  // shift
  auto* sh = app.add_subcommand("shift", "structural shift bound and certified probe lower bound");
  std::string s_expr;
  int s_n = 4;
  std::uint64_t s_seed = 1;
  std::vector<std::string> s_germs;
  sh->add_option("--expr", s_expr)->required();
  sh->add_option("--n", s_n)->required();
  sh->add_option("--seed", s_seed);
  sh->add_option("--germ", s_germs);

  // classify
  auto* cl = app.add_subcommand("classify", "operator class of an expression");
  std::string c_expr;
  cl->add_option("--expr", c_expr)->required();

  // implicit
  auto* im = app.add_subcommand("implicit",
                                "implicit function of a jet, or a system/solution check");
  std::string i_jet, i_system, i_solution, i_out;
  int i_order = default_order();
  im->add_option("--jet", i_jet);
  im->add_option("--system", i_system);
  im->add_option("--solution", i_solution);
  im->add_option("--order", i_order);
  im->add_option("--out", i_out);

  // blowup / blowdown
  auto* bu = app.add_subcommand("blowup", "jet of f composed with a chart map");
  auto* bd = app.add_subcommand("blowdown", "reconstruct the jet downstairs from a chart jet");
  std::string bu_jet, bu_lambda = "0", bu_out;
  int bu_order = default_order();
  bu->add_option("--jet", bu_jet)->required();
  bu->add_option("--lambda", bu_lambda);
  bu->add_option("--order", bu_order);
  bu->add_option("--out", bu_out);
  std::string bd_jet, bd_lambda = "0", bd_out;
  int bd_order = default_order();
  bd->add_option("--jet", bd_jet)->required();
  bd->add_option("--lambda", bd_lambda);
  bd->add_option("--order", bd_order);
  bd->add_option("--out", bd_out);

  // verify
  auto* ve = app.add_subcommand("verify", "run a named verification scenario (or 'all')");
  std::string v_name;
  ScenarioOptions v_opts;
  v_opts.order = default_order();
  ve->add_option("scenario", v_name)->required();
  ve->add_option("--order", v_opts.order);
  ve->add_option("--seed", v_opts.seed);
  ve->add_option("--cases", v_opts.cases);
  ve->add_option("--degree", v_opts.degree);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
      app.exit(e);
      return 0;
    }
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  if (gen->parsed()) {
    Jet jet = [&] {
      if (g_special == "exp") return exp_jet(g_order);
      if (g_special == "alt-geom") return alt_geometric_jet(g_order);
      std::cerr << "note: " << "seeded pseudorandom jet; a heuristic stand-in, no "
                << "transcendence certified\n";
      return generate_random_jet(g_dim, g_order, g_seed, g_bound);
    }();
    write_output(jet_to_json(jet), g_out);
    return 0;
  }
  if (ap->parsed()) {
    ExprPtr e = parse_expr(a_expr);
    write_output(jet_to_json(apply_expr(e, load_env(a_germs), a_order)), a_out);
    return 0;
  }
  if (sh->parsed()) {
    ExprPtr e = parse_expr(s_expr);
    ShiftBound bound = shift_bound(e);
    long upper = bound(s_n);
    std::cout << "bound: " << bound.to_string() << "\n";
    std::cout << "upper: " << upper << "\n";
    GermEnv env = s_germs.empty()
                      ? synthesize_env(e, static_cast<int>(upper) + s_n + 4, s_seed)
                      : load_env(s_germs);
    if (s_germs.empty())
      std::cerr << "note: probing with seeded random germs repaired for operator domains; "
                   "bind --germ files for full control\n";
    try {
      long lower = measured_shift(e, env, s_n, static_cast<int>(upper) + 3);
      std::cout << "certified lower: " << lower << "\n";
    } catch (const CalcError& err) {
      std::cout << "certified lower: unavailable (" << err.kind_name() << ": " << err.what()
                << ")\n";
      return 1;
    }
    return 0;
  }
  if (cl->parsed()) {
    Classification c = classify(parse_expr(c_expr));
    std::cout << "class: " << operator_class_name(c.cls) << "\n";
    std::cout << "gaussian-polynomials-only: " << (c.gaussian_only ? "true" : "false") << "\n";
    return 0;
  }
  if (im->parsed()) {
    if (!i_system.empty() || !i_solution.empty()) {
      require(!i_system.empty() && !i_solution.empty(), ErrorKind::BadArgument,
              "system checks need both --system and --solution");
      ImplicitSystem sys = system_from_json(load_json_file(i_system));
      ImplicitSolution sol = solution_from_json(load_json_file(i_solution));
      CheckResult res = check_solution(sys, sol, i_order);
      std::cout << "residual-zero: " << (res.residual_zero ? "true" : "false") << "\n";
      std::cout << "jacobian-invertible: " << (res.jacobian_invertible ? "true" : "false")
                << "\n";
      return res.ok() ? 0 : 1;
    }
    require(!i_jet.empty(), ErrorKind::BadArgument, "implicit needs --jet or --system");
    Jet f = jet_from_json(load_json_file(i_jet));
    write_output(jet_to_json(implicit_fn(f, std::min(i_order, f.order()))), i_out);
    return 0;
  }
  if (bu->parsed()) {
    Jet f = jet_from_json(load_json_file(bu_jet));
    write_output(jet_to_json(blow_up_jet(f, Chart::parse(bu_lambda), bu_order)), bu_out);
    return 0;
  }
  if (bd->parsed()) {
    Jet g = jet_from_json(load_json_file(bd_jet));
    write_output(jet_to_json(reconstruct_from_chart(g, Chart::parse(bd_lambda), bd_order)),
                 bd_out);
    return 0;
  }
  if (ve->parsed()) {
    std::vector<std::string> names =
        v_name == "all" ? scenario_names() : std::vector<std::string>{v_name};
    bool all_pass = true;
    for (const auto& name : names) {
      ScenarioReport report = run_scenario(name, v_opts);
      print_report(std::cout, report);
      all_pass = all_pass && report.pass();
    }
    return all_pass ? 0 : 1;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const CalcError& e) {
    std::cerr << "error: " << e.kind_name() << ": " << e.what() << "\n";
    return e.kind() == ErrorKind::BadArgument && std::string(e.what()).find("unknown scenario") !=
                                                     std::string::npos
               ? 2
               : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
