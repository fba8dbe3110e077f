#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "fracop/error.hpp"
#include "fracop/fractal_operator.hpp"
#include "fracop/rb_engine.hpp"
#include "fracop/schauder.hpp"
#include "problem_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fracop;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitInvalid = 2;

struct Options {
  std::string input;
  std::string output{"."};
  std::optional<int> grid_level;
  double tol{kDefaultFixedPointTol};
  std::uint64_t seed{1};
  std::string space;
  std::size_t terms{16};
  std::size_t points{10000};
  std::size_t trials{50};
  int level{1};
};

// Outcome of one command: the report body and whether everything checked out.
struct Outcome {
  json report;
  bool satisfied{true};
};

json number(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << body;
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
}

// CSV with the grid abscissa and one column per function.
std::string columns_csv(const Grid& grid, const std::vector<std::string>& names,
                        const std::vector<const GridFunction*>& fns) {
  std::string out = "x";
  for (const auto& n : names) out += "," + n;
  out += "\n";
  for (std::size_t j = 0; j < grid.size(); ++j) {
    out += fmt(grid.node(j));
    for (const GridFunction* f : fns) out += "," + fmt((*f)[j]);
    out += "\n";
  }
  return out;
}

json contraction_json(const ContractionReport& c) {
  json out{{"space", c.space.to_string()},
           {"factor", number(c.factor)},
           {"satisfied", c.satisfied},
           {"condition", c.condition}};
  if (c.has_hypothesis) {
    out["hypothesis"] = c.hypothesis;
    out["hypothesis_satisfied"] = c.hypothesis_satisfied;
  }
  return out;
}

json validation_json(const ValidationReport& v) {
  json checks = json::array();
  for (const auto& c : v.checks) {
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"value", number(c.value)},
                      {"threshold", number(c.threshold)},
                      {"detail", c.detail}});
  }
  return {{"ok", v.ok()}, {"knot_snap_error", number(v.knot_snap_error)}, {"checks", checks}};
}

json branch_json(const PerturbationBranch& b) {
  return {{"norm", b.norm},
          {"K", number(b.K)},
          {"lhs", number(b.lhs)},
          {"falpha_minus_base", number(b.falpha_minus_base)},
          {"f_minus_base", number(b.f_minus_base)},
          {"f_norm", number(b.f_norm)},
          {"deviation_norm", number(b.deviation_norm)},
          {"bound_prop", number(b.bound_prop)},
          {"bound_thm_direct", number(b.bound_thm_direct)},
          {"bound_thm", number(b.bound_thm)},
          {"prop_satisfied", b.prop_satisfied},
          {"thm_direct_satisfied", b.thm_direct_satisfied},
          {"thm_satisfied", b.thm_satisfied}};
}

struct Context {
  Options opt;
  cli::Problem problem;
  SpaceSpec space;
  int grid_level{kDefaultGridLevel};
  fs::path dir;
  std::string command;

  void csv(const std::string& body, const std::string& name = {}) const {
    write_text(dir / ((name.empty() ? command : name) + ".csv"), body);
  }
};

Outcome cmd_verify(const Context& ctx) {
  const IfsSpec spec = cli::build_spec(ctx.problem, ctx.grid_level, ctx.space);
  const ContractionReport c = contraction_factor(spec);
  const ValidationReport v = validate_spec(spec);
  std::printf("%-10s %s\n%-10s %.17g\n%-10s %s\n%-10s %s\n", "space", c.space.to_string().c_str(),
              "factor", c.factor, "satisfied", c.satisfied ? "true" : "false", "condition",
              c.condition.c_str());
  for (const auto& check : v.checks) {
    std::printf("  %-20s %-4s %.6g / %.6g\n", check.name.c_str(), check.passed ? "ok" : "FAIL",
                check.value, check.threshold);
  }
  json r = contraction_json(c);
  r["validation"] = validation_json(v);
  return {r, c.satisfied && v.ok()};
}

Outcome cmd_eval(const Context& ctx) {
  const IfsSpec spec = cli::build_spec(ctx.problem, ctx.grid_level, ctx.space);
  const ValidationReport v = validate_spec(spec);
  json r{{"validation", validation_json(v)}};
  if (!v.ok()) return {r, false};
  FixedPointOptions fp;
  fp.tol = ctx.opt.tol;
  const FixedPointResult res = fixed_point(spec, fp);
  ctx.csv(columns_csv(spec.grid(), {"value"}, {&res.falpha}));
  r["contraction"] = contraction_json(res.contraction);
  r["iterations"] = res.iterations;
  r["final_residual"] = number(res.final_residual);
  r["contraction_estimate"] = number(res.contraction_estimate);
  r["self_ref_residual"] = number(self_ref_residual(spec, res.falpha));
  r["nodes"] = spec.grid().size();
  return {r, true};
}

Outcome cmd_attractor(const Context& ctx) {
  const IfsSpec spec = cli::build_spec(ctx.problem, ctx.grid_level, ctx.space);
  const auto pts = chaos_game(spec, ctx.opt.points, ctx.opt.seed);
  std::string body = "x,y\n";
  for (const Point& p : pts) body += fmt(p.x) + "," + fmt(p.y) + "\n";
  ctx.csv(body);
  return {{{"points", pts.size()}, {"burn_in", kChaosBurnIn}, {"rng_seed", ctx.opt.seed}}, true};
}

Outcome cmd_export(const Context& ctx) {
  const IfsSpec spec = cli::build_spec(ctx.problem, ctx.grid_level, ctx.space);
  const int depth = std::min(spec.seed().derivative_depth(), spec.base().derivative_depth());
  std::vector<std::string> names{"f", "b"};
  std::vector<GridFunction> fns{spec.seed(), spec.base()};
  for (int r = 1; r <= depth; ++r) {
    names.push_back("f_d" + std::to_string(r));
    fns.push_back(spec.seed().derivative(r));
    names.push_back("b_d" + std::to_string(r));
    fns.push_back(spec.base().derivative(r));
  }
  for (std::size_t i = 0; i < spec.scaling().size(); ++i) {
    names.push_back("alpha_" + std::to_string(i + 1));
    fns.push_back(spec.scaling().is_constant()
                      ? GridFunction::constant(spec.grid(), spec.scaling().constant_value(i))
                      : spec.scaling().function(i).value_only());
  }
  std::vector<const GridFunction*> ptrs;
  for (const auto& f : fns) ptrs.push_back(&f);
  ctx.csv(columns_csv(spec.grid(), names, ptrs));
  return {{{"columns", names}, {"nodes", spec.grid().size()}}, true};
}

Outcome cmd_perturb(const Context& ctx) {
  const IfsSpec spec = cli::build_spec(ctx.problem, ctx.grid_level, ctx.space);
  const FractalOperator op(cli::build_template(ctx.problem, ctx.grid_level, ctx.space),
                           FixedPointOptions{ctx.opt.tol, kDefaultMaxIter, {}, {}});
  const PerturbationReport rep = perturbation_bounds(op, spec.seed());
  const GridFunction fa = op.apply(spec.seed());
  ctx.csv(columns_csv(spec.grid(), {"f", "base", "falpha"}, {&spec.seed(), &spec.base(), &fa}));
  json r{{"K", number(op.K())},
         {"K_sup", number(op.K_sup())},
         {"L_norm", number(op.base_norm())},
         {"I_minus_L_norm", number(op.deviation_norm())},
         {"space", branch_json(rep.space)},
         {"sup", branch_json(rep.sup)},
         {"satisfied", rep.satisfied()}};
  return {r, rep.satisfied()};
}

Outcome cmd_opnorm(const Context& ctx) {
  const FractalOperator op(cli::build_template(ctx.problem, ctx.grid_level, ctx.space),
                           FixedPointOptions{ctx.opt.tol, kDefaultMaxIter, {}, {}});
  const double upper = operator_norm_upper_bound(op);
  const double lower = operator_norm_lower_bound(op, ctx.opt.trials, ctx.opt.seed);
  const double dev_upper = deviation_upper_bound(op);
  const double dev_lower = deviation_lower_bound(op, ctx.opt.trials, ctx.opt.seed);
  const double slack = 1e-6;
  const bool ok = lower <= upper + slack && dev_lower <= dev_upper + slack;
  json r{{"K", number(op.K())},
         {"L_norm", number(op.base_norm())},
         {"I_minus_L_norm", number(op.deviation_norm())},
         {"operator_norm_upper", number(upper)},
         {"operator_norm_lower", number(lower)},
         {"deviation_upper", number(dev_upper)},
         {"deviation_lower", number(dev_lower)},
         {"bounded_below_constant", number(bounded_below_constant(op))},
         {"neumann_rate", number(neumann_rate(op))},
         {"trials", ctx.opt.trials},
         {"rng_seed", ctx.opt.seed},
         {"satisfied", ok}};
  return {r, ok};
}

Outcome cmd_invert(const Context& ctx) {
  const IfsSpec spec = cli::build_spec(ctx.problem, ctx.grid_level, ctx.space);
  const FractalOperator op(cli::build_template(ctx.problem, ctx.grid_level, ctx.space),
                           FixedPointOptions{ctx.opt.tol, kDefaultMaxIter, {}, {}});
  const GridFunction& g = spec.seed();
  const NeumannResult res = neumann_inverse(op, g, ctx.opt.tol);
  const GridFunction back = op.apply(res.inverse);
  const GridFunction residual = back - g.value_only();
  ctx.csv(columns_csv(spec.grid(), {"g", "inverse", "residual"}, {&g, &res.inverse, &residual}));
  json r{{"K", number(op.K())},
         {"I_minus_L_norm", number(op.deviation_norm())},
         {"neumann_rate", number(neumann_rate(op))},
         {"terms", res.terms},
         {"last_term_norm", number(res.last_term_norm)},
         {"residual_sup", number(sup_norm(residual))},
         {"satisfied", true}};
  return {r, true};
}

Outcome cmd_basis(const Context& ctx) {
  const FractalTemplate tmpl = cli::build_template(ctx.problem, ctx.grid_level, ctx.space);
  if (tmpl.grid.lo != 0.0 || tmpl.grid.hi != 1.0) {
    throw Error(ErrorCode::kSpecInvalid, "basis needs knots spanning [0, 1]");
  }
  if (ctx.opt.level < 0) throw Error(ErrorCode::kInvalidArgument, "--level must be >= 0");
  const std::size_t count = ctx.opt.terms;
  const auto lv = static_cast<std::size_t>(ctx.opt.level);
  if (count < 1 || count + lv > (std::size_t{1} << tmpl.grid.level)) {
    throw Error(ErrorCode::kInvalidArgument, "--terms out of range for this grid and level");
  }
  BasisLadder ladder = BasisLadder::haar_system(count + lv, tmpl.grid.level);
  for (int k = 1; k <= ctx.opt.level; ++k) ladder = ladder.lift(count + lv - static_cast<std::size_t>(k));
  const FractalBasis basis = fractalize_basis(ladder, tmpl);
  const IfsSpec spec = cli::build_spec(ctx.problem, ctx.grid_level, ctx.space);
  const Reconstruction rec = reconstruct(basis, spec.seed(), count, ctx.opt.tol);

  json files = json::array();
  for (std::size_t n = 0; n < basis.size(); ++n) {
    const std::string name = "basis_element_" + std::to_string(n);
    ctx.csv(columns_csv(tmpl.grid, {"ladder", "fractal"}, {&ladder.element(n), &basis.element(n)}),
            name);
    files.push_back(name + ".csv");
  }
  ctx.csv(columns_csv(tmpl.grid, {"f", "approximation"}, {&spec.seed(), &rec.approximation}));
  json errors = json::array();
  for (double e : rec.errors) errors.push_back(number(e));
  json coeffs = json::array();
  for (double c : rec.coefficients) coeffs.push_back(number(c));
  json r{{"level", ctx.opt.level},
         {"count", basis.size()},
         {"template",
          {{"space", tmpl.space.to_string()}, {"base", tmpl.base.name()}, {"K", number(basis.op().K())}}},
         {"errors_by_n", errors},
         {"coefficients", coeffs},
         {"neumann_terms", rec.neumann_terms},
         {"element_files", files}};
  return {r, true};
}

using Handler = Outcome (*)(const Context&);

struct Command {
  const char* name;
  const char* help;
  Handler run;
};

const Command kCommands[] = {
    {"eval", "fixed point f^alpha on the grid", cmd_eval},
    {"verify", "contraction factor and spec validation", cmd_verify},
    {"perturb-bound", "perturbation estimates for ||f^alpha - f||", cmd_perturb},
    {"opnorm", "bounds on ||F^alpha|| and ||I - F^alpha||", cmd_opnorm},
    {"invert", "Neumann-series inverse of F^alpha applied to the seed", cmd_invert},
    {"basis", "fractal Schauder basis and reconstruction of the seed", cmd_basis},
    {"attractor", "chaos-game points on the attractor", cmd_attractor},
    {"export", "seed, base and scaling samples", cmd_export},
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIoError:
    case ErrorCode::kParseError:
      return kExitIo;
    default:
      return kExitInvalid;
  }
}

json error_json(const std::string& command, std::string_view code, const std::string& message) {
  return {{"schema", 1},
          {"command", command},
          {"status", "error"},
          {"error", {{"code", code}, {"message", message}}}};
}

// Writes the report next to the outputs when possible, otherwise to stdout.
void emit_error(const fs::path& dir, const std::string& command, std::string_view code,
                const std::string& message) {
  std::cerr << "fracop " << command << ": " << message << "\n";
  const json body = error_json(command, code, message);
  try {
    if (!dir.empty() && fs::is_directory(dir)) {
      write_text(dir / (command + ".report.json"), body.dump(2) + "\n");
      return;
    }
  } catch (const std::exception&) {
  }
  std::cout << body.dump() << "\n";
}

int run(const Command& cmd, const Options& opt) {
  Context ctx;
  ctx.opt = opt;
  ctx.command = cmd.name;
  ctx.dir = opt.output;
  try {
    std::error_code ec;
    fs::create_directories(ctx.dir, ec);
    if (!fs::is_directory(ctx.dir)) throw Error(ErrorCode::kIoError, "cannot create " + opt.output);
    ctx.problem = cli::load_problem(opt.input);
    ctx.space = opt.space.empty() ? ctx.problem.space : SpaceSpec::parse(opt.space);
    ctx.grid_level = opt.grid_level.value_or(ctx.problem.grid_level.value_or(kDefaultGridLevel));
    if (ctx.grid_level < 2 || ctx.grid_level > 20) {
      throw Error(ErrorCode::kInvalidArgument, "grid level must lie in [2, 20]");
    }
    if (!(opt.tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "--tol must be positive");

    const Outcome out = cmd.run(ctx);
    json report{{"schema", 1},
                {"command", cmd.name},
                {"status", out.satisfied ? "ok" : "unsatisfied"},
                {"problem", cli::describe(ctx.problem, ctx.space, ctx.grid_level)}};
    report.update(out.report);
    write_text(ctx.dir / (std::string(cmd.name) + ".report.json"), report.dump(2) + "\n");
    if (!out.satisfied) std::cerr << "fracop " << cmd.name << ": checks not satisfied\n";
    return out.satisfied ? kExitOk : kExitInvalid;
  } catch (const Error& e) {
    emit_error(ctx.dir, ctx.command, to_string(e.code()), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    emit_error(ctx.dir, ctx.command, "InternalError", e.what());
    return kExitIo;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractal perturbation toolkit"};
  app.require_subcommand(1);
  Options opt;
  const Command* chosen = nullptr;
  for (const Command& cmd : kCommands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->add_option("--input", opt.input, "problem JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--output", opt.output, "output directory")->capture_default_str();
    sub->add_option("--grid-level", opt.grid_level, "grid has 2^m + 1 nodes");
    sub->add_option("--tol", opt.tol, "iteration tolerance")->capture_default_str();
    sub->add_option("--seed", opt.seed, "random seed")->capture_default_str();
    sub->add_option("--space", opt.space, "space override, e.g. lp:2, sobolev:1,2");
    sub->add_option("--terms", opt.terms, "basis size")->capture_default_str();
    sub->add_option("--points", opt.points, "attractor points")->capture_default_str();
    sub->add_option("--trials", opt.trials, "random trials for norm estimates")->capture_default_str();
    sub->add_option("--level", opt.level, "basis ladder level")->capture_default_str();
    sub->callback([&chosen, &cmd] { chosen = &cmd; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    const std::string name = app.get_subcommands().empty() ? "fracop" : app.get_subcommands().front()->get_name();
    emit_error({}, name, "UsageError", e.what());
    return kExitIo;
  }
  return run(*chosen, opt);
}
