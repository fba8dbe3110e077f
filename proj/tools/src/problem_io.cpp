#include "problem_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "fracop/error.hpp"
#include "fracop/expression.hpp"

namespace fracop::cli {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::kParseError, what); }

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) bad(where + ": missing \"" + key + "\"");
  return obj.at(key);
}

std::string kind_of(const json& obj, const std::string& where) {
  const json& k = field(obj, "kind", where);
  if (!k.is_string()) bad(where + ": \"kind\" must be a string");
  return k.get<std::string>();
}

std::vector<double> numbers(const json& arr, const std::string& where) {
  if (!arr.is_array()) bad(where + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const json& v : arr) {
    if (!v.is_number()) bad(where + ": expected an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::string text(const json& v, const std::string& where) {
  if (!v.is_string()) bad(where + ": expected a string");
  return v.get<std::string>();
}

SpaceSpec parse_space(const json& v) {
  if (v.is_string()) return SpaceSpec::parse(v.get<std::string>());
  const std::string kind = kind_of(v, "space");
  if (kind == "bounded") return SpaceSpec::bounded();
  if (kind == "lp") return SpaceSpec::lp(field(v, "p", "space").get<double>());
  if (kind == "ck") return SpaceSpec::ck(field(v, "k", "space").get<int>());
  if (kind == "sobolev") {
    return SpaceSpec::sobolev(field(v, "k", "space").get<int>(), field(v, "p", "space").get<double>());
  }
  if (kind == "hoelder") {
    return SpaceSpec::hoelder(field(v, "k", "space").get<int>(),
                              field(v, "sigma", "space").get<double>());
  }
  bad("space: unknown kind \"" + kind + "\"");
}

int sample_depth(const SpaceSpec& space) {
  return std::min(kMaxDerivativeOrder,
                  std::max(space.derivative_order(), space.endpoint_match_order()));
}

// "expr" -> analytic samples; "samples" -> values on a uniform layout of I.
GridFunction function_input(const json& obj, const Grid& grid, int depth, const std::string& where,
                            std::string kind) {
  if (kind == "expr") {
    return Expression::parse(text(field(obj, "expr", where), where + ".expr")).sample(grid, depth);
  }
  if (kind == "samples") {
    const auto values = numbers(field(obj, "values", where), where + ".values");
    if (values.size() < 2) bad(where + ".values: need at least two samples");
    return from_uniform_samples(grid, values);
  }
  bad(where + ": unknown kind \"" + kind + "\"");
}

GridFunction function_input(const json& obj, const Grid& grid, int depth, const std::string& where) {
  return function_input(obj, grid, depth, where, kind_of(obj, where));
}

ScalingProfile scaling_input(const json& obj, const Grid& grid, int depth) {
  const std::string kind = kind_of(obj, "alpha");
  if (kind == "const") return ScalingProfile::constant(numbers(field(obj, "values", "alpha"), "alpha.values"));
  if (kind != "sampled") bad("alpha: unknown kind \"" + kind + "\"");
  const json& fns = field(obj, "functions", "alpha");
  if (!fns.is_array()) bad("alpha.functions: expected an array");
  std::vector<GridFunction> out;
  for (std::size_t i = 0; i < fns.size(); ++i) {
    const std::string where = "alpha.functions[" + std::to_string(i) + "]";
    if (fns[i].is_string()) {
      out.push_back(Expression::parse(fns[i].get<std::string>()).sample(grid, depth));
    } else {
      out.push_back(function_input(fns[i], grid, depth, where));
    }
  }
  return ScalingProfile::sampled(std::move(out));
}

LinearBaseOperator operator_input(const json& obj) {
  const std::string name = text(field(obj, "name", "base"), "base.name");
  LinearBaseOperator op = LinearBaseOperator::endpoint_line();
  if (name == "blend") {
    op = LinearBaseOperator::blend(field(obj, "lambda", "base").get<double>());
  } else if (name == "table") {
    op = LinearBaseOperator::table(numbers(field(obj, "nodes", "base"), "base.nodes"));
  } else if (name != "endpoint_line") {
    bad("base.name: unknown operator \"" + name + "\"");
  }
  std::optional<double> norm;
  std::optional<double> deviation;
  if (obj.contains("norm_bound")) norm = obj.at("norm_bound").get<double>();
  if (obj.contains("deviation_bound")) deviation = obj.at("deviation_bound").get<double>();
  return (norm || deviation) ? op.with_bounds(norm, deviation) : op;
}

Grid problem_grid(const Problem& problem, int grid_level) {
  if (problem.knots.size() < 2) throw Error(ErrorCode::kTooFewKnots, "need at least 3 knots");
  return Grid::make(problem.knots.front(), problem.knots.back(), grid_level);
}

}  // namespace

Problem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  Problem p;
  try {
    p.source = json::parse(in);
  } catch (const json::parse_error& e) {
    bad(path.string() + ": " + e.what());
  }
  try {
    p.knots = numbers(field(p.source, "knots", "problem"), "knots");
    for (const char* key : {"alpha", "seed", "base"}) field(p.source, key, "problem");
    p.space = p.source.contains("space") ? parse_space(p.source.at("space")) : SpaceSpec::bounded();
    if (p.source.contains("grid_level")) p.grid_level = p.source.at("grid_level").get<int>();
  } catch (const json::exception& e) {
    bad(std::string("problem: ") + e.what());
  }
  return p;
}

IfsSpec build_spec(const Problem& problem, int grid_level, const SpaceSpec& space) {
  const Grid grid = problem_grid(problem, grid_level);
  const int depth = sample_depth(space);
  try {
    const json& src = problem.source;
    Partition partition = Partition::build(problem.knots);
    ScalingProfile scaling = scaling_input(src.at("alpha"), grid, depth);
    GridFunction seed = function_input(src.at("seed"), grid, depth, "seed");
    const json& base = src.at("base");
    const std::string kind = kind_of(base, "base");
    BaseRule rule = LinearBaseOperator::endpoint_line();
    if (kind == "explicit") {
      if (base.contains("function")) {
        rule = function_input(base.at("function"), grid, depth, "base.function");
      } else {
        rule = function_input(base, grid, depth, "base", base.contains("expr") ? "expr" : "samples");
      }
    } else if (kind == "operator") {
      rule = operator_input(base);
    } else {
      bad("base: unknown kind \"" + kind + "\"");
    }
    return IfsSpec::create(std::move(partition), std::move(scaling), std::move(seed),
                           std::move(rule), space);
  } catch (const json::exception& e) {
    bad(std::string("problem: ") + e.what());
  }
}

FractalTemplate build_template(const Problem& problem, int grid_level, const SpaceSpec& space) {
  const Grid grid = problem_grid(problem, grid_level);
  try {
    const json& base = problem.source.at("base");
    if (kind_of(base, "base") != "operator") {
      throw Error(ErrorCode::kSpecInvalid, "this command needs a linear base operator (base.kind = \"operator\")");
    }
    return FractalTemplate{Partition::build(problem.knots),
                           scaling_input(problem.source.at("alpha"), grid, sample_depth(space)),
                           operator_input(base), space, grid};
  } catch (const json::exception& e) {
    bad(std::string("problem: ") + e.what());
  }
}

json describe(const Problem& problem, const SpaceSpec& space, int grid_level) {
  json out = problem.source;
  out["space"] = space.to_string();
  out["grid_level"] = grid_level;
  return out;
}

}  // namespace fracop::cli
