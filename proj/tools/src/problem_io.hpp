#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "fracop/fractal_operator.hpp"
#include "fracop/ifs_spec.hpp"

namespace fracop::cli {

// A problem file after parsing, before sampling onto a grid.
struct Problem {
  nlohmann::json source;
  std::vector<double> knots;
  std::optional<int> grid_level;
  SpaceSpec space;
};

// Reads and structurally checks a problem file. Throws Error(kIoError) when the
// file cannot be read and Error(kParseError) for malformed content.
Problem load_problem(const std::filesystem::path& path);

// Samples every part of the problem on a grid of the given level over [x_1, x_N].
// Expression inputs carry exact derivatives up to the order the space needs.
IfsSpec build_spec(const Problem& problem, int grid_level, const SpaceSpec& space);

// The same data as a fractal-operator template; needs an operator base rule.
FractalTemplate build_template(const Problem& problem, int grid_level, const SpaceSpec& space);

// Problem echoed back in canonical form for reports.
nlohmann::json describe(const Problem& problem, const SpaceSpec& space, int grid_level);

}  // namespace fracop::cli
