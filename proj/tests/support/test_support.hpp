#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fracop/expression.hpp"
#include "fracop/fractal_operator.hpp"
#include "fracop/grid_function.hpp"
#include "fracop/ifs_spec.hpp"
#include "fracop/random_functions.hpp"
#include "fracop/rb_engine.hpp"

namespace fracop::testing {

using Fn = std::function<double(double)>;

inline Grid unit_grid(int level = kDefaultGridLevel) { return Grid::make(0.0, 1.0, level); }

inline GridFunction sample_expr(const std::string& text, const Grid& grid, int depth = 0) {
  return Expression::parse(text).sample(grid, depth);
}

// f = x^2, b = x (or the given base), uniform two-piece partition of [0, 1].
inline IfsSpec make_spec(const SpaceSpec& space, std::vector<double> alpha = {0.4, 0.4},
                         const std::string& f = "x^2", const std::string& b = "x",
                         int level = kDefaultGridLevel, std::vector<double> knots = {0.0, 0.5, 1.0}) {
  const Grid grid = unit_grid(level);
  const int depth = std::min(space.derivative_order(), kMaxDerivativeOrder);
  return IfsSpec::create(Partition::build(std::move(knots)), ScalingProfile::constant(std::move(alpha)),
                         sample_expr(f, grid, depth), sample_expr(b, grid, depth), space);
}

inline IfsSpec sstar(const SpaceSpec& space = SpaceSpec::bounded()) { return make_spec(space); }

inline FractalTemplate sstar_template(const SpaceSpec& space = SpaceSpec::bounded(),
                                      std::vector<double> alpha = {0.4, 0.4},
                                      int level = kDefaultGridLevel) {
  return FractalTemplate{Partition::build({0.0, 0.5, 1.0}), ScalingProfile::constant(std::move(alpha)),
                         LinearBaseOperator::endpoint_line(), space, unit_grid(level)};
}

// Independent evaluation of the self-referential equation
//   g(x) = f(x) + alpha_i(y) (g(y) - b(y)),  y = x_1 + (x - x_i)(x_N - x_1)/(x_{i+1} - x_i),
// unrolled `depth` times; terminates early at knots, where g = f.
struct RecursiveOracle {
  std::vector<double> knots;
  std::vector<Fn> alpha;
  Fn f;
  Fn b;

  double operator()(double x, int depth = 400) const {
    const std::size_t n = knots.size();
    for (double k : knots) {
      if (x == k) return f(x);
    }
    if (depth == 0) return f(x);
    std::size_t i = 0;
    while (i + 2 < n && x >= knots[i + 1]) ++i;
    const double y = knots.front() + (x - knots[i]) * (knots.back() - knots.front()) /
                                         (knots[i + 1] - knots[i]);
    return f(x) + alpha[i](y) * ((*this)(y, depth - 1) - b(y));
  }
};

inline RecursiveOracle sstar_oracle(double a = 0.4) {
  return RecursiveOracle{{0.0, 0.5, 1.0},
                         {[a](double) { return a; }, [a](double) { return a; }},
                         [](double x) { return x * x; },
                         [](double x) { return x; }};
}

// Random contractive spec in the sup norm: 2..5 subintervals on node-aligned
// knots of a random interval, constant or smooth sampled scaling with
// sup |alpha_i| <= 0.85, random smooth seed and a base that agrees with it at
// both ends.
struct RandomSpec {
  IfsSpec spec;
  RecursiveOracle oracle;
};

// With `dyadic`, the partition is uniform with 2, 4 or 8 pieces, so every
// preimage of a grid node is again a node and the grid fixed point is exact
// at the nodes.
inline RandomSpec random_spec(std::uint64_t seed, int level = 10, bool dyadic = false) {
  std::mt19937_64 rng(seed);
  auto unif = [&](double a, double b) {
    return a + (b - a) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  const double lo = std::round(unif(-2.0, 2.0) * 8.0) / 8.0;
  const double len = std::ldexp(1.0, static_cast<int>(rng() % 3));  // 1, 2 or 4
  const double hi = lo + len;
  const Grid grid = Grid::make(lo, hi, level);
  const std::size_t pieces = dyadic ? (std::size_t{2} << (rng() % 3)) : 2 + rng() % 4;
  // Distinct cut points on a 1/64 lattice of the interval.
  std::vector<int> cuts{0, 64};
  for (std::size_t i = 1; dyadic && i < pieces; ++i) cuts.push_back(static_cast<int>(64 / pieces * i));
  while (cuts.size() < pieces + 1) {
    const int c = 1 + static_cast<int>(rng() % 63);
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> knots;
  for (int c : cuts) knots.push_back(lo + len * c / 64.0);

  RandomFunctionSource source(rng(), lo, hi);
  const Expression f = source.raw();
  const Expression b = f + source.vanishing(0);

  const bool sampled = rng() % 2 == 0;
  std::vector<Fn> alpha_fns;
  std::optional<ScalingProfile> scaling;
  if (sampled) {
    std::vector<GridFunction> fns;
    for (std::size_t i = 0; i < pieces; ++i) {
      const double c0 = unif(-0.5, 0.5);
      const double c1 = unif(-0.35, 0.35);
      const double w = unif(1.0, 6.0);
      Fn a = [=](double x) { return c0 + c1 * std::sin(w * x); };
      fns.push_back(GridFunction::sample(grid, a));
      alpha_fns.push_back(a);
    }
    scaling = ScalingProfile::sampled(std::move(fns));
  } else {
    std::vector<double> values;
    for (std::size_t i = 0; i < pieces; ++i) {
      const double v = unif(-0.85, 0.85);
      values.push_back(v);
      alpha_fns.push_back([v](double) { return v; });
    }
    scaling = ScalingProfile::constant(std::move(values));
  }
  IfsSpec spec = IfsSpec::create(Partition::build(knots), *scaling, f.sample(grid), b.sample(grid),
                                 SpaceSpec::bounded());
  return RandomSpec{std::move(spec),
                    RecursiveOracle{knots, alpha_fns, [f](double x) { return f(x); },
                                    [b](double x) { return b(x); }}};
}

// Random combination of 1, t, t^2, sin(pi n t) with the endpoint behaviour the
// template space needs.
inline GridFunction random_function(std::uint64_t seed, const FractalTemplate& tmpl) {
  RandomFunctionSource source(seed, tmpl.grid.lo, tmpl.grid.hi);
  return source.sample(tmpl.grid, admissible_match_order(tmpl));
}

}  // namespace fracop::testing
