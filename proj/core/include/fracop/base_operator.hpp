#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracop/grid_function.hpp"
#include "fracop/space.hpp"

namespace fracop {

// Linear rule f -> Lf producing the base function b = Lf. Every kind keeps
// the endpoint values of f, so b is admissible for any seed.
//
//   EndpointLine          (Lf)(x) = f(x_1) + (f(x_N) - f(x_1)) (x - x_1)/(x_N - x_1)
//   ScaledIdentityBlend   Lf = lambda f + (1 - lambda) EndpointLine(f)
//   UserTable             piecewise-linear interpolant of f at user nodes
//                         (which must include both ends of I)
//
// norm_bound / deviation_bound return analytic upper bounds for ||L|| and
// ||I - L|| in the given space (see docs/base_operator_bounds.md); +inf means
// L is not bounded there. User-supplied bounds take precedence.
class LinearBaseOperator {
 public:
  enum class Kind { kEndpointLine, kScaledIdentityBlend, kUserTable };

  static LinearBaseOperator endpoint_line();
  static LinearBaseOperator blend(double lambda);
  static LinearBaseOperator table(std::vector<double> nodes);

  LinearBaseOperator with_bounds(std::optional<double> norm,
                                 std::optional<double> deviation) const;

  Kind kind() const noexcept { return kind_; }
  std::string name() const;
  double lambda() const noexcept { return lambda_; }
  const std::vector<double>& table_nodes() const noexcept { return nodes_; }

  GridFunction apply(const GridFunction& f) const;

  double norm_bound(const SpaceSpec& space, const Grid& grid) const;
  double deviation_bound(const SpaceSpec& space, const Grid& grid) const;

 private:
  LinearBaseOperator() = default;

  double analytic_norm(const SpaceSpec& space, const Grid& grid) const;
  double line_norm(const SpaceSpec& space, double cell_length, bool single_cell) const;

  Kind kind_{Kind::kEndpointLine};
  double lambda_{0.0};
  std::vector<double> nodes_;
  std::optional<double> norm_override_;
  std::optional<double> deviation_override_;
};

}  // namespace fracop
