#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fracop/grid_function.hpp"

namespace fracop {

// Per-subinterval vertical scaling: either constants alpha_i or functions
// alpha_i(x) sampled on I. All entries share one kind.
class ScalingProfile {
 public:
  enum class Kind { kConstant, kSampled };

  static ScalingProfile constant(std::vector<double> values);
  // All functions must share a grid.
  static ScalingProfile sampled(std::vector<GridFunction> functions);

  Kind kind() const noexcept { return kind_; }
  bool is_constant() const noexcept { return kind_ == Kind::kConstant; }
  std::size_t size() const noexcept { return sup_.size(); }

  // |alpha_i| for constants, max over samples of |alpha_i(x)| otherwise.
  double sup_magnitude(std::size_t i) const { return sup_.at(i); }
  double max_sup_magnitude() const noexcept;
  // max_{r <= k} sup |alpha_i^{(r)}|.
  double ck_norm(std::size_t i, int k) const;

  double value_at(std::size_t i, double x) const;
  double constant_value(std::size_t i) const;
  const GridFunction& function(std::size_t i) const;
  // alpha_i^{(order)} on `grid` (zero for constants when order >= 1).
  GridFunction derivative(std::size_t i, int order, const Grid& grid) const;

  bool all_zero() const noexcept;

 private:
  ScalingProfile() = default;

  Kind kind_{Kind::kConstant};
  std::vector<double> constants_;
  std::vector<GridFunction> functions_;
  std::vector<double> sup_;
};

}  // namespace fracop
