#include "fracop/scaling.hpp"

#include <algorithm>
#include <cmath>

#include "fracop/error.hpp"

namespace fracop {

ScalingProfile ScalingProfile::constant(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::kInvalidArgument, "empty scaling profile");
  ScalingProfile s;
  s.kind_ = Kind::kConstant;
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidArgument, "non-finite scaling factor");
    s.sup_.push_back(std::abs(v));
  }
  s.constants_ = std::move(values);
  return s;
}

ScalingProfile ScalingProfile::sampled(std::vector<GridFunction> functions) {
  if (functions.empty()) throw Error(ErrorCode::kInvalidArgument, "empty scaling profile");
  ScalingProfile s;
  s.kind_ = Kind::kSampled;
  for (const auto& f : functions) {
    if (!(f.grid() == functions.front().grid())) {
      throw Error(ErrorCode::kInvalidArgument, "scaling functions must share one grid");
    }
    s.sup_.push_back(sup_norm(f));
  }
  s.functions_ = std::move(functions);
  return s;
}

double ScalingProfile::max_sup_magnitude() const noexcept {
  return *std::max_element(sup_.begin(), sup_.end());
}

double ScalingProfile::ck_norm(std::size_t i, int k) const {
  double m = sup_magnitude(i);
  if (is_constant()) return m;
  for (int r = 1; r <= k; ++r) m = std::max(m, sup_norm(functions_.at(i).derivative(r)));
  return m;
}

double ScalingProfile::value_at(std::size_t i, double x) const {
  return is_constant() ? constants_.at(i) : functions_.at(i).eval_clamped(x);
}

double ScalingProfile::constant_value(std::size_t i) const {
  if (!is_constant()) throw Error(ErrorCode::kIncompatibleScalingKind, "scaling is not constant");
  return constants_.at(i);
}

const GridFunction& ScalingProfile::function(std::size_t i) const {
  if (is_constant()) throw Error(ErrorCode::kIncompatibleScalingKind, "scaling is constant");
  return functions_.at(i);
}

GridFunction ScalingProfile::derivative(std::size_t i, int order, const Grid& grid) const {
  if (is_constant()) {
    return GridFunction::constant(grid, order == 0 ? constants_.at(i) : 0.0);
  }
  return functions_.at(i).derivative(order);
}

bool ScalingProfile::all_zero() const noexcept {
  return std::all_of(sup_.begin(), sup_.end(), [](double v) { return v == 0.0; });
}

}  // namespace fracop
