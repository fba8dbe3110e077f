#include "fracop/partition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracop/error.hpp"

namespace fracop {

Partition Partition::build(std::vector<double> knots) {
  if (knots.size() < 3) {
    throw Error(ErrorCode::kTooFewKnots,
                "a partition needs at least 3 knots, got " + std::to_string(knots.size()));
  }
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!std::isfinite(knots[i])) {
      throw Error(ErrorCode::kNonMonotoneKnots, "knots must be finite");
    }
    if (i > 0 && !(knots[i] > knots[i - 1])) {
      throw Error(ErrorCode::kNonMonotoneKnots,
                  "knots must be strictly increasing (index " + std::to_string(i) + ")");
    }
  }
  return Partition(std::move(knots));
}

Partition::Partition(std::vector<double> knots) : knots_(std::move(knots)) {
  const double x1 = knots_.front();
  const double xn = knots_.back();
  const double span = xn - x1;
  maps_.reserve(knots_.size() - 1);
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
    const double left = knots_[i];
    const double right = knots_[i + 1];
    AffineMap m;
    m.slope = (right - left) / span;
    m.intercept = (xn * left - x1 * right) / span;
    m.image_lo = left;
    m.image_hi = right;
    maps_.push_back(m);
  }
}

std::size_t Partition::interval_of(double x) const noexcept {
  // First knot strictly greater than x; the interval starts one before it.
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  if (it == knots_.begin()) return 0;
  const auto idx = static_cast<std::size_t>(it - knots_.begin()) - 1;
  return std::min(idx, maps_.size() - 1);
}

}  // namespace fracop
