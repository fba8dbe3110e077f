#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fracop/affine_map.hpp"

namespace fracop {

// Strictly increasing knots x_1 < ... < x_N (N >= 3) of I = [x_1, x_N], with
// the affine maps L_i sending I onto [x_i, x_{i+1}].
class Partition {
 public:
  // Throws kTooFewKnots or kNonMonotoneKnots.
  static Partition build(std::vector<double> knots);

  std::span<const double> knots() const noexcept { return knots_; }
  std::size_t knot_count() const noexcept { return knots_.size(); }
  std::size_t interval_count() const noexcept { return maps_.size(); }
  double lo() const noexcept { return knots_.front(); }
  double hi() const noexcept { return knots_.back(); }
  double length() const noexcept { return knots_.back() - knots_.front(); }

  const AffineMap& map(std::size_t i) const { return maps_.at(i); }
  std::span<const AffineMap> maps() const noexcept { return maps_; }
  // a_i, the contraction ratio of L_i.
  double ratio(std::size_t i) const { return maps_.at(i).slope; }

  // Subinterval holding x: [x_i, x_{i+1}) for all but the last, which is
  // closed. Interior knots therefore belong to the interval on their right.
  std::size_t interval_of(double x) const noexcept;

 private:
  explicit Partition(std::vector<double> knots);

  std::vector<double> knots_;
  std::vector<AffineMap> maps_;
};

}  // namespace fracop
