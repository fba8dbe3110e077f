#pragma once

namespace fracop {

// x -> slope * x + intercept, mapping the whole interval [x_1, x_N] onto one
// subinterval [x_i, x_{i+1}] of a partition.
struct AffineMap {
  double slope{1.0};
  double intercept{0.0};
  double image_lo{0.0};
  double image_hi{1.0};

  double operator()(double x) const noexcept { return slope * x + intercept; }
};

// Inverse of `map` on its image interval. Throws Error(kOutOfRange) when x is
// outside [image_lo, image_hi] by more than a relative 1e-12.
double affine_inverse(const AffineMap& map, double x);

}  // namespace fracop
