#include "fracop/random_functions.hpp"

#include <numbers>

namespace fracop {

RandomFunctionSource::RandomFunctionSource(std::uint64_t seed, double lo, double hi)
    : rng_(seed), lo_(lo), hi_(hi) {}

double RandomFunctionSource::uniform(double a, double b) {
  // 53 random mantissa bits, independent of the standard library's distributions.
  const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  return a + (b - a) * u;
}

std::size_t RandomFunctionSource::index(std::size_t n) {
  return static_cast<std::size_t>(rng_() % n);
}

Expression RandomFunctionSource::t() const {
  return (Expression::variable() - Expression::constant(lo_)) *
         Expression::constant(1.0 / (hi_ - lo_));
}

Expression RandomFunctionSource::raw() {
  const Expression s = t();
  Expression e = Expression::constant(uniform(-1.0, 1.0));
  e = e + Expression::constant(uniform(-1.0, 1.0)) * s;
  e = e + Expression::constant(uniform(-1.0, 1.0)) * s * s;
  for (int n = 1; n <= 4; ++n) {
    e = e + Expression::constant(uniform(-1.0, 1.0)) *
                sin(Expression::constant(std::numbers::pi * n) * s);
  }
  return e;
}

Expression RandomFunctionSource::vanishing(int match_order) {
  const Expression s = t();
  const Expression bump = pow(s * (Expression::constant(1.0) - s), match_order + 1);
  return bump * raw();
}

Expression RandomFunctionSource::admissible(int match_order) {
  if (match_order <= 0) return raw();
  const Expression line =
      Expression::constant(uniform(-1.0, 1.0)) + Expression::constant(uniform(-1.0, 1.0)) * t();
  return line + vanishing(match_order);
}

GridFunction RandomFunctionSource::sample(const Grid& grid, int match_order, int derivative_depth) {
  return admissible(match_order).sample(grid, derivative_depth);
}

}  // namespace fracop
