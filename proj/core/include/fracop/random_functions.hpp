#pragma once

#include <cstdint>
#include <random>

#include "fracop/expression.hpp"
#include "fracop/grid_function.hpp"

namespace fracop {

// Seeded random smooth test functions on [lo, hi], written in t = (x-lo)/(hi-lo):
//   raw(t) = c_0 + c_1 t + c_2 t^2 + sum_{n=1}^{4} c_{n+2} sin(pi n t),  c ~ U[-1, 1].
// The same seed gives the same function on every platform.
class RandomFunctionSource {
 public:
  RandomFunctionSource(std::uint64_t seed, double lo = 0.0, double hi = 1.0);

  double uniform(double a, double b);
  std::size_t index(std::size_t n);

  Expression raw();
  // line(t) + (t(1-t))^{r+1} raw(t): every derivative of order <= r at the ends
  // equals that of a straight line, so linear base rules that keep lines and
  // endpoint values (endpoint line, blends) agree with it to order r.
  // r = 0 returns raw().
  Expression admissible(int match_order);
  // (t(1-t))^{r+1} raw(t): vanishes at both ends with its first r derivatives.
  Expression vanishing(int match_order);

  GridFunction sample(const Grid& grid, int match_order, int derivative_depth = 0);

 private:
  Expression t() const;

  std::mt19937_64 rng_;
  double lo_;
  double hi_;
};

}  // namespace fracop
