#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "fracop/affine_map.hpp"

namespace fracop {

inline constexpr int kDefaultGridLevel = 12;
inline constexpr int kMaxDerivativeOrder = 4;

// Uniform node layout on [lo, hi] with 2^level + 1 nodes.
struct Grid {
  double lo{0.0};
  double hi{1.0};
  int level{kDefaultGridLevel};

  static Grid make(double lo, double hi, int level = kDefaultGridLevel);

  std::size_t size() const noexcept { return (std::size_t{1} << level) + 1; }
  double spacing() const noexcept { return (hi - lo) / static_cast<double>(size() - 1); }
  double node(std::size_t j) const noexcept;
  double length() const noexcept { return hi - lo; }
  // Relative slack used when deciding whether a point is inside the domain.
  double slack() const noexcept;
  std::size_t nearest_node(double x) const noexcept;

  bool operator==(const Grid&) const = default;
};

using ScalarFn = std::function<double(double)>;

// Dense uniform samples of a real function, read off-grid by piecewise-linear
// interpolation. May carry exact derivative samples (orders 1..depth) when the
// function came from an analytic source; otherwise derivatives are obtained by
// finite differences.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(Grid grid, std::vector<double> samples,
               std::vector<std::vector<double>> derivatives = {});

  static GridFunction sample(const Grid& grid, const ScalarFn& fn,
                             std::span<const ScalarFn> derivatives = {});
  static GridFunction constant(const Grid& grid, double value);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return samples_.size(); }
  std::span<const double> samples() const noexcept { return samples_; }
  double operator[](std::size_t j) const noexcept { return samples_[j]; }

  int derivative_depth() const noexcept { return static_cast<int>(derivatives_.size()); }
  std::span<const double> derivative_samples(int order) const;

  // Piecewise-linear read; exact at nodes. Throws kOutOfDomain.
  double eval(double x) const;
  // Interpolated read with x clamped into the domain (no range check).
  double eval_clamped(double x) const noexcept;

  // order-th derivative: stored samples where available, finite differences
  // of the deepest stored order otherwise.
  GridFunction derivative(int order) const;
  GridFunction value_only() const;

  GridFunction operator-() const;
  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(double c);

  friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
  friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
  friend GridFunction operator*(GridFunction a, double c) { return a *= c; }
  friend GridFunction operator*(double c, GridFunction a) { return a *= c; }

 private:
  void require_same_grid(const GridFunction& other) const;

  Grid grid_{};
  std::vector<double> samples_;
  std::vector<std::vector<double>> derivatives_;
};

double sup_norm(const GridFunction& g);

// g(L^{-1}(x)) for the nodes first..last (inclusive). Throws kOutOfRange when
// a node lies outside the map's image interval.
std::vector<double> compose_affine_inverse(const GridFunction& g, const AffineMap& map,
                                           std::size_t first, std::size_t last);

// Composite trapezoid approximation of the integral of |g|^p (before the root).
double quadrature_p_power(const GridFunction& g, double p);

// order-th derivative with second-order stencils: centred at interior nodes,
// one-sided near the two ends. Throws kOrderTooHigh for order > 4 or fewer
// than 2*order+1 nodes.
GridFunction finite_difference(const GridFunction& g, int order);

// Slope of the interpolant on each of the size()-1 cells.
std::vector<double> cell_slopes(const GridFunction& g);

enum class IntegrationRule {
  kTrapezoid,
  // Cell value taken at the left node; exact for right-continuous step data
  // and the inverse of cell_slopes.
  kLeftRectangle,
};

// x -> integral from lo to x.
GridFunction cumulative_integral(const GridFunction& g,
                                 IntegrationRule rule = IntegrationRule::kTrapezoid);

// Resamples values given on a uniform layout of [lo, hi] (any count >= 2) onto
// `grid` by linear interpolation.
GridFunction from_uniform_samples(const Grid& grid, std::span<const double> values);

// CSV with header `x,value[,d1,...,dk]`, 17 significant digits.
void write_csv(std::ostream& out, const GridFunction& g, int derivative_columns = 0);

}  // namespace fracop
