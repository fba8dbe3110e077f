#pragma once

#include <cstddef>
#include <vector>

#include "fracop/fractal_operator.hpp"
#include "fracop/grid_function.hpp"

namespace fracop {

// One rung of the integration ladder on [0, 1]. Level 0 is the L2-normalised
// Haar system {1, h_00, h_10, h_11, h_20, ...}; level k+1 is {1} followed by
// the running integrals of the level-k elements. Elements are indexed from 0
// (index 0 is always the constant function).
//
// Discretisation: a Haar function is sampled on the grid as a right-continuous
// step (cell a takes its value at the cell midpoint, the last node repeats the
// last cell), running integrals use the left-rectangle rule, and derivatives
// inside the coefficient functionals are cell slopes. Together these make the
// discrete functionals exactly biorthogonal to the discrete elements.
class BasisLadder {
 public:
  // Requires 1 <= count <= 2^grid_level.
  static BasisLadder haar_system(std::size_t count, int grid_level = kDefaultGridLevel);

  // Next level with `count` elements; needs count - 1 <= size().
  BasisLadder lift(std::size_t count) const;

  int level() const noexcept { return level_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const Grid& grid() const noexcept { return grid_; }
  const GridFunction& element(std::size_t n) const { return elements_.at(n); }
  const std::vector<GridFunction>& elements() const noexcept { return elements_; }

  // beta_n(f):
  //   level 0:  sum_a h haar_n(mid_a) f(x_a)             (left-rectangle inner product)
  //   level k:  beta_0(f) = f(0),  beta_n(f) = beta^{k-1}_{n-1}(f')
  double coefficient(std::size_t n, const GridFunction& f) const;
  std::vector<double> coefficients(const GridFunction& f, std::size_t count) const;

 private:
  BasisLadder() = default;

  int level_{0};
  Grid grid_{};
  std::vector<GridFunction> elements_;
};

// Haar function number n (n = 0 constant, n = 2^j + k -> h_{j,k}) at x.
double haar_value(std::size_t n, double x);

// Cell-slope derivative with the last node extrapolated linearly.
GridFunction slope_function(const GridFunction& f);

// sum_a h f(x_a) g(x_a) over the left nodes of all cells.
double discrete_inner_product(const GridFunction& f, const GridFunction& g);

// Gram matrix of the first `count` elements under discrete_inner_product.
std::vector<std::vector<double>> gram_matrix(const BasisLadder& ladder, std::size_t count);

// Ladder elements pushed through F^alpha.
class FractalBasis {
 public:
  const BasisLadder& ladder() const noexcept { return ladder_; }
  const FractalOperator& op() const noexcept { return op_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const GridFunction& element(std::size_t n) const { return elements_.at(n); }

 private:
  friend FractalBasis fractalize_basis(const BasisLadder& ladder, const FractalTemplate& tmpl);
  FractalBasis(BasisLadder ladder, FractalOperator op, std::vector<GridFunction> elements)
      : ladder_(std::move(ladder)), op_(std::move(op)), elements_(std::move(elements)) {}

  BasisLadder ladder_;
  FractalOperator op_;
  std::vector<GridFunction> elements_;
};

// Throws kHypothesisViolated unless K (1 + ||I - L||) < 1, or when the
// template grid differs from the ladder grid.
FractalBasis fractalize_basis(const BasisLadder& ladder, const FractalTemplate& tmpl);

struct Reconstruction {
  GridFunction approximation;
  std::vector<double> coefficients;
  // errors[n-1] = ||f - sum_{m<n} beta_m(h) f_m^alpha|| in the template space.
  std::vector<double> errors;
  std::size_t neumann_terms{0};
};

// h = (F^alpha)^{-1} f by Neumann series, then partial sums of
// sum_n beta_n(h) f_n^alpha. n_terms is capped at the basis size.
Reconstruction reconstruct(const FractalBasis& basis, const GridFunction& f, std::size_t n_terms,
                           double tol = 1e-12);

}  // namespace fracop
