#include "fracop/schauder.hpp"

#include <cmath>
#include <string>

#include "fracop/error.hpp"
#include "fracop/norms.hpp"

namespace fracop {

namespace {

std::vector<double> haar_coefficients(const GridFunction& f, std::size_t count) {
  const std::size_t cells = f.size() - 1;
  const double h = f.grid().spacing();
  std::vector<double> out(count, 0.0);
  for (std::size_t n = 0; n < count; ++n) {
    double s = 0.0;
    if (n == 0) {
      for (std::size_t a = 0; a < cells; ++a) s += f[a];
      out[n] = h * s;
      continue;
    }
    // Only the support [k/2^j, (k+1)/2^j) contributes.
    const int j = static_cast<int>(std::floor(std::log2(static_cast<double>(n))));
    const std::size_t k = n - (std::size_t{1} << j);
    const std::size_t width = cells >> j;
    const std::size_t first = k * width;
    const std::size_t mid = first + width / 2;
    const std::size_t last = first + width;
    for (std::size_t a = first; a < mid; ++a) s += f[a];
    for (std::size_t a = mid; a < last; ++a) s -= f[a];
    out[n] = h * std::sqrt(std::ldexp(1.0, j)) * s;
  }
  return out;
}

std::vector<double> ladder_coefficients(int level, const GridFunction& f, std::size_t count) {
  if (count == 0) return {};
  if (level == 0) return haar_coefficients(f, count);
  std::vector<double> out{f[0]};
  const std::vector<double> rest = ladder_coefficients(level - 1, slope_function(f), count - 1);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

}  // namespace

double haar_value(std::size_t n, double x) {
  if (x < 0.0 || x > 1.0) return 0.0;
  if (n == 0) return 1.0;
  const int j = static_cast<int>(std::floor(std::log2(static_cast<double>(n))));
  const double k = static_cast<double>(n - (std::size_t{1} << j));
  const double scale = std::ldexp(1.0, j);
  const double u = x * scale - k;  // position inside the support, in [0, 1)
  if (u < 0.0 || u >= 1.0) return 0.0;
  const double amp = std::sqrt(scale);
  return u < 0.5 ? amp : -amp;
}

GridFunction slope_function(const GridFunction& f) {
  std::vector<double> s = cell_slopes(f);
  const std::size_t c = s.size();
  s.push_back(c >= 2 ? 2.0 * s[c - 1] - s[c - 2] : s[c - 1]);
  return GridFunction(f.grid(), std::move(s));
}

double discrete_inner_product(const GridFunction& f, const GridFunction& g) {
  double s = 0.0;
  for (std::size_t a = 0; a + 1 < f.size(); ++a) s += f[a] * g[a];
  return s * f.grid().spacing();
}

std::vector<std::vector<double>> gram_matrix(const BasisLadder& ladder, std::size_t count) {
  count = std::min(count, ladder.size());
  std::vector<std::vector<double>> g(count, std::vector<double>(count));
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i; j < count; ++j) {
      g[i][j] = g[j][i] = discrete_inner_product(ladder.element(i), ladder.element(j));
    }
  }
  return g;
}

BasisLadder BasisLadder::haar_system(std::size_t count, int grid_level) {
  const Grid grid = Grid::make(0.0, 1.0, grid_level);
  const std::size_t cells = grid.size() - 1;
  if (count < 1 || count > cells) {
    throw Error(ErrorCode::kInvalidArgument,
                "Haar system size must lie in [1, " + std::to_string(cells) + "]");
  }
  BasisLadder ladder;
  ladder.level_ = 0;
  ladder.grid_ = grid;
  const double h = grid.spacing();
  for (std::size_t n = 0; n < count; ++n) {
    std::vector<double> v(grid.size());
    for (std::size_t a = 0; a < cells; ++a) {
      v[a] = haar_value(n, (static_cast<double>(a) + 0.5) * h);
    }
    v[cells] = v[cells - 1];
    ladder.elements_.emplace_back(grid, std::move(v));
  }
  return ladder;
}

BasisLadder BasisLadder::lift(std::size_t count) const {
  if (count < 1 || count - 1 > size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "lifted ladder can hold at most " + std::to_string(size() + 1) + " elements");
  }
  BasisLadder next;
  next.level_ = level_ + 1;
  next.grid_ = grid_;
  next.elements_.push_back(GridFunction::constant(grid_, 1.0).value_only());
  for (std::size_t n = 0; n + 1 < count; ++n) {
    next.elements_.push_back(cumulative_integral(elements_[n], IntegrationRule::kLeftRectangle));
  }
  return next;
}

double BasisLadder::coefficient(std::size_t n, const GridFunction& f) const {
  return ladder_coefficients(level_, f, n + 1).back();
}

std::vector<double> BasisLadder::coefficients(const GridFunction& f, std::size_t count) const {
  if (!(f.grid() == grid_)) {
    throw Error(ErrorCode::kInvalidArgument, "function and basis live on different grids");
  }
  return ladder_coefficients(level_, f, count);
}

FractalBasis fractalize_basis(const BasisLadder& ladder, const FractalTemplate& tmpl) {
  if (!(tmpl.grid == ladder.grid())) {
    throw Error(ErrorCode::kHypothesisViolated,
                "template grid must be the ladder grid on [0, 1] at level " +
                    std::to_string(ladder.grid().level));
  }
  FractalOperator op(tmpl);
  const double rate = neumann_rate(op);
  if (!(rate < 1.0)) {
    throw Error(ErrorCode::kHypothesisViolated,
                "F^alpha is not known to be invertible: K (1 + ||I - L||) = " +
                    std::to_string(rate) + " >= 1");
  }
  std::vector<GridFunction> elements;
  elements.reserve(ladder.size());
  for (const auto& e : ladder.elements()) elements.push_back(op.apply(e));
  return FractalBasis(ladder, std::move(op), std::move(elements));
}

Reconstruction reconstruct(const FractalBasis& basis, const GridFunction& f, std::size_t n_terms,
                           double tol) {
  n_terms = std::min(n_terms, basis.size());
  const NeumannResult inv = neumann_inverse(basis.op(), f, tol);
  Reconstruction r;
  r.neumann_terms = inv.terms;
  r.coefficients = basis.ladder().coefficients(inv.inverse, n_terms);
  const SpaceSpec& space = basis.op().tmpl().space;
  const GridFunction target = f.value_only();
  GridFunction partial = GridFunction::constant(f.grid(), 0.0).value_only();
  for (std::size_t n = 0; n < n_terms; ++n) {
    partial += r.coefficients[n] * basis.element(n);
    r.errors.push_back(norm(space, target - partial));
  }
  r.approximation = std::move(partial);
  return r;
}

}  // namespace fracop
