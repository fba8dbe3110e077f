#include "fracop/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "fracop/error.hpp"

namespace fracop {

namespace {

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("non-finite sample in ") + what);
    }
  }
}

// Weights of the `order`-th derivative at x0 from values at the integer
// abscissae xs (Fornberg's recursion), in units of one grid spacing.
std::vector<double> stencil_weights(double x0, const std::vector<double>& xs, int order) {
  const std::size_t n = xs.size();
  const auto m = static_cast<std::size_t>(order);
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  c[0][0] = 1.0;
  double c1 = 1.0;
  double c4 = xs[0] - x0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = xs[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k) {
          c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) {
        c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
      }
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = c[i][m];
  return w;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double affine_inverse(const AffineMap& map, double x) {
  const double tol = 1e-12 * std::max(1.0, std::abs(map.image_hi) + std::abs(map.image_lo));
  if (x < map.image_lo - tol || x > map.image_hi + tol) {
    throw Error(ErrorCode::kOutOfRange, "point " + format_double(x) +
                                            " outside the image interval [" +
                                            format_double(map.image_lo) + ", " +
                                            format_double(map.image_hi) + "]");
  }
  return (x - map.intercept) / map.slope;
}

Grid Grid::make(double lo, double hi, int level) {
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorCode::kInvalidArgument, "grid domain must satisfy lo < hi");
  }
  if (level < 1 || level > 24) {
    throw Error(ErrorCode::kInvalidArgument, "grid level must lie in [1, 24]");
  }
  return Grid{lo, hi, level};
}

double Grid::node(std::size_t j) const noexcept {
  if (j + 1 == size()) return hi;
  return lo + static_cast<double>(j) * spacing();
}

double Grid::slack() const noexcept {
  return 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
}

std::size_t Grid::nearest_node(double x) const noexcept {
  const double t = std::round((x - lo) / spacing());
  if (t <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(t), size() - 1);
}

GridFunction::GridFunction(Grid grid, std::vector<double> samples,
                           std::vector<std::vector<double>> derivatives)
    : grid_(grid), samples_(std::move(samples)), derivatives_(std::move(derivatives)) {
  if (samples_.size() != grid_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "sample count does not match the grid");
  }
  if (derivatives_.size() > static_cast<std::size_t>(kMaxDerivativeOrder)) {
    throw Error(ErrorCode::kOrderTooHigh, "at most 4 derivative orders may be stored");
  }
  require_finite(samples_, "function samples");
  for (const auto& d : derivatives_) {
    if (d.size() != samples_.size()) {
      throw Error(ErrorCode::kInvalidArgument, "derivative sample count mismatch");
    }
    require_finite(d, "derivative samples");
  }
}

GridFunction GridFunction::sample(const Grid& grid, const ScalarFn& fn,
                                  std::span<const ScalarFn> derivatives) {
  const std::size_t n = grid.size();
  std::vector<double> values(n);
  for (std::size_t j = 0; j < n; ++j) values[j] = fn(grid.node(j));
  std::vector<std::vector<double>> stack;
  stack.reserve(derivatives.size());
  for (const auto& d : derivatives) {
    std::vector<double> dv(n);
    for (std::size_t j = 0; j < n; ++j) dv[j] = d(grid.node(j));
    stack.push_back(std::move(dv));
  }
  return GridFunction(grid, std::move(values), std::move(stack));
}

GridFunction GridFunction::constant(const Grid& grid, double value) {
  std::vector<std::vector<double>> zeros(kMaxDerivativeOrder,
                                         std::vector<double>(grid.size(), 0.0));
  return GridFunction(grid, std::vector<double>(grid.size(), value), std::move(zeros));
}

std::span<const double> GridFunction::derivative_samples(int order) const {
  if (order < 1 || order > derivative_depth()) {
    throw Error(ErrorCode::kInvalidArgument, "derivative order not stored");
  }
  return derivatives_[static_cast<std::size_t>(order - 1)];
}

double GridFunction::eval(double x) const {
  if (x < grid_.lo - grid_.slack() || x > grid_.hi + grid_.slack() || std::isnan(x)) {
    throw Error(ErrorCode::kOutOfDomain,
                "x = " + format_double(x) + " outside [" + format_double(grid_.lo) + ", " +
                    format_double(grid_.hi) + "]");
  }
  return eval_clamped(x);
}

double GridFunction::eval_clamped(double x) const noexcept {
  const std::size_t last = samples_.size() - 1;
  const double t = (x - grid_.lo) / grid_.spacing();
  if (!(t > 0.0)) return samples_.front();
  if (t >= static_cast<double>(last)) return samples_.back();
  const auto j = static_cast<std::size_t>(t);
  const double w = t - static_cast<double>(j);
  if (w == 0.0) return samples_[j];
  return samples_[j] + w * (samples_[j + 1] - samples_[j]);
}

GridFunction GridFunction::derivative(int order) const {
  if (order == 0) return value_only();
  if (order < 0 || order > kMaxDerivativeOrder) {
    throw Error(ErrorCode::kOrderTooHigh, "derivative order must lie in [0, 4]");
  }
  if (order <= derivative_depth()) {
    return GridFunction(grid_, derivatives_[static_cast<std::size_t>(order - 1)]);
  }
  const int stored = derivative_depth();
  GridFunction base = stored == 0 ? value_only()
                                  : GridFunction(grid_, derivatives_.back());
  return finite_difference(base, order - stored);
}

GridFunction GridFunction::value_only() const { return GridFunction(grid_, samples_); }

GridFunction GridFunction::operator-() const {
  GridFunction out = *this;
  out *= -1.0;
  return out;
}

void GridFunction::require_same_grid(const GridFunction& other) const {
  if (!(grid_ == other.grid_)) {
    throw Error(ErrorCode::kInvalidArgument, "grid functions live on different grids");
  }
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  require_same_grid(other);
  for (std::size_t j = 0; j < samples_.size(); ++j) samples_[j] += other.samples_[j];
  derivatives_.resize(std::min(derivatives_.size(), other.derivatives_.size()));
  for (std::size_t r = 0; r < derivatives_.size(); ++r) {
    for (std::size_t j = 0; j < samples_.size(); ++j) derivatives_[r][j] += other.derivatives_[r][j];
  }
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  require_same_grid(other);
  for (std::size_t j = 0; j < samples_.size(); ++j) samples_[j] -= other.samples_[j];
  derivatives_.resize(std::min(derivatives_.size(), other.derivatives_.size()));
  for (std::size_t r = 0; r < derivatives_.size(); ++r) {
    for (std::size_t j = 0; j < samples_.size(); ++j) derivatives_[r][j] -= other.derivatives_[r][j];
  }
  return *this;
}

GridFunction& GridFunction::operator*=(double c) {
  for (double& v : samples_) v *= c;
  for (auto& d : derivatives_) {
    for (double& v : d) v *= c;
  }
  return *this;
}

double sup_norm(const GridFunction& g) {
  double m = 0.0;
  for (double v : g.samples()) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> compose_affine_inverse(const GridFunction& g, const AffineMap& map,
                                           std::size_t first, std::size_t last) {
  if (first > last || last >= g.size()) {
    throw Error(ErrorCode::kOutOfRange, "node range outside the grid");
  }
  std::vector<double> out;
  out.reserve(last - first + 1);
  for (std::size_t j = first; j <= last; ++j) {
    out.push_back(g.eval_clamped(affine_inverse(map, g.grid().node(j))));
  }
  return out;
}

double quadrature_p_power(const GridFunction& g, double p) {
  if (!(p > 0.0)) throw Error(ErrorCode::kInvalidArgument, "p must be positive");
  const auto s = g.samples();
  const std::size_t n = s.size();
  auto power = [p](double v) { return p == 1.0 ? std::abs(v) : std::pow(std::abs(v), p); };
  double sum = 0.5 * (power(s[0]) + power(s[n - 1]));
  for (std::size_t j = 1; j + 1 < n; ++j) sum += power(s[j]);
  return sum * g.grid().spacing();
}

GridFunction finite_difference(const GridFunction& g, int order) {
  if (order < 1) throw Error(ErrorCode::kInvalidArgument, "difference order must be >= 1");
  if (order > kMaxDerivativeOrder ||
      g.size() < static_cast<std::size_t>(2 * order + 1)) {
    throw Error(ErrorCode::kOrderTooHigh, "finite-difference order too high for the grid");
  }
  // Second-order stencils: centred on 2w+1 nodes inside, one-sided on the
  // order+2 nodes nearest to each end.
  const auto v = g.samples();
  const std::size_t n = v.size();
  const auto w = static_cast<std::size_t>((order + 1) / 2);
  const auto width = static_cast<std::size_t>(order + 2);
  const double scale = std::pow(g.grid().spacing(), -order);

  std::vector<double> centre_x;
  for (std::size_t i = 0; i <= 2 * w; ++i) centre_x.push_back(static_cast<double>(i));
  const std::vector<double> centre = stencil_weights(static_cast<double>(w), centre_x, order);
  std::vector<double> side_x;
  for (std::size_t i = 0; i < width; ++i) side_x.push_back(static_cast<double>(i));

  std::vector<double> d(n, 0.0);
  for (std::size_t j = w; j + w < n; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i <= 2 * w; ++i) acc += centre[i] * v[j - w + i];
    d[j] = acc * scale;
  }
  for (std::size_t j = 0; j < w; ++j) {
    const std::vector<double> left = stencil_weights(static_cast<double>(j), side_x, order);
    double lo = 0.0;
    double hi = 0.0;
    for (std::size_t i = 0; i < width; ++i) {
      lo += left[i] * v[i];
      // Mirror image: reversing the abscissae flips the sign of odd orders.
      hi += left[i] * v[n - 1 - i];
    }
    d[j] = lo * scale;
    d[n - 1 - j] = (order % 2 == 0 ? hi : -hi) * scale;
  }
  return GridFunction(g.grid(), std::move(d));
}

std::vector<double> cell_slopes(const GridFunction& g) {
  const auto s = g.samples();
  const double inv_h = 1.0 / g.grid().spacing();
  std::vector<double> out(s.size() - 1);
  for (std::size_t j = 0; j + 1 < s.size(); ++j) out[j] = (s[j + 1] - s[j]) * inv_h;
  return out;
}

GridFunction cumulative_integral(const GridFunction& g, IntegrationRule rule) {
  const auto s = g.samples();
  const double h = g.grid().spacing();
  std::vector<double> out(s.size(), 0.0);
  for (std::size_t j = 0; j + 1 < s.size(); ++j) {
    const double cell =
        rule == IntegrationRule::kTrapezoid ? 0.5 * (s[j] + s[j + 1]) * h : s[j] * h;
    out[j + 1] = out[j] + cell;
  }
  return GridFunction(g.grid(), std::move(out));
}

GridFunction from_uniform_samples(const Grid& grid, std::span<const double> values) {
  if (values.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "at least two samples are required");
  }
  const double step = grid.length() / static_cast<double>(values.size() - 1);
  const std::size_t last = values.size() - 1;
  std::vector<double> out(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double t = (grid.node(j) - grid.lo) / step;
    if (!(t > 0.0)) {
      out[j] = values.front();
    } else if (t >= static_cast<double>(last)) {
      out[j] = values.back();
    } else {
      const auto k = static_cast<std::size_t>(t);
      const double w = t - static_cast<double>(k);
      out[j] = values[k] + w * (values[k + 1] - values[k]);
    }
  }
  return GridFunction(grid, std::move(out));
}

void write_csv(std::ostream& out, const GridFunction& g, int derivative_columns) {
  std::vector<GridFunction> derivs;
  for (int r = 1; r <= derivative_columns; ++r) derivs.push_back(g.derivative(r));
  out << "x,value";
  for (int r = 1; r <= derivative_columns; ++r) out << ",d" << r;
  out << '\n';
  for (std::size_t j = 0; j < g.size(); ++j) {
    out << format_double(g.grid().node(j)) << ',' << format_double(g[j]);
    for (const auto& d : derivs) out << ',' << format_double(d[j]);
    out << '\n';
  }
}

}  // namespace fracop
