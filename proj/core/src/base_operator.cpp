#include "fracop/base_operator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "fracop/error.hpp"

namespace fracop {

namespace {

GridFunction endpoint_line_of(const GridFunction& f) {
  const Grid& grid = f.grid();
  const double left = f[0];
  const double right = f[f.size() - 1];
  const double slope = (right - left) / grid.length();
  std::vector<double> values(f.size());
  for (std::size_t j = 0; j < values.size(); ++j) {
    values[j] = left + slope * (grid.node(j) - grid.lo);
  }
  values.back() = right;
  std::vector<std::vector<double>> stack;
  for (int r = 1; r <= f.derivative_depth(); ++r) {
    stack.emplace_back(f.size(), r == 1 ? slope : 0.0);
  }
  return GridFunction(grid, std::move(values), std::move(stack));
}

}  // namespace

LinearBaseOperator LinearBaseOperator::endpoint_line() { return LinearBaseOperator(); }

LinearBaseOperator LinearBaseOperator::blend(double lambda) {
  if (!std::isfinite(lambda)) throw Error(ErrorCode::kInvalidArgument, "blend weight must be finite");
  LinearBaseOperator op;
  op.kind_ = Kind::kScaledIdentityBlend;
  op.lambda_ = lambda;
  return op;
}

LinearBaseOperator LinearBaseOperator::table(std::vector<double> nodes) {
  if (nodes.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "a base table needs at least two nodes");
  }
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (!(nodes[i] > nodes[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument, "base table nodes must be strictly increasing");
    }
  }
  LinearBaseOperator op;
  op.kind_ = Kind::kUserTable;
  op.nodes_ = std::move(nodes);
  return op;
}

LinearBaseOperator LinearBaseOperator::with_bounds(std::optional<double> norm,
                                                   std::optional<double> deviation) const {
  LinearBaseOperator op = *this;
  if (norm) {
    if (!(*norm >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "norm bound must be >= 0");
    op.norm_override_ = norm;
  }
  if (deviation) {
    if (!(*deviation >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "deviation bound must be >= 0");
    op.deviation_override_ = deviation;
  }
  return op;
}

std::string LinearBaseOperator::name() const {
  switch (kind_) {
    case Kind::kEndpointLine: return "endpoint_line";
    case Kind::kScaledIdentityBlend: return "blend";
    case Kind::kUserTable: return "table";
  }
  return "?";
}

GridFunction LinearBaseOperator::apply(const GridFunction& f) const {
  switch (kind_) {
    case Kind::kEndpointLine: return endpoint_line_of(f);
    case Kind::kScaledIdentityBlend: {
      GridFunction b = lambda_ * f + (1.0 - lambda_) * endpoint_line_of(f);
      std::vector<double> v(b.samples().begin(), b.samples().end());
      v.front() = f[0];
      v.back() = f[f.size() - 1];
      std::vector<std::vector<double>> stack;
      for (int r = 1; r <= b.derivative_depth(); ++r) {
        const auto d = b.derivative_samples(r);
        stack.emplace_back(d.begin(), d.end());
      }
      return GridFunction(f.grid(), std::move(v), std::move(stack));
    }
    case Kind::kUserTable: break;
  }
  const Grid& grid = f.grid();
  const double tol = grid.slack();
  if (std::abs(nodes_.front() - grid.lo) > tol || std::abs(nodes_.back() - grid.hi) > tol) {
    throw Error(ErrorCode::kInvalidArgument, "base table must start and end at the ends of I");
  }
  std::vector<double> at_nodes(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) at_nodes[i] = f.eval_clamped(nodes_[i]);
  at_nodes.front() = f[0];
  at_nodes.back() = f[f.size() - 1];
  std::vector<double> values(f.size());
  std::size_t cell = 0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double x = grid.node(j);
    while (cell + 2 < nodes_.size() && x >= nodes_[cell + 1]) ++cell;
    const double w = (x - nodes_[cell]) / (nodes_[cell + 1] - nodes_[cell]);
    values[j] = at_nodes[cell] + std::clamp(w, 0.0, 1.0) * (at_nodes[cell + 1] - at_nodes[cell]);
  }
  return GridFunction(grid, std::move(values));
}

double LinearBaseOperator::line_norm(const SpaceSpec& space, double cell_length,
                                     bool single_cell) const {
  if (space.as<BoundedSpace>()) return 1.0;
  if (const auto* s = space.as<LpSpace>()) return std::isinf(s->p) ? 1.0 : kInfinity;
  if (const auto* s = space.as<CkSpace>()) return (s->k == 0 || single_cell) ? 1.0 : kInfinity;
  if (const auto* s = space.as<HoelderSpace>()) {
    if (single_cell) return 1.0;
    return s->k == 0 ? std::pow(3.0, 1.0 - s->sigma) : kInfinity;
  }
  const auto* s = space.as<SobolevSpace>();
  if (!single_cell && s->k >= 2) return kInfinity;
  if (std::isinf(s->p)) return 1.0;
  const double p = s->p;
  double c = 0.0;
  if (p == 1.0) {
    c = std::max(1.0, cell_length);
  } else {
    const double q = p / (p - 1.0);
    c = std::pow(1.0 + std::pow(cell_length, q), 1.0 / q);
  }
  return std::pow(std::pow(c, p) + 1.0, 1.0 / p);
}

double LinearBaseOperator::analytic_norm(const SpaceSpec& space, const Grid& grid) const {
  switch (kind_) {
    case Kind::kEndpointLine: return line_norm(space, grid.length(), true);
    case Kind::kScaledIdentityBlend: {
      if (lambda_ == 1.0) return 1.0;
      return std::abs(lambda_) + std::abs(1.0 - lambda_) * line_norm(space, grid.length(), true);
    }
    case Kind::kUserTable: {
      double widest = 0.0;
      for (std::size_t i = 1; i < nodes_.size(); ++i) widest = std::max(widest, nodes_[i] - nodes_[i - 1]);
      return line_norm(space, widest, nodes_.size() == 2);
    }
  }
  return kInfinity;
}

double LinearBaseOperator::norm_bound(const SpaceSpec& space, const Grid& grid) const {
  if (norm_override_) return *norm_override_;
  return analytic_norm(space, grid);
}

double LinearBaseOperator::deviation_bound(const SpaceSpec& space, const Grid& grid) const {
  if (deviation_override_) return *deviation_override_;
  if (kind_ == Kind::kScaledIdentityBlend) {
    if (lambda_ == 1.0) return 0.0;
    return std::abs(1.0 - lambda_) * (1.0 + line_norm(space, grid.length(), true));
  }
  return 1.0 + norm_bound(space, grid);
}

}  // namespace fracop
