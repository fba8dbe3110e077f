#include "fracop/rb_engine.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "fracop/error.hpp"

namespace fracop {

namespace {

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

void require_contractive(const ContractionReport& c) {
  if (!c.contractive()) {
    throw Error(ErrorCode::kNotContractive,
                "contraction factor " + std::to_string(c.factor) + " >= 1 (" + c.condition + ")");
  }
}

}  // namespace

RbPlan RbPlan::build(const Partition& partition, const ScalingProfile& scaling, const Grid& grid) {
  if (scaling.size() != partition.interval_count()) {
    throw Error(ErrorCode::kSpecInvalid, "scaling count does not match the partition");
  }
  RbPlan plan;
  plan.grid_ = grid;
  const std::size_t m = grid.size();
  const double last = static_cast<double>(m - 1);

  for (double x : partition.knots()) {
    const std::size_t j = grid.nearest_node(x);
    plan.knot_snap_error_ = std::max(plan.knot_snap_error_, std::abs(grid.node(j) - x));
    if (!plan.knot_nodes_.empty() && j <= plan.knot_nodes_.back()) {
      throw Error(ErrorCode::kSpecInvalid,
                  "two knots snap to the same grid node; raise the grid level");
    }
    plan.knot_nodes_.push_back(j);
  }
  for (std::size_t i = 0; i + 1 < plan.knot_nodes_.size(); ++i) {
    plan.ratio_.push_back(static_cast<double>(plan.knot_nodes_[i + 1] - plan.knot_nodes_[i]) / last);
  }

  plan.interval_.resize(m);
  plan.preimage_.resize(m);
  plan.left_.resize(m);
  plan.weight_.resize(m);
  plan.alpha_.resize(m);
  std::size_t i = 0;
  const std::size_t n_intervals = plan.ratio_.size();
  for (std::size_t j = 0; j < m; ++j) {
    while (i + 1 < n_intervals && j >= plan.knot_nodes_[i + 1]) ++i;
    const double t = static_cast<double>(j - plan.knot_nodes_[i]) /
                     static_cast<double>(plan.knot_nodes_[i + 1] - plan.knot_nodes_[i]);
    const double pos = t * last;
    std::size_t left = static_cast<std::size_t>(std::floor(pos));
    if (left >= m - 1) left = m - 1;
    double w = pos - static_cast<double>(left);
    if (left == m - 1) w = 0.0;
    plan.interval_[j] = i;
    plan.left_[j] = left;
    plan.weight_[j] = w;
    plan.preimage_[j] = (left == m - 1) ? grid.hi : grid.lo + pos * grid.spacing();
    plan.alpha_[j] = scaling.value_at(i, plan.preimage_[j]);
  }
  return plan;
}

double RbPlan::pull(std::span<const double> values, std::size_t j) const noexcept {
  const std::size_t l = left_[j];
  const double w = weight_[j];
  if (w == 0.0) return values[l];
  return (1.0 - w) * values[l] + w * values[l + 1];
}

GridFunction RbPlan::apply(const GridFunction& f, const GridFunction& b,
                           const GridFunction& g) const {
  if (!(f.grid() == grid_) || !(b.grid() == grid_) || !(g.grid() == grid_)) {
    throw Error(ErrorCode::kSpecInvalid, "RB operator applied to a function on another grid");
  }
  const std::size_t m = size();
  std::vector<double> diff(m);
  for (std::size_t j = 0; j < m; ++j) diff[j] = g[j] - b[j];
  std::vector<double> out(m);
  for (std::size_t j = 0; j < m; ++j) out[j] = f[j] + alpha_[j] * pull(diff, j);
  return GridFunction(grid_, std::move(out));
}

GridFunction apply_rb(const IfsSpec& spec, const GridFunction& g) {
  const RbPlan plan = RbPlan::build(spec.partition(), spec.scaling(), spec.grid());
  return plan.apply(spec.seed(), spec.base(), g);
}

FixedPointResult iterate_fixed_point(const RbPlan& plan, const GridFunction& f,
                                     const GridFunction& b, const FixedPointOptions& options,
                                     const SpaceSpec& monitor, ContractionReport contraction) {
  if (!(options.tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tol must be positive");
  // Ratios are only meaningful while the residual is well above round-off.
  constexpr double kRatioFloor = 1e-9;

  FixedPointResult result;
  result.contraction = std::move(contraction);
  GridFunction g = options.initial ? options.initial->value_only() : f.value_only();
  double prev_sup = 0.0;
  double prev_mon = 0.0;
  for (std::size_t n = 1; n <= options.max_iter; ++n) {
    GridFunction next = plan.apply(f, b, g);
    const GridFunction step = next - g;
    const double sup = sup_norm(step);
    const double mon = (monitor == SpaceSpec::bounded()) ? sup : norm(monitor, step);
    result.residuals.push_back(sup);
    result.monitored_residuals.push_back(mon);
    if (n >= 2 && prev_sup > kRatioFloor && prev_mon > 0.0) {
      result.contraction_estimate = std::max(result.contraction_estimate, mon / prev_mon);
    }
    prev_sup = sup;
    prev_mon = mon;
    g = std::move(next);
    if (sup <= options.tol) {
      result.falpha = std::move(g);
      result.iterations = n;
      result.final_residual = sup;
      return result;
    }
  }
  throw Error(ErrorCode::kMaxIterExceeded,
              "no convergence after " + std::to_string(options.max_iter) +
                  " iterations (residual " + std::to_string(prev_sup) + ")");
}

FixedPointResult fixed_point(const IfsSpec& spec, const FixedPointOptions& options) {
  ContractionReport c = contraction_factor(spec);
  require_contractive(c);
  const RbPlan plan = RbPlan::build(spec.partition(), spec.scaling(), spec.grid());
  return iterate_fixed_point(plan, spec.seed(), spec.base(), options,
                             options.monitor.value_or(spec.space()), std::move(c));
}

FixedPointResult fixed_point(const IfsSpec& spec, double tol, std::size_t max_iter) {
  FixedPointOptions options;
  options.tol = tol;
  options.max_iter = max_iter;
  return fixed_point(spec, options);
}

double self_ref_residual(const IfsSpec& spec, const GridFunction& candidate) {
  return sup_norm(candidate.value_only() - apply_rb(spec, candidate));
}

GridFunction derivative_recursion(const IfsSpec& spec, const GridFunction& falpha, int order,
                                  double tol, std::size_t max_iter) {
  if (order < 0) throw Error(ErrorCode::kInvalidArgument, "negative derivative order");
  if (order == 0) return falpha.value_only();
  const auto* ck = spec.space().as<CkSpace>();
  if (ck == nullptr || ck->k < order) {
    throw Error(ErrorCode::kHypothesisViolated,
                "derivative recursion of order " + std::to_string(order) +
                    " needs a Ck space with k >= order, got " + spec.space().to_string());
  }
  const ValidationReport report = validate_spec(spec);
  for (const auto& check : report.checks) {
    const bool relevant = check.name == "endpoint_match" || check.name == "ck_hypothesis" ||
                          check.name.rfind("derivative_match_", 0) == 0;
    if (relevant && !check.passed) {
      throw Error(ErrorCode::kHypothesisViolated, "hypothesis '" + check.name +
                                                      "' fails: " + check.detail);
    }
  }

  const Grid& grid = spec.grid();
  const RbPlan plan = RbPlan::build(spec.partition(), spec.scaling(), grid);
  const std::size_t m = plan.size();
  const std::size_t n_int = plan.interval_count();
  const ScalingProfile& scaling = spec.scaling();

  // alpha_i^{(q)} at the preimage of each node, q = 1..order.
  std::vector<std::vector<double>> alpha_d(static_cast<std::size_t>(order) + 1);
  for (int q = 1; q <= order; ++q) {
    std::vector<GridFunction> per_interval;
    for (std::size_t i = 0; i < n_int; ++i) per_interval.push_back(scaling.derivative(i, q, grid));
    auto& col = alpha_d[static_cast<std::size_t>(q)];
    col.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
      col[j] = per_interval[plan.interval(j)].eval_clamped(plan.preimage(j));
    }
  }

  std::vector<GridFunction> fa{falpha.value_only()};
  for (int r = 1; r <= order; ++r) {
    const GridFunction fr = spec.seed().derivative(r);
    const GridFunction br = spec.base().derivative(r);
    // Known part: f^{(r)} + a^{-r} sum_{j<r} C(r,j) alpha^{(r-j)} (F_j - B_j)(y).
    std::vector<double> known(fr.samples().begin(), fr.samples().end());
    for (int j = 0; j < r; ++j) {
      const GridFunction diff = fa[static_cast<std::size_t>(j)] - spec.base().derivative(j).value_only();
      const double c = binomial(r, j);
      const auto& ad = alpha_d[static_cast<std::size_t>(r - j)];
      for (std::size_t n = 0; n < m; ++n) {
        const double scale = std::pow(plan.ratio(plan.interval(n)), -r);
        known[n] += scale * c * ad[n] * plan.pull(diff.samples(), n);
      }
    }
    // u = known + a^{-r} alpha (u - b^{(r)})(y), iterated from u = f^{(r)}.
    std::vector<double> u(fr.samples().begin(), fr.samples().end());
    std::vector<double> diff(m);
    bool converged = false;
    for (std::size_t it = 0; it < max_iter && !converged; ++it) {
      for (std::size_t n = 0; n < m; ++n) diff[n] = u[n] - br[n];
      double step = 0.0;
      std::vector<double> next(m);
      for (std::size_t n = 0; n < m; ++n) {
        const double scale = std::pow(plan.ratio(plan.interval(n)), -r);
        next[n] = known[n] + scale * plan.alpha(n) * plan.pull(diff, n);
        step = std::max(step, std::abs(next[n] - u[n]));
      }
      u.swap(next);
      converged = step <= tol * std::max(1.0, sup_norm(fr));
    }
    if (!converged) {
      throw Error(ErrorCode::kMaxIterExceeded,
                  "derivative recursion of order " + std::to_string(r) + " did not converge");
    }
    fa.emplace_back(grid, std::move(u));
  }
  return fa.back();
}

std::vector<Point> chaos_game(const IfsSpec& spec, std::size_t n_points, std::uint64_t seed,
                              std::size_t burn_in) {
  require_contractive(contraction_factor(spec));
  std::vector<Point> cloud;
  if (n_points == 0) return cloud;
  cloud.reserve(n_points);

  const Partition& partition = spec.partition();
  const ScalingProfile& scaling = spec.scaling();
  const GridFunction& f = spec.seed();
  const GridFunction& b = spec.base();
  const std::size_t n_maps = partition.interval_count();
  std::mt19937_64 rng(seed);

  Point p{partition.lo(), f[0]};
  for (std::size_t step = 0; step < burn_in + n_points; ++step) {
    const std::size_t i = static_cast<std::size_t>(rng() % n_maps);
    const double a = scaling.value_at(i, p.x);
    const double x_new = std::clamp(partition.map(i)(p.x), partition.lo(), partition.hi());
    p = Point{x_new, a * p.y + f.eval_clamped(x_new) - a * b.eval_clamped(p.x)};
    if (step >= burn_in) cloud.push_back(p);
  }
  return cloud;
}

}  // namespace fracop
