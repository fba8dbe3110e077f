#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fracop/grid_function.hpp"
#include "fracop/ifs_spec.hpp"
#include "fracop/norms.hpp"

namespace fracop {

// Precomputed node geometry of the RB operator on one grid. Knots are snapped
// to their nearest nodes; node j then belongs to subinterval i when
// knot_node(i) <= j < knot_node(i+1) (the last subinterval is closed), and its
// preimage L_i^{-1}(x_j) is located through the snapped indices, so knots map
// exactly onto the ends of I.
class RbPlan {
 public:
  static RbPlan build(const Partition& partition, const ScalingProfile& scaling, const Grid& grid);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return interval_.size(); }
  std::size_t interval_count() const noexcept { return knot_nodes_.size() - 1; }
  std::size_t interval(std::size_t j) const noexcept { return interval_[j]; }
  std::size_t knot_node(std::size_t i) const noexcept { return knot_nodes_[i]; }
  // Preimage abscissa of node j.
  double preimage(std::size_t j) const noexcept { return preimage_[j]; }
  // alpha_i evaluated at the preimage of node j.
  double alpha(std::size_t j) const noexcept { return alpha_[j]; }
  // Ratio a_i of the snapped subinterval.
  double ratio(std::size_t i) const noexcept { return ratio_[i]; }
  double knot_snap_error() const noexcept { return knot_snap_error_; }

  // values(L_i^{-1}(x_j)) by linear interpolation between grid nodes.
  double pull(std::span<const double> values, std::size_t j) const noexcept;

  // (Tg)(x_j) = f(x_j) + alpha_i(y_j) (g - b)(y_j) with y_j = L_i^{-1}(x_j).
  GridFunction apply(const GridFunction& f, const GridFunction& b, const GridFunction& g) const;

 private:
  Grid grid_{};
  std::vector<std::size_t> knot_nodes_;
  std::vector<double> ratio_;
  std::vector<std::size_t> interval_;
  std::vector<double> preimage_;
  std::vector<std::size_t> left_;
  std::vector<double> weight_;
  std::vector<double> alpha_;
  double knot_snap_error_{0.0};
};

GridFunction apply_rb(const IfsSpec& spec, const GridFunction& g);

inline constexpr double kDefaultFixedPointTol = 1e-12;
inline constexpr std::size_t kDefaultMaxIter = 200;

struct FixedPointOptions {
  double tol{kDefaultFixedPointTol};
  std::size_t max_iter{kDefaultMaxIter};
  // g_0; the seed f when empty.
  std::optional<GridFunction> initial;
  // Norm used for the observed contraction ratios; the spec's space when empty.
  std::optional<SpaceSpec> monitor;
};

struct FixedPointResult {
  GridFunction falpha;
  std::size_t iterations{0};
  // ||g_n - g_{n-1}||_inf at the last step.
  double final_residual{0.0};
  // Largest observed ratio of successive residuals in the monitored norm.
  double contraction_estimate{0.0};
  std::vector<double> residuals;            // sup norm, one per iteration
  std::vector<double> monitored_residuals;  // monitored norm, one per iteration
  ContractionReport contraction;
};

// Iterates the RB operator of `plan` with seed f and base b. The caller is
// responsible for the contraction check; `contraction` is copied into the
// result. Throws kMaxIterExceeded.
FixedPointResult iterate_fixed_point(const RbPlan& plan, const GridFunction& f,
                                     const GridFunction& b, const FixedPointOptions& options,
                                     const SpaceSpec& monitor, ContractionReport contraction);

// Throws kNotContractive when the spec's contraction factor is >= 1, and
// kMaxIterExceeded when the residual does not reach tol.
FixedPointResult fixed_point(const IfsSpec& spec, const FixedPointOptions& options = {});
FixedPointResult fixed_point(const IfsSpec& spec, double tol, std::size_t max_iter);

// max_j |c(x_j) - (Tc)(x_j)|.
double self_ref_residual(const IfsSpec& spec, const GridFunction& candidate);

// r-th derivative of f^alpha, solved order by order: the order-r equation
//   u = f^{(r)} + a_i^{-r} [ sum_{j<r} C(r,j) alpha_i^{(r-j)} ((f^alpha)^{(j)} - b^{(j)})
//                            + alpha_i (u - b^{(r)}) ] o L_i^{-1}
// is again of RB type in u. Requires a Ck(k) space with r <= k, the C^k bound
// on the scaling and endpoint agreement of b and f up to order k; throws
// kHypothesisViolated otherwise.
GridFunction derivative_recursion(const IfsSpec& spec, const GridFunction& falpha, int order,
                                  double tol = kDefaultFixedPointTol,
                                  std::size_t max_iter = kDefaultMaxIter);

struct Point {
  double x{0.0};
  double y{0.0};
};

inline constexpr std::size_t kChaosBurnIn = 100;

// Random-iteration orbit of w_i(x, y) = (L_i x, alpha_i(x) y + f(L_i x) - alpha_i(x) b(x))
// with uniformly chosen maps, started at (x_1, f(x_1)). Throws kNotContractive.
std::vector<Point> chaos_game(const IfsSpec& spec, std::size_t n_points, std::uint64_t seed,
                              std::size_t burn_in = kChaosBurnIn);

}  // namespace fracop
