#include "fracop/fractal_operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracop/error.hpp"
#include "fracop/norms.hpp"
#include "fracop/random_functions.hpp"

namespace fracop {

namespace {

PerturbationBranch make_branch(std::string name, const SpaceSpec& space, double K,
                               double deviation, const GridFunction& f,
                               const GridFunction& falpha, const GridFunction& b, double slack) {
  PerturbationBranch br;
  br.norm = std::move(name);
  br.K = K;
  br.lhs = norm(space, falpha - f);
  br.falpha_minus_base = norm(space, falpha - b);
  br.f_minus_base = norm(space, f - b);
  br.f_norm = norm(space, f);
  br.deviation_norm = deviation;
  br.bound_prop = K * br.falpha_minus_base;
  if (K < 1.0) {
    const double q = K / (1.0 - K);
    br.bound_thm_direct = q * br.f_minus_base;
    // 0 * inf when K = 0 or f = 0: the bound is 0 there.
    br.bound_thm = (q == 0.0 || br.f_norm == 0.0) ? 0.0 : q * deviation * br.f_norm;
  } else {
    br.bound_thm_direct = kInfinity;
    br.bound_thm = kInfinity;
  }
  br.prop_satisfied = br.lhs <= br.bound_prop + slack;
  br.thm_direct_satisfied = br.lhs <= br.bound_thm_direct + slack;
  br.thm_satisfied = br.lhs <= br.bound_thm + slack;
  return br;
}

template <class Measure>
double sample_max(const FractalOperator& op, std::size_t trials, std::uint64_t seed,
                  Measure measure) {
  const FractalTemplate& t = op.tmpl();
  RandomFunctionSource source(seed, t.grid.lo, t.grid.hi);
  const int match = admissible_match_order(t);
  double best = 0.0;
  for (std::size_t n = 0; n < trials; ++n) {
    GridFunction f = source.sample(t.grid, match);
    const double size = norm(t.space, f);
    if (!(size > 0.0) || !std::isfinite(size)) continue;
    f *= 1.0 / size;
    best = std::max(best, measure(f));
  }
  return best;
}

}  // namespace

FractalOperator::FractalOperator(FractalTemplate tmpl, FixedPointOptions options)
    : tmpl_(std::move(tmpl)), options_(std::move(options)) {
  if (std::abs(tmpl_.grid.lo - tmpl_.partition.lo()) > tmpl_.grid.slack() ||
      std::abs(tmpl_.grid.hi - tmpl_.partition.hi()) > tmpl_.grid.slack()) {
    throw Error(ErrorCode::kSpecInvalid, "grid domain must equal [x_1, x_N]");
  }
  contraction_ = contraction_factor(tmpl_.partition, tmpl_.scaling, tmpl_.space);
  if (!contraction_.contractive()) {
    throw Error(ErrorCode::kNotContractive, "contraction factor " +
                                                std::to_string(contraction_.factor) + " >= 1 (" +
                                                contraction_.condition + ")");
  }
  plan_ = RbPlan::build(tmpl_.partition, tmpl_.scaling, tmpl_.grid);
  options_.initial.reset();
}

FixedPointResult FractalOperator::solve(const GridFunction& f) const {
  const GridFunction b = tmpl_.base.apply(f);
  return iterate_fixed_point(plan_, f, b, options_, options_.monitor.value_or(tmpl_.space),
                             contraction_);
}

GridFunction FractalOperator::apply(const GridFunction& f) const {
  const double size = sup_norm(f);
  if (size == 0.0) return f.value_only();
  // Relative stop rule: keeps F linear to working precision at every scale.
  FixedPointOptions quiet = options_;
  quiet.tol = options_.tol * size;
  quiet.monitor = SpaceSpec::bounded();
  const GridFunction b = tmpl_.base.apply(f);
  return iterate_fixed_point(plan_, f, b, quiet, SpaceSpec::bounded(), contraction_).falpha;
}

double FractalOperator::K_sup() const noexcept { return tmpl_.scaling.max_sup_magnitude(); }

double FractalOperator::base_norm() const { return tmpl_.base.norm_bound(tmpl_.space, tmpl_.grid); }

double FractalOperator::deviation_norm() const {
  return tmpl_.base.deviation_bound(tmpl_.space, tmpl_.grid);
}

GridFunction falpha_operator(const FractalTemplate& tmpl, const GridFunction& f) {
  return FractalOperator(tmpl).apply(f);
}

PerturbationReport perturbation_bounds(const FractalOperator& op, const GridFunction& f,
                                       double slack) {
  const FractalTemplate& t = op.tmpl();
  const GridFunction falpha = op.apply(f);
  const GridFunction b = t.base.apply(f).value_only();
  const GridFunction fv = f.value_only();
  PerturbationReport report;
  report.space = make_branch(t.space.to_string(), t.space, op.K(), op.deviation_norm(), fv, falpha,
                             b, slack);
  report.sup = make_branch("sup", SpaceSpec::bounded(), op.K_sup(),
                           t.base.deviation_bound(SpaceSpec::bounded(), t.grid), fv, falpha, b,
                           slack);
  return report;
}

PerturbationReport perturbation_bounds(const FractalTemplate& tmpl, const GridFunction& f,
                                       double slack) {
  return perturbation_bounds(FractalOperator(tmpl), f, slack);
}

double deviation_upper_bound(const FractalOperator& op) {
  const double K = op.K();
  if (K == 0.0) return 0.0;
  return K / (1.0 - K) * op.deviation_norm();
}

double operator_norm_upper_bound(const FractalOperator& op) {
  return 1.0 + deviation_upper_bound(op);
}

double bounded_below_constant(const FractalOperator& op) {
  const double K = op.K();
  const double kl = (K == 0.0) ? 0.0 : K * op.base_norm();
  return (1.0 - kl) / (1.0 + K);
}

int admissible_match_order(const FractalTemplate& tmpl) {
  return tmpl.space.endpoint_match_order();
}

double operator_norm_lower_bound(const FractalOperator& op, std::size_t trials,
                                 std::uint64_t seed) {
  const SpaceSpec& space = op.tmpl().space;
  return sample_max(op, trials, seed,
                    [&](const GridFunction& f) { return norm(space, op.apply(f)); });
}

double operator_norm_lower_bound(const FractalTemplate& tmpl, std::size_t trials,
                                 std::uint64_t seed) {
  return operator_norm_lower_bound(FractalOperator(tmpl), trials, seed);
}

double deviation_lower_bound(const FractalOperator& op, std::size_t trials, std::uint64_t seed) {
  const SpaceSpec& space = op.tmpl().space;
  return sample_max(op, trials, seed,
                    [&](const GridFunction& f) { return norm(space, f - op.apply(f)); });
}

double neumann_rate(const FractalOperator& op) {
  const double K = op.K();
  if (K == 0.0) return 0.0;
  return K * (1.0 + op.deviation_norm());
}

NeumannResult neumann_inverse(const FractalOperator& op, const GridFunction& g, double tol,
                              std::size_t max_terms) {
  const double rate = neumann_rate(op);
  if (!(rate < 1.0)) {
    throw Error(ErrorCode::kHypothesisViolated,
                "Neumann series needs K (1 + ||I - L||) < 1, got " + std::to_string(rate));
  }
  if (!(tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tol must be positive");
  const SpaceSpec& space = op.tmpl().space;
  NeumannResult result;
  GridFunction term = g.value_only();
  GridFunction sum = term;
  std::size_t terms = 1;
  double term_norm = norm(space, term);
  while (term_norm > tol) {
    term = term - op.apply(term);
    term_norm = norm(space, term);
    if (term_norm <= tol) break;
    if (terms >= max_terms) {
      throw Error(ErrorCode::kMaxTermsExceeded,
                  "Neumann series not converged after " + std::to_string(max_terms) +
                      " terms (last term norm " + std::to_string(term_norm) + ")");
    }
    sum += term;
    ++terms;
  }
  result.inverse = std::move(sum);
  result.terms = terms;
  result.last_term_norm = term_norm;
  return result;
}

NeumannResult neumann_inverse(const FractalTemplate& tmpl, const GridFunction& g, double tol,
                              std::size_t max_terms) {
  return neumann_inverse(FractalOperator(tmpl), g, tol, max_terms);
}

}  // namespace fracop
