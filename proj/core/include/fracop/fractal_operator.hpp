#pragma once

#include <cstddef>
#include <cstdint>

#include "fracop/base_operator.hpp"
#include "fracop/rb_engine.hpp"

namespace fracop {

// Everything F^alpha needs except the function it acts on.
struct FractalTemplate {
  Partition partition;
  ScalingProfile scaling;
  LinearBaseOperator base;
  SpaceSpec space;
  Grid grid;
};

// f -> f^alpha with base b = Lf. Linear in f.
class FractalOperator {
 public:
  // Throws kNotContractive (or kIncompatibleScalingKind from the factor).
  explicit FractalOperator(FractalTemplate tmpl, FixedPointOptions options = {});

  // Fixed-point tolerance is taken relative to ||f||_inf.
  GridFunction apply(const GridFunction& f) const;
  // Full iteration record with the absolute tolerance and the monitored norm.
  FixedPointResult solve(const GridFunction& f) const;

  const FractalTemplate& tmpl() const noexcept { return tmpl_; }
  const RbPlan& plan() const noexcept { return plan_; }
  const ContractionReport& contraction() const noexcept { return contraction_; }

  // Contraction factor in the template space.
  double K() const noexcept { return contraction_.factor; }
  // The same factor in the sup norm, max_i ||alpha_i||_inf.
  double K_sup() const noexcept;
  // Bounds for ||L|| and ||I - L|| in the template space.
  double base_norm() const;
  double deviation_norm() const;

 private:
  FractalTemplate tmpl_;
  FixedPointOptions options_;
  RbPlan plan_;
  ContractionReport contraction_;
};

GridFunction falpha_operator(const FractalTemplate& tmpl, const GridFunction& f);

// One norm's worth of the perturbation estimates
//   lhs = ||f^a - f||
//   bound_prop       = K ||f^a - b||
//   bound_thm_direct = K/(1-K) ||f - Lf||
//   bound_thm        = K/(1-K) ||I - L|| ||f||
struct PerturbationBranch {
  std::string norm;
  double K{0.0};
  double lhs{0.0};
  double falpha_minus_base{0.0};
  double f_minus_base{0.0};
  double f_norm{0.0};
  double deviation_norm{0.0};
  double bound_prop{0.0};
  double bound_thm_direct{0.0};
  double bound_thm{0.0};
  bool prop_satisfied{false};
  bool thm_direct_satisfied{false};
  bool thm_satisfied{false};

  bool satisfied() const noexcept {
    return prop_satisfied && thm_direct_satisfied && thm_satisfied;
  }
};

struct PerturbationReport {
  PerturbationBranch space;  // template space norm
  PerturbationBranch sup;    // sup norm with K = max |alpha_i|
  bool satisfied() const noexcept { return space.satisfied() && sup.satisfied(); }
};

// `slack` is the additive tolerance used for the satisfied flags.
PerturbationReport perturbation_bounds(const FractalOperator& op, const GridFunction& f,
                                       double slack = 1e-9);
PerturbationReport perturbation_bounds(const FractalTemplate& tmpl, const GridFunction& f,
                                       double slack = 1e-9);

// 1 + K/(1-K) ||I - L||.
double operator_norm_upper_bound(const FractalOperator& op);
// K/(1-K) ||I - L||.
double deviation_upper_bound(const FractalOperator& op);
// (1 - K ||L||)/(1 + K); may be <= 0, in which case the bound is empty.
double bounded_below_constant(const FractalOperator& op);

// Endpoint-derivative order random test functions must respect so that F^alpha
// maps them into the template space.
int admissible_match_order(const FractalTemplate& tmpl);

// max ||F^a f|| over `trials` random f normalised to ||f|| = 1; 0 for no trials.
double operator_norm_lower_bound(const FractalOperator& op, std::size_t trials, std::uint64_t seed);
double operator_norm_lower_bound(const FractalTemplate& tmpl, std::size_t trials,
                                 std::uint64_t seed);
// max ||f - F^a f|| over the same kind of sample.
double deviation_lower_bound(const FractalOperator& op, std::size_t trials, std::uint64_t seed);

inline constexpr std::size_t kDefaultMaxTerms = 500;

struct NeumannResult {
  GridFunction inverse;
  std::size_t terms{0};
  double last_term_norm{0.0};
};

// h = sum_j (I - F^a)^j g; the first term with norm <= tol ends the sum and is
// not added (terms counts the summed terms). Requires
// K (1 + ||I - L||) < 1 (kHypothesisViolated); throws kMaxTermsExceeded.
NeumannResult neumann_inverse(const FractalOperator& op, const GridFunction& g,
                              double tol = 1e-12, std::size_t max_terms = kDefaultMaxTerms);
NeumannResult neumann_inverse(const FractalTemplate& tmpl, const GridFunction& g,
                              double tol = 1e-12, std::size_t max_terms = kDefaultMaxTerms);

// K (1 + ||I - L||), the quantity the Neumann series needs below 1.
double neumann_rate(const FractalOperator& op);

}  // namespace fracop
