#pragma once

#include <cstddef>
#include <string>

#include "fracop/grid_function.hpp"
#include "fracop/partition.hpp"
#include "fracop/scaling.hpp"
#include "fracop/space.hpp"

namespace fracop {

class IfsSpec;

inline constexpr std::size_t kDefaultHoelderSubsample = 1025;

// Norm (quasi-norm for Lp with p < 1) of g in `space`. Derivatives come from
// stored samples when present, finite differences otherwise.
//   bounded, Lp(inf)   max |g|
//   Lp(p)              (int |g|^p)^{1/p}, composite trapezoid
//   Ck(k)              max_{r<=k} ||g^{(r)}||_inf
//   Sobolev(k,p)       (sum_j ||D^j g||_p^p)^{1/p};  sum_j ||D^j g||_inf for p = inf
//   Hoelder(k,s)       sum_j ||g^{(j)}||_inf + [g^{(k)}]_s
double norm(const SpaceSpec& space, const GridFunction& g);

// Lower estimate of sup |g(x)-g(y)| / |x-y|^sigma: every pair of an evenly
// subsampled node set plus every pair of neighbouring nodes. The neighbour
// scan makes the estimate exact for sigma = 1 on the interpolant.
double hoelder_seminorm(const GridFunction& g, double sigma,
                        std::size_t subsample = kDefaultHoelderSubsample);

struct ContractionReport {
  SpaceSpec space;
  // Closed-form bound on the Lipschitz constant of the RB operator in `space`.
  double factor{0.0};
  std::string condition;
  bool satisfied{false};

  // Ck only: the literal per-interval hypothesis ||alpha_i||_{C^k} <= (a_i/2)^k.
  bool has_hypothesis{false};
  bool hypothesis_satisfied{true};
  std::string hypothesis;

  // The iteration itself only needs factor < 1.
  bool contractive() const noexcept { return factor < 1.0; }
};

// Throws kIncompatibleScalingKind for Sobolev/Hoelder spaces with sampled
// scaling functions.
ContractionReport contraction_factor(const Partition& partition, const ScalingProfile& scaling,
                                     const SpaceSpec& space);
ContractionReport contraction_factor(const IfsSpec& spec);

}  // namespace fracop
