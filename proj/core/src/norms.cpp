#include "fracop/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "fracop/error.hpp"
#include "fracop/ifs_spec.hpp"

namespace fracop {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double lp_norm(const GridFunction& g, double p) {
  if (std::isinf(p)) return sup_norm(g);
  return std::pow(quadrature_p_power(g, p), 1.0 / p);
}

void check_order(int k) {
  if (k > kMaxDerivativeOrder) {
    throw Error(ErrorCode::kUnsupportedOrder, "derivative orders above 4 are not supported");
  }
}

}  // namespace

double norm(const SpaceSpec& space, const GridFunction& g) {
  if (space.as<BoundedSpace>()) return sup_norm(g);
  if (const auto* s = space.as<LpSpace>()) return lp_norm(g, s->p);
  if (const auto* s = space.as<CkSpace>()) {
    check_order(s->k);
    double m = sup_norm(g);
    for (int r = 1; r <= s->k; ++r) m = std::max(m, sup_norm(g.derivative(r)));
    return m;
  }
  if (const auto* s = space.as<SobolevSpace>()) {
    check_order(s->k);
    if (std::isinf(s->p)) {
      double total = sup_norm(g);
      for (int j = 1; j <= s->k; ++j) total += sup_norm(g.derivative(j));
      return total;
    }
    double total = quadrature_p_power(g, s->p);
    for (int j = 1; j <= s->k; ++j) total += quadrature_p_power(g.derivative(j), s->p);
    return std::pow(total, 1.0 / s->p);
  }
  const auto* s = space.as<HoelderSpace>();
  check_order(s->k);
  double total = sup_norm(g);
  for (int j = 1; j <= s->k; ++j) total += sup_norm(g.derivative(j));
  const GridFunction top = s->k == 0 ? g.value_only() : g.derivative(s->k);
  return total + hoelder_seminorm(top, s->sigma);
}

double hoelder_seminorm(const GridFunction& g, double sigma, std::size_t subsample) {
  if (!(sigma > 0.0 && sigma <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "Hoelder exponent must lie in (0, 1]");
  }
  const Grid& grid = g.grid();
  const std::size_t n = g.size();
  const double h = grid.spacing();
  double best = 0.0;

  const double h_pow = std::pow(h, sigma);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    best = std::max(best, std::abs(g[j + 1] - g[j]) / h_pow);
  }

  const std::size_t count = std::clamp<std::size_t>(subsample, 2, n);
  const std::size_t stride = std::max<std::size_t>(1, (n - 1) / (count - 1));
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < n; j += stride) idx.push_back(j);
  if (idx.back() != n - 1) idx.push_back(n - 1);
  // Powers of the index distance, shared across pairs.
  std::vector<double> inv_dist(idx.size());
  const double step = static_cast<double>(stride) * h;
  for (std::size_t d = 1; d < idx.size(); ++d) {
    inv_dist[d] = 1.0 / std::pow(static_cast<double>(d) * step, sigma);
  }
  for (std::size_t a = 0; a < idx.size(); ++a) {
    const double ga = g[idx[a]];
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      double q;
      if (idx[b] - idx[a] == (b - a) * stride) {
        q = std::abs(g[idx[b]] - ga) * inv_dist[b - a];
      } else {
        const double dx = grid.node(idx[b]) - grid.node(idx[a]);
        q = std::abs(g[idx[b]] - ga) / std::pow(dx, sigma);
      }
      best = std::max(best, q);
    }
  }
  return best;
}

ContractionReport contraction_factor(const Partition& partition, const ScalingProfile& scaling,
                                     const SpaceSpec& space) {
  if (scaling.size() != partition.interval_count()) {
    throw Error(ErrorCode::kSpecInvalid, "scaling entry count must equal the interval count");
  }
  if (space.needs_constant_scaling() && !scaling.is_constant()) {
    throw Error(ErrorCode::kIncompatibleScalingKind,
                space.kind_name() + " spaces require constant scaling factors");
  }
  const std::size_t n = partition.interval_count();
  ContractionReport r;
  r.space = space;

  auto max_over = [&](auto&& term) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, term(i));
    return m;
  };
  auto sum_over = [&](auto&& term) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += term(i);
    return s;
  };

  if (space.as<BoundedSpace>()) {
    r.factor = scaling.max_sup_magnitude();
    r.condition = "max_i ||alpha_i||_inf = " + fmt(r.factor) + " < 1";
  } else if (const auto* lp = space.as<LpSpace>()) {
    const double p = lp->p;
    if (std::isinf(p)) {
      r.factor = scaling.max_sup_magnitude();
      r.condition = "max_i ||alpha_i||_inf = " + fmt(r.factor) + " < 1";
    } else if (p >= 1.0) {
      r.factor = std::pow(sum_over([&](std::size_t i) {
                            return partition.ratio(i) * std::pow(scaling.sup_magnitude(i), p);
                          }),
                          1.0 / p);
      r.condition = "[sum_i a_i ||alpha_i||_inf^p]^(1/p) = " + fmt(r.factor) + " < 1 (p = " +
                    fmt(p) + ")";
    } else {
      r.factor = sum_over([&](std::size_t i) {
        return partition.ratio(i) * std::pow(scaling.sup_magnitude(i), p);
      });
      r.condition = "sum_i a_i ||alpha_i||_inf^p = " + fmt(r.factor) + " < 1 (p = " + fmt(p) + ")";
    }
  } else if (const auto* ck = space.as<CkSpace>()) {
    check_order(ck->k);
    const int k = ck->k;
    r.factor = max_over([&](std::size_t i) {
      return std::pow(2.0 / partition.ratio(i), k) * scaling.ck_norm(i, k);
    });
    r.condition = "max_i (2/a_i)^k ||alpha_i||_{C^k} = " + fmt(r.factor) + " < 1 (k = " +
                  std::to_string(k) + ")";
    r.has_hypothesis = true;
    double worst = -kInfinity;
    for (std::size_t i = 0; i < n; ++i) {
      worst = std::max(worst, scaling.ck_norm(i, k) - std::pow(partition.ratio(i) / 2.0, k));
    }
    r.hypothesis_satisfied = worst <= 0.0;
    r.hypothesis = "||alpha_i||_{C^k} <= (a_i/2)^k for all i (worst excess " + fmt(worst) + ")";
  } else if (const auto* sob = space.as<SobolevSpace>()) {
    check_order(sob->k);
    const int k = sob->k;
    const double p = sob->p;
    if (std::isinf(p)) {
      r.factor = max_over([&](std::size_t i) {
        return scaling.sup_magnitude(i) / std::pow(partition.ratio(i), k);
      });
      r.condition = "max_i |alpha_i| / a_i^k = " + fmt(r.factor) + " < 1 (k = " +
                    std::to_string(k) + ", p = inf)";
    } else {
      r.factor = std::pow(sum_over([&](std::size_t i) {
                            return std::pow(scaling.sup_magnitude(i), p) /
                                   std::pow(partition.ratio(i), k * p - 1.0);
                          }),
                          1.0 / p);
      r.condition = "[sum_i |alpha_i|^p / a_i^(kp-1)]^(1/p) = " + fmt(r.factor) + " < 1 (k = " +
                    std::to_string(k) + ", p = " + fmt(p) + ")";
    }
  } else {
    const auto* ho = space.as<HoelderSpace>();
    check_order(ho->k);
    r.factor = max_over([&](std::size_t i) {
      return scaling.sup_magnitude(i) / std::pow(partition.ratio(i), ho->sigma + ho->k);
    });
    r.condition = "max_i |alpha_i| / a_i^(sigma+k) = " + fmt(r.factor) + " < 1 (k = " +
                  std::to_string(ho->k) + ", sigma = " + fmt(ho->sigma) + ")";
  }
  r.satisfied = r.factor < 1.0 && r.hypothesis_satisfied;
  return r;
}

ContractionReport contraction_factor(const IfsSpec& spec) {
  return contraction_factor(spec.partition(), spec.scaling(), spec.space());
}

}  // namespace fracop
