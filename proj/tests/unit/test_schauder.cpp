#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "fracop/error.hpp"
#include "fracop/norms.hpp"
#include "fracop/schauder.hpp"
#include "test_support.hpp"

using namespace fracop;
using namespace fracop::testing;

namespace {

// Integral of haar_n from 0 to x, in closed form.
double haar_integral(std::size_t n, double x) {
  if (n == 0) return x;
  const int j = static_cast<int>(std::floor(std::log2(static_cast<double>(n))));
  const double k = static_cast<double>(n - (std::size_t{1} << j));
  const double w = std::ldexp(1.0, -j);
  const double a = k * w;
  const double m = a + w / 2;
  const double b = a + w;
  const double amp = std::sqrt(std::ldexp(1.0, j));
  if (x <= a || x >= b) return 0.0;
  return x <= m ? amp * (x - a) : amp * (b - x);
}

const BasisLadder& haar256() {
  static const BasisLadder ladder = BasisLadder::haar_system(256);
  return ladder;
}

const FractalBasis& w12_basis() {
  static const FractalBasis basis =
      fractalize_basis(haar256().lift(256), sstar_template(SpaceSpec::sobolev(1, 2), {0.1, 0.1}));
  return basis;
}

}  // namespace

TEST_CASE("Haar elements") {
  const BasisLadder& h = haar256();
  CHECK(h.level() == 0);
  CHECK(sup_norm(h.element(0) - GridFunction::constant(h.grid(), 1.0)) == 0.0);
  CHECK(h.element(1).eval(0.25) == 1.0);
  CHECK(h.element(1).eval(0.75) == -1.0);
  CHECK(h.element(2).eval(0.1) == doctest::Approx(std::sqrt(2.0)));
  CHECK(h.element(3).eval(0.3) == 0.0);
  CHECK(h.element(3).eval(0.6) == doctest::Approx(std::sqrt(2.0)));
  CHECK(haar_value(5, 0.3) == doctest::Approx(2.0));
  CHECK(haar_value(5, 0.4) == doctest::Approx(-2.0));
  CHECK_THROWS_AS(BasisLadder::haar_system(0), Error);
  CHECK_THROWS_AS(BasisLadder::haar_system(5000), Error);
}

TEST_CASE("Haar coefficient functional") {
  const BasisLadder& h = haar256();
  CHECK(std::abs(h.coefficient(1, sample_expr("x", h.grid())) + 0.25) <= 1e-12);
  CHECK(std::abs(h.coefficient(0, sample_expr("x", h.grid())) - 0.5) <= 1e-3);
}

TEST_CASE("biorthogonality at levels 0 and 1") {
  const BasisLadder& h = haar256();
  const BasisLadder l1 = h.lift(17);
  for (const BasisLadder* ladder : {&h, &l1}) {
    double worst = 0.0;
    for (std::size_t n = 0; n < 16; ++n) {
      const auto c = ladder->coefficients(ladder->element(n), 16);
      for (std::size_t m = 0; m < 16; ++m) worst = std::max(worst, std::abs(c[m] - (m == n ? 1.0 : 0.0)));
    }
    CAPTURE(ladder->level());
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("lifting") {
  const BasisLadder l1 = haar256().lift(64);
  CHECK(l1.level() == 1);
  CHECK(l1.element(0).eval(0.4) == 1.0);
  CHECK(l1.element(1).eval(0.3) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(l1.element(2).eval(0.5) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(l1.element(2).eval(1.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(l1.coefficient(0, sample_expr("x^2 + 3", l1.grid())) == 3.0);
  CHECK_THROWS_AS(haar256().lift(300), Error);

  // Recursion residual, against the construction rule and the closed-form integral.
  double rule = 0.0;
  double exact = 0.0;
  const Grid& g = l1.grid();
  for (std::size_t n = 1; n < l1.size(); ++n) {
    const GridFunction ref = cumulative_integral(haar256().element(n - 1), IntegrationRule::kLeftRectangle);
    rule = std::max(rule, sup_norm(l1.element(n) - ref));
    for (std::size_t j = 0; j < g.size(); j += 5) {
      exact = std::max(exact, std::abs(l1.element(n)[j] - haar_integral(n - 1, g.node(j))));
    }
  }
  CHECK(rule <= 1e-8);
  CHECK(exact <= 1e-8);

  const BasisLadder l2 = l1.lift(20);
  CHECK(l2.level() == 2);
  CHECK(std::abs(l2.element(2).eval(0.5) - 0.125) <= 1e-4);
  CHECK(std::abs(l2.coefficient(1, sample_expr("x^2 + 3*x", g)) - 3.0) <= 1e-3);
}

TEST_CASE("Gram matrix of the first 16 elements is well conditioned") {
  for (const BasisLadder& ladder : {haar256(), haar256().lift(16)}) {
    const auto gm = gram_matrix(ladder, 16);
    Eigen::MatrixXd m(16, 16);
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j) m(i, j) = gm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    const double cond = es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
    MESSAGE("level " << ladder.level() << " Gram condition number " << cond);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
    CHECK(cond < 1e6);
  }
}

TEST_CASE("fractalized basis") {
  const BasisLadder l1 = haar256().lift(16);
  const FractalBasis id = fractalize_basis(l1, sstar_template(SpaceSpec::sobolev(1, 2), {0.0, 0.0}));
  for (std::size_t n = 0; n < l1.size(); ++n) CHECK(sup_norm(id.element(n) - l1.element(n)) == 0.0);

  const FractalBasis& fb = w12_basis();
  CHECK(sup_norm(fb.element(0) - GridFunction::constant(l1.grid(), 1.0)) <= 1e-15);
  const FractalTemplate& t = fb.op().tmpl();
  for (std::size_t n = 0; n < 16; ++n) {
    const GridFunction& e = fb.ladder().element(n);
    const IfsSpec spec = IfsSpec::create(t.partition, t.scaling, e, t.base, t.space);
    CHECK(self_ref_residual(spec, fb.element(n)) <= 1e-9);
  }
}

TEST_CASE("fractalize_basis hypotheses") {
  CHECK_THROWS_AS(fractalize_basis(haar256(), sstar_template(SpaceSpec::bounded(), {0.4, 0.4})), Error);
  CHECK_THROWS_AS(fractalize_basis(haar256(), sstar_template(SpaceSpec::bounded(), {0.1, 0.1}, 10)), Error);
  try {
    fractalize_basis(haar256(), sstar_template(SpaceSpec::bounded(), {0.4, 0.4}));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kHypothesisViolated);
  }
}

TEST_CASE("reconstructing a fractal basis element recovers a unit vector") {
  const FractalBasis& fb = w12_basis();
  for (std::size_t m : {0, 1, 5, 12}) {
    const Reconstruction r = reconstruct(fb, fb.element(m), 16);
    for (std::size_t n = 0; n < 16; ++n) CHECK(std::abs(r.coefficients[n] - (n == m ? 1.0 : 0.0)) <= 1e-6);
    for (std::size_t n = m + 1; n <= 16; ++n) CHECK(r.errors[n - 1] <= 1e-6);
  }
}

TEST_CASE("identity template: f = x is exact with two terms") {
  const FractalBasis fb =
      fractalize_basis(haar256().lift(8), sstar_template(SpaceSpec::sobolev(1, 2), {0.0, 0.0}));
  const Reconstruction r = reconstruct(fb, sample_expr("x", fb.ladder().grid()), 8);
  CHECK(r.errors[1] <= 1e-12);
}

TEST_CASE("reconstruction error of x(1-x) is non-increasing") {
  const FractalBasis& fb = w12_basis();
  const Reconstruction r = reconstruct(fb, sample_expr("x*(1-x)", fb.ladder().grid()), 256);
  double prev = kInfinity;
  for (std::size_t n = 2; n <= 256; n *= 2) {
    CHECK(r.errors[n - 1] <= prev + 1e-9);
    prev = r.errors[n - 1];
  }
  MESSAGE("x(1-x): error at 256 terms " << r.errors.back());
  CHECK(r.errors.back() < 0.01 * r.errors[1]);
}

// The basis is not orthogonal in W^{1,2}, so single steps may raise the error
// slightly; the expansion still converges.
TEST_CASE("reconstruction error of random smooth f decays") {
  const FractalBasis& fb = w12_basis();
  std::size_t rises = 0;
  double worst_rise = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    RandomFunctionSource src(seed);
    const Reconstruction r = reconstruct(fb, src.sample(fb.ladder().grid(), 0), 256);
    for (std::size_t n = 1; n < r.errors.size(); ++n) {
      const double d = r.errors[n] - r.errors[n - 1];
      if (d > 1e-9) {
        ++rises;
        worst_rise = std::max(worst_rise, d / r.errors[n - 1]);
      }
    }
    for (std::size_t n = 2; n <= 64; n *= 2) CHECK(r.errors[4 * n - 1] < r.errors[n - 1]);
    CHECK(r.errors.back() < 0.15 * r.errors[1]);
  }
  MESSAGE("single-step rises: " << rises << ", largest relative " << worst_rise);
}
