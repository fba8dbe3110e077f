#include <doctest.h>

#include <cmath>
#include <random>

#include "fracop/error.hpp"
#include "fracop/expression.hpp"
#include "fracop/ifs_spec.hpp"
#include "fracop/partition.hpp"
#include "test_support.hpp"

using namespace fracop;
using namespace fracop::testing;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected fracop::Error");
  return ErrorCode::kIoError;
}

}  // namespace

TEST_CASE("uniform partition has slopes 1/2 and intercepts 0, 1/2") {
  const Partition p = Partition::build({0.0, 0.5, 1.0});
  CHECK(p.interval_count() == 2);
  CHECK(p.map(0).slope == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p.map(1).slope == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p.map(0).intercept == 0.0);
  CHECK(p.map(1).intercept == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("non-uniform partition") {
  const Partition p = Partition::build({0.0, 0.25, 1.0});
  CHECK(p.ratio(0) == doctest::Approx(0.25));
  CHECK(p.ratio(1) == doctest::Approx(0.75));
  CHECK(p.map(0).intercept == 0.0);
  CHECK(p.map(1).intercept == doctest::Approx(0.25));
}

TEST_CASE("partition errors") {
  CHECK(code_of([] { Partition::build({0.0, 0.5, 0.5, 1.0}); }) == ErrorCode::kNonMonotoneKnots);
  CHECK(code_of([] { Partition::build({0.0, 0.7, 0.5, 1.0}); }) == ErrorCode::kNonMonotoneKnots);
  CHECK(code_of([] { Partition::build({0.0, 1.0}); }) == ErrorCode::kTooFewKnots);
  CHECK(code_of([] { Partition::build({0.0, NAN, 1.0}); }) == ErrorCode::kNonMonotoneKnots);
}

TEST_CASE("affine inverse examples") {
  const Partition p = Partition::build({0.0, 0.5, 1.0});
  CHECK(affine_inverse(p.map(0), 0.25) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(affine_inverse(p.map(1), 0.75) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(code_of([&] { affine_inverse(p.map(0), 0.9); }) == ErrorCode::kOutOfRange);
}

TEST_CASE("ratios lie in (0, 1) and sum to one; maps hit the knots") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::vector<double> k(3 + rng() % 6);
    for (double& v : k) v = u(rng);
    std::sort(k.begin(), k.end());
    const Partition p = Partition::build(k);
    double sum = 0.0;
    for (std::size_t i = 0; i < p.interval_count(); ++i) {
      CHECK(p.ratio(i) > 0.0);
      CHECK(p.ratio(i) < 1.0);
      sum += p.ratio(i);
      const AffineMap& m = p.map(i);
      CHECK(std::abs(m(k.front()) - k[i]) <= 1e-12 * (1 + std::abs(k[i])));
      CHECK(std::abs(m(k.back()) - k[i + 1]) <= 1e-12 * (1 + std::abs(k[i + 1])));
      // Tiling: image intervals are exactly the knot intervals.
      CHECK(m.image_lo == k[i]);
      CHECK(m.image_hi == k[i + 1]);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("affine round trip on 1000 random points") {
  const Partition p = Partition::build({-1.0, -0.2, 0.3, 2.5});
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(p.lo(), p.hi());
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const double x = u(rng);
    for (const auto& m : p.maps()) worst = std::max(worst, std::abs(affine_inverse(m, m(x)) - x));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("interior knots belong to the interval on their right") {
  const Partition p = Partition::build({0.0, 0.25, 0.5, 1.0});
  CHECK(p.interval_of(0.0) == 0);
  CHECK(p.interval_of(0.25) == 1);
  CHECK(p.interval_of(0.5) == 2);
  CHECK(p.interval_of(1.0) == 2);
  CHECK(p.interval_of(0.49) == 1);
}

TEST_CASE("scaling profile stores sup magnitudes") {
  const ScalingProfile c = ScalingProfile::constant({-0.3, 0.6});
  CHECK(c.sup_magnitude(0) == 0.3);
  CHECK(c.sup_magnitude(1) == 0.6);
  CHECK(c.max_sup_magnitude() == 0.6);
  const Grid g = unit_grid(8);
  const ScalingProfile s =
      ScalingProfile::sampled({sample_expr("0.5*sin(3*x)-0.1", g), sample_expr("x-0.8", g)});
  double m0 = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) m0 = std::max(m0, std::abs(0.5 * std::sin(3 * g.node(j)) - 0.1));
  CHECK(s.sup_magnitude(0) == m0);
  CHECK(s.sup_magnitude(1) == doctest::Approx(0.8));
  CHECK_FALSE(s.is_constant());
}

TEST_CASE("expression grammar") {
  CHECK(Expression::parse("x^2 + 3")(2.0) == 7.0);
  CHECK(Expression::parse("-x^2")(3.0) == -9.0);
  CHECK(Expression::parse("2*sin(pi*x)")(0.5) == doctest::Approx(2.0));
  CHECK(Expression::parse("exp(x) - abs(-2)")(0.0) == doctest::Approx(-1.0));
  CHECK(Expression::parse("(x+1)/(x-1)")(3.0) == doctest::Approx(2.0));
  CHECK(Expression::parse("1.5e-1*x")(2.0) == doctest::Approx(0.3));
  CHECK(Expression::parse("x^3").derivative()(2.0) == doctest::Approx(12.0));
  CHECK(Expression::parse("sin(x)*x").derivative()(0.0) == doctest::Approx(0.0));
  CHECK(Expression::parse("cos(2*x)").derivative().derivative()(0.0) == doctest::Approx(-4.0));
  CHECK(code_of([] { Expression::parse("x^x"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { Expression::parse("2*(x+1"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { Expression::parse("foo(x)"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { Expression::parse(""); }) == ErrorCode::kParseError);
}

TEST_CASE("expression sampling carries exact derivatives") {
  const Grid g = unit_grid(6);
  const GridFunction s = sample_expr("x^3", g, 2);
  REQUIRE(s.derivative_depth() == 2);
  CHECK(s.derivative_samples(1)[g.size() - 1] == doctest::Approx(3.0));
  CHECK(s.derivative_samples(2)[g.size() - 1] == doctest::Approx(6.0));
}

TEST_CASE("validate_spec: test spec passes in Lp(2)") {
  const ValidationReport r = validate_spec(make_spec(SpaceSpec::lp(2)));
  CHECK(r.ok());
  REQUIRE(r.find("endpoint_match") != nullptr);
  REQUIRE(r.find("base_differs") != nullptr);
  REQUIRE(r.find("contraction") != nullptr);
  CHECK(r.find("contraction")->value == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(r.knot_snap_error == 0.0);
}

TEST_CASE("validate_spec: b = f fails base_differs") {
  const ValidationReport r = validate_spec(make_spec(SpaceSpec::lp(2), {0.4, 0.4}, "x^2", "x^2"));
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.find("base_differs")->passed);
  CHECK(r.find("endpoint_match")->passed);
}

TEST_CASE("validate_spec: alpha = (1.2, 0.4) fails the sup contraction") {
  const ValidationReport r = validate_spec(make_spec(SpaceSpec::bounded(), {1.2, 0.4}));
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.find("contraction")->passed);
  CHECK(r.find("contraction")->value == doctest::Approx(1.2));
}

TEST_CASE("validate_spec: endpoint mismatch") {
  const ValidationReport r = validate_spec(make_spec(SpaceSpec::bounded(), {0.4, 0.4}, "x^2", "x+0.1"));
  CHECK_FALSE(r.find("endpoint_match")->passed);
}

TEST_CASE("validate_spec: derivative matching in smooth spaces") {
  // b = x has b'(0) = 1 but f'(0) = 0.
  const ValidationReport bad = validate_spec(make_spec(SpaceSpec::ck(1), {0.2, 0.2}));
  REQUIRE(bad.find("derivative_match_1") != nullptr);
  CHECK_FALSE(bad.find("derivative_match_1")->passed);
  // b = 2x^3 - x^4 matches f = x^2 to first order at both ends.
  const ValidationReport good =
      validate_spec(make_spec(SpaceSpec::ck(1), {0.2, 0.2}, "x^2", "2*x^3 - x^4"));
  CHECK(good.ok());
  CHECK(good.find("ck_hypothesis")->passed);
  // The C^k hypothesis ||alpha||_{C^1} <= a/2 = 0.25 fails for 0.3 while the factor 4*0.3 = 1.2 also fails.
  const ValidationReport hyp =
      validate_spec(make_spec(SpaceSpec::ck(1), {0.3, 0.2}, "x^2", "2*x^3 - x^4"));
  CHECK_FALSE(hyp.find("ck_hypothesis")->passed);
  // Sobolev(1, p) needs values only; Sobolev(2, p) needs first derivatives.
  CHECK(validate_spec(make_spec(SpaceSpec::sobolev(1, 2), {0.1, 0.1})).find("derivative_match_1") == nullptr);
  CHECK_FALSE(validate_spec(make_spec(SpaceSpec::sobolev(2, 2), {0.05, 0.05}))
                  .find("derivative_match_1")->passed);
}

TEST_CASE("validate_spec: sampled scaling in a Sobolev space") {
  const Grid g = unit_grid(8);
  const IfsSpec spec = IfsSpec::create(
      Partition::build({0.0, 0.5, 1.0}),
      ScalingProfile::sampled({sample_expr("0.1*x", g), sample_expr("0.1", g)}),
      sample_expr("x^2", g), sample_expr("x", g), SpaceSpec::sobolev(1, 2));
  const ValidationReport r = validate_spec(spec);
  CHECK_FALSE(r.find("scaling_kind")->passed);
}

TEST_CASE("IfsSpec structural errors") {
  const Grid g = unit_grid(8);
  const auto f = sample_expr("x^2", g);
  CHECK(code_of([&] {
          IfsSpec::create(Partition::build({0.0, 0.5, 1.0}), ScalingProfile::constant({0.1}), f,
                          sample_expr("x", g), SpaceSpec::bounded());
        }) == ErrorCode::kSpecInvalid);
  CHECK(code_of([&] {
          IfsSpec::create(Partition::build({0.0, 0.5, 2.0}), ScalingProfile::constant({0.1, 0.1}), f,
                          sample_expr("x", g), SpaceSpec::bounded());
        }) == ErrorCode::kSpecInvalid);
  CHECK(code_of([&] {
          IfsSpec::create(Partition::build({0.0, 0.5, 1.0}), ScalingProfile::constant({0.1, 0.1}), f,
                          sample_expr("x", unit_grid(7)), SpaceSpec::bounded());
        }) == ErrorCode::kSpecInvalid);
}

TEST_CASE("base operator rule resolves b = Lf") {
  const Grid g = unit_grid(8);
  const IfsSpec spec =
      IfsSpec::create(Partition::build({0.0, 0.5, 1.0}), ScalingProfile::constant({0.4, 0.4}),
                      sample_expr("x^2", g), LinearBaseOperator::endpoint_line(), SpaceSpec::bounded());
  CHECK(spec.base().eval(0.3) == doctest::Approx(0.3));
  CHECK(validate_spec(spec).ok());
}

TEST_CASE("off-grid knots are snapped and reported") {
  const Grid g = unit_grid(6);
  const IfsSpec spec =
      IfsSpec::create(Partition::build({0.0, 0.3, 1.0}), ScalingProfile::constant({0.2, 0.2}),
                      sample_expr("x^2", g), sample_expr("x", g), SpaceSpec::bounded());
  const ValidationReport r = validate_spec(spec);
  CHECK(r.knot_snap_error > 0.0);
  CHECK(r.knot_snap_error <= g.spacing() / 2 + 1e-15);
  CHECK(r.ok());
}

TEST_CASE("error codes have stable names") {
  CHECK(to_string(ErrorCode::kNotContractive) == "NotContractive");
  CHECK(to_string(ErrorCode::kNonMonotoneKnots) == "NonMonotoneKnots");
  CHECK(to_string(ErrorCode::kMaxTermsExceeded) == "MaxTermsExceeded");
}
