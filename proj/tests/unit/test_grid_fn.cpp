#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "fracop/error.hpp"
#include "fracop/grid_function.hpp"
#include "fracop/partition.hpp"
#include "test_support.hpp"

using namespace fracop;
using namespace fracop::testing;

TEST_CASE("grid layout") {
  const Grid g = unit_grid();
  CHECK(g.size() == 4097);
  CHECK(g.spacing() == 1.0 / 4096.0);
  CHECK(g.node(4096) == 1.0);
  CHECK(g.nearest_node(0.25) == 1024);
  CHECK_THROWS_AS(Grid::make(1.0, 0.0), Error);
}

TEST_CASE("eval interpolates linearly and is exact at nodes") {
  const Grid g = unit_grid();
  const GridFunction id = GridFunction::sample(g, [](double x) { return x; });
  CHECK(id.eval(0.3) == doctest::Approx(0.3).epsilon(1e-15));
  const GridFunction five = GridFunction::constant(g, 5.0);
  CHECK(five.eval(0.123456) == 5.0);
  CHECK(five.eval(1.0) == 5.0);
  try {
    id.eval(1.5);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kOutOfDomain);
  }
  const GridFunction sq = sample_expr("x^2", g);
  for (std::size_t j = 0; j < g.size(); j += 37) CHECK(sq.eval(g.node(j)) == sq[j]);
}

TEST_CASE("samples must be finite") {
  const Grid g = unit_grid(3);
  std::vector<double> v(g.size(), 0.0);
  v[2] = NAN;
  CHECK_THROWS_AS(GridFunction(g, v), Error);
}

TEST_CASE("compose with affine inverse") {
  const Grid g = unit_grid();
  const Partition p = Partition::build({0.0, 0.5, 1.0});
  const GridFunction id = sample_expr("x", g);
  const std::size_t q = g.nearest_node(0.25);
  CHECK(compose_affine_inverse(id, p.map(0), q, q)[0] == doctest::Approx(0.5).epsilon(1e-15));
  const GridFunction sq = sample_expr("x^2", g);
  const std::size_t t = g.nearest_node(0.75);
  CHECK(compose_affine_inverse(sq, p.map(1), t, t)[0] == doctest::Approx(0.25).epsilon(1e-15));
  const auto c = compose_affine_inverse(GridFunction::constant(g, -2.0), p.map(1), 2048, 4096);
  for (double v : c) CHECK(v == -2.0);
  try {
    compose_affine_inverse(id, p.map(0), 0, 4000);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kOutOfRange);
  }
}

TEST_CASE("trapezoid quadrature of |g|^p") {
  const Grid g = unit_grid();
  CHECK(quadrature_p_power(GridFunction::constant(g, 1.0), 2.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(quadrature_p_power(sample_expr("x", g), 1.0) - 0.5) <= 1e-10);
  CHECK(std::abs(quadrature_p_power(sample_expr("x", g), 2.0) - 1.0 / 3.0) <= 1e-6);
  // Affine integrands without sign change are integrated exactly.
  CHECK(std::abs(quadrature_p_power(sample_expr("3*x+2", g), 1.0) - 3.5) <= 1e-12);
  CHECK(std::abs(quadrature_p_power(sample_expr("-2*x-1", g), 1.0) - 2.0) <= 1e-12);
  CHECK_THROWS_AS(quadrature_p_power(sample_expr("x", g), 0.0), Error);
}

TEST_CASE("finite differences") {
  const Grid g = unit_grid();
  const GridFunction d1 = finite_difference(sample_expr("x^2", g), 1);
  double e1 = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) e1 = std::max(e1, std::abs(d1[j] - 2 * g.node(j)));
  CHECK(e1 <= 1e-6);

  const GridFunction z = finite_difference(GridFunction::constant(g, 4.0), 1);
  CHECK(sup_norm(z) == 0.0);

  const GridFunction d2 = finite_difference(sample_expr("sin(x)", g), 2);
  double e2 = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) e2 = std::max(e2, std::abs(d2[j] + std::sin(g.node(j))));
  CHECK(e2 <= 1e-4);

  const GridFunction lin = finite_difference(sample_expr("-3*x+7", Grid::make(-2.0, 5.0, 9)), 1);
  for (std::size_t j = 0; j < lin.size(); ++j) CHECK(std::abs(lin[j] + 3.0) <= 1e-10);

  CHECK_THROWS_AS(finite_difference(sample_expr("x", g), 5), Error);
  try {
    finite_difference(sample_expr("x", Grid::make(0, 1, 1)), 2);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kOrderTooHigh);
  }
}

TEST_CASE("derivative prefers stored samples") {
  const Grid g = unit_grid(5);
  const GridFunction s = sample_expr("x^3", g, 1);
  const GridFunction d1 = s.derivative(1);
  for (std::size_t j = 0; j < g.size(); ++j) CHECK(d1[j] == doctest::Approx(3 * g.node(j) * g.node(j)));
  // Order 2 falls back to differences of the stored first derivative.
  const GridFunction d2 = s.derivative(2);
  CHECK(d2[g.size() / 2] == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("arithmetic is linear under eval") {
  const Grid g = unit_grid(10);
  const GridFunction a = sample_expr("sin(3*x)", g);
  const GridFunction b = sample_expr("x^2 - 1", g);
  const GridFunction c = 2.5 * a + (-0.75) * b;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 0; n < 200; ++n) {
    const double x = u(rng);
    CHECK(std::abs(c.eval(x) - (2.5 * a.eval(x) - 0.75 * b.eval(x))) <= 1e-12);
  }
  CHECK(sup_norm(a - a) == 0.0);
  CHECK_THROWS_AS(a + sample_expr("x", unit_grid(9)), Error);
}

TEST_CASE("cumulative integrals") {
  const Grid g = unit_grid();
  const GridFunction one = GridFunction::constant(g, 1.0);
  const GridFunction x = cumulative_integral(one);
  CHECK(x[g.size() - 1] == doctest::Approx(1.0).epsilon(1e-14));
  const GridFunction sq = cumulative_integral(sample_expr("x", g), IntegrationRule::kTrapezoid);
  CHECK(sq.eval(1.0) == doctest::Approx(0.5).epsilon(1e-12));
  // Left rectangles invert cell slopes exactly.
  const GridFunction f = sample_expr("sin(5*x)", g);
  const auto s = cell_slopes(f);
  std::vector<double> steps(s.begin(), s.end());
  steps.push_back(steps.back());
  const GridFunction back = cumulative_integral(GridFunction(g, steps), IntegrationRule::kLeftRectangle);
  double worst = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) worst = std::max(worst, std::abs(back[j] + f[0] - f[j]));
  CHECK(worst <= 1e-12);
}

TEST_CASE("resampling from another uniform layout") {
  const Grid g = unit_grid(8);
  const std::vector<double> coarse{0.0, 0.5, 1.0};
  const GridFunction r = from_uniform_samples(g, coarse);
  CHECK(r.eval(0.3) == doctest::Approx(0.3));
}

TEST_CASE("csv output") {
  const Grid g = unit_grid(1);
  std::ostringstream out;
  write_csv(out, sample_expr("x^2", g, 1), 1);
  CHECK(out.str() == "x,value,d1\n0,0,0\n0.5,0.25,1\n1,1,2\n");
  std::ostringstream full;
  write_csv(full, GridFunction::constant(g, 0.1));
  CHECK(full.str().find("0.10000000000000001") != std::string::npos);
}
