#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dynbc/errors.hpp"
#include "dynbc/sphere_quadrature.hpp"

using namespace dynbc;
using doctest::Approx;

TEST_CASE("two-point Gauss-Legendre") {
  const GaussRule1D g = gauss_gegenbauer(2, 0.5);
  REQUIRE(g.nodes.size() == 2);
  CHECK(std::abs(g.nodes[0]) == Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(g.weights[0] + g.weights[1] == Approx(2.0).epsilon(1e-14));
}

TEST_CASE("weights sum to the sphere area") {
  for (int dim : {3, 4, 5}) {
    const QuadratureRule rule = build_rule(dim, 1);
    CHECK(total_weight(rule) == Approx(sphere_area(dim)).epsilon(1e-13));
    std::size_t count = 0;
    rule.for_each_node([&](const SpherePoint&, double) { ++count; });
    CHECK(count == rule.size());
  }
}

TEST_CASE("even moments of a coordinate") {
  // int y_1^2 = |S| / N,  int y_N^4 = 3 |S| / (N (N + 2))
  for (int dim : {3, 4, 5}) {
    const QuadratureRule rule = build_rule(dim, 1);
    const double area = sphere_area(dim);
    const double m2 = integrate(rule, [](const SpherePoint& y) { return y[0] * y[0]; });
    const double m4 =
        integrate(rule, [&](const SpherePoint& y) { return std::pow(y[dim - 1], 4); });
    CHECK(m2 == Approx(area / dim).epsilon(1e-13));
    CHECK(m4 == Approx(3.0 * area / (dim * (dim + 2.0))).epsilon(1e-13));
  }
}

TEST_CASE("nodes lie on the sphere") {
  const QuadratureRule rule = build_rule(5, 1);
  double worst = 0.0;
  rule.for_each_node([&](const SpherePoint& y, double) {
    worst = std::max(worst, std::abs(y.point().norm() - 1.0));
  });
  CHECK(worst < 1e-14);
}

TEST_CASE("adaptive integration and failure") {
  auto f = [](const SpherePoint& y) { return std::exp(y[0]); };
  // int_{S^2} e^{y_1} = 2 pi (e - 1/e)
  const AdaptiveResult r = integrate_adaptive(3, f, 1, 1e-12, max_adaptive_level(3));
  CHECK(r.value ==
        Approx(2.0 * std::numbers::pi * (std::exp(1.0) - std::exp(-1.0))).epsilon(1e-12));
  auto spike = [](const SpherePoint& y) { return 1.0 / (1.0 + 1e8 * (1.0 - y[0])); };
  CHECK_THROWS_AS(integrate_adaptive(3, spike, 1, 1e-14, 2), SolverError);
  CHECK_THROWS_AS(build_rule(6, 1), ConfigError);
}

TEST_CASE("quadrature examples") {
  const QuadratureRule r3 = build_rule(3, 1);
  CHECK(integrate(r3, [](const SpherePoint&) { return 1.0; }) ==
        Approx(4.0 * std::numbers::pi).epsilon(1e-12));
  CHECK(integrate(r3, [](const SpherePoint&) { return 0.0; }) == 0.0);
  const QuadratureRule r4 = build_rule(4, 2);
  CHECK(integrate(r4, [](const SpherePoint&) { return 1.0; }) ==
        Approx(2.0 * std::numbers::pi * std::numbers::pi).epsilon(1e-12));

  const KernelContext ctx(3);
  const QuadratureRule level4 = build_rule(3, 4);
  const PointN inner{0.3, 0.2, 0.1};
  CHECK(integrate(level4, [&](const SpherePoint& y) { return poisson_kernel(ctx, inner, y); }) ==
        Approx(1.0).epsilon(1e-8));
  const auto outer = ExteriorPoint::on_axis(3, 2.0);
  CHECK(integrate(level4, [&](const SpherePoint& y) { return kelvin_kernel(ctx, outer, y); }) ==
        Approx(0.5).epsilon(1e-6));
}

TEST_CASE("kernel mass identities through adaptive quadrature") {
  struct Case {
    int dim;
    double radius, t, expected;
  };
  const Case cases[] = {{3, 2.0, std::log(2.0), 0.25},
                        {4, 1.5, 1.0, std::pow(std::exp(1.0) * 1.5, -2.0)}};
  for (const auto& c : cases) {
    const KernelContext ctx(c.dim);
    const auto x = ExteriorPoint::on_axis(c.dim, c.radius);
    const auto r = integrate_kernel_adaptive(
        c.dim, std::exp(c.t) * c.radius,
        [&](const SpherePoint& y) { return evolving_kernel(ctx, x, y, c.t); }, c.expected);
    CHECK(r.value == Approx(c.expected).epsilon(1e-6));
  }
  // d/dt of the mass at t = 0: -(N - 2) |x|^{-(N-2)}
  const KernelContext ctx(3);
  const auto x = ExteriorPoint::on_axis(3, 2.0);
  const auto d = integrate_kernel_adaptive(
      3, 2.0, [&](const SpherePoint& y) { return dt_evolving_kernel(ctx, x, y, 0.0); }, 0.5);
  CHECK(d.value == Approx(-0.5).epsilon(1e-6));
}
