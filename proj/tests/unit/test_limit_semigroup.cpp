#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "dynbc/errors.hpp"
#include "dynbc/limit_semigroup.hpp"

using namespace dynbc;
using doctest::Approx;

TEST_CASE("constant datum closed forms") {
  const KernelContext ctx(3);
  const auto psi = BoundaryDatum::constant(2.0);
  const auto x = ExteriorPoint::on_axis(3, 1.5);
  CHECK(s2_apply(ctx, psi, x, 0.5) == Approx(2.0 / (1.5 * std::exp(0.5))).epsilon(1e-14));
  CHECK(f1_apply(ctx, psi, x, 0.5) == Approx(-2.0 * std::exp(-0.5) / 1.5).epsilon(1e-14));
}

TEST_CASE("sampled constant reproduces the closed form") {
  for (int dim : {3, 4}) {
    const KernelContext ctx(dim);
    const auto c = BoundaryDatum::constant(1.0);
    const auto s = BoundaryDatum::sampled([](const SpherePoint&) { return 1.0; }, 1.0);
    const auto x = ExteriorPoint::on_axis(dim, 2.0);
    CHECK(s2_apply(ctx, s, x, 0.3) == Approx(s2_apply(ctx, c, x, 0.3)).epsilon(1e-7));
    CHECK(f1_apply(ctx, s, x, 0.3) == Approx(f1_apply(ctx, c, x, 0.3)).epsilon(1e-6));
  }
}

TEST_CASE("first harmonic evolves as an exterior dipole") {
  // psi = y_1 extends to x_1 |x|^{-N}, so S2(t) psi (x) = e^t x_1 (e^t |x|)^{-N}.
  const int dim = 3;
  const KernelContext ctx(dim);
  const auto psi = BoundaryDatum::sampled([](const SpherePoint& y) { return y[0]; }, 1.0);
  const ExteriorPoint x(PointN{1.2, 0.5, -0.3});
  const double t = 0.4;
  const double rho = std::exp(t) * x.radius();
  CHECK(s2_apply(ctx, psi, x, t) ==
        Approx(std::exp(t) * 1.2 * std::pow(rho, -dim)).epsilon(1e-6));
}

TEST_CASE("invalid data") {
  CHECK_THROWS_AS(BoundaryDatum::constant(std::numeric_limits<double>::quiet_NaN()),
                  ConfigError);
}

TEST_CASE("limit semigroup contract examples") {
  const KernelContext ctx(3);
  const auto x = ExteriorPoint::on_axis(3, 2.0);
  CHECK(s2_apply(ctx, BoundaryDatum::constant(1.0), x, 1.0) ==
        Approx(std::exp(-1.0) / 2.0).epsilon(1e-14));
  CHECK(s2_apply(ctx, BoundaryDatum::constant(0.0), x, 1.0) == 0.0);
  CHECK(f1_apply(ctx, BoundaryDatum::constant(1.0), x, 0.0) == Approx(-0.5));
  CHECK(f1_apply(ctx, BoundaryDatum::constant(0.0), x, 0.3) == 0.0);
  const auto one = BoundaryDatum::sampled([](const SpherePoint&) { return 1.0; }, 1.0);
  CHECK(s2_apply(ctx, one, x, 0.5) ==
        Approx(s2_apply(ctx, BoundaryDatum::constant(1.0), x, 0.5)).epsilon(1e-6));
}

TEST_CASE("forcing bound on sampled data") {
  std::mt19937 rng(3);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> radius(1.1, 4.0), time(0.0, 1.0);
  const KernelContext ctx(3);
  const auto psi = BoundaryDatum::sampled(
      [](const SpherePoint& y) { return std::cos(3.0 * y[0]) + y[1] * y[2]; }, 1.5);
  for (int k = 0; k < 20; ++k) {
    PointN a{gauss(rng), gauss(rng), gauss(rng)};
    const ExteriorPoint x(a.scaled(radius(rng) / a.norm()));
    const double t = time(rng);
    const double rho = std::exp(t) * x.radius();
    const double bound = 3.0 * (1.0 / rho) * rho / (rho - 1.0) * psi.sup_abs();
    CHECK(std::abs(f1_apply(ctx, psi, x, t)) <= bound);
  }
}
