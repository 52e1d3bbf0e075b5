#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <span>

#include "dynbc/errors.hpp"
#include "dynbc/kernels.hpp"

using namespace dynbc;
using doctest::Approx;

TEST_CASE("sphere areas") {
  CHECK(sphere_area(3) == Approx(4.0 * std::numbers::pi).epsilon(1e-14));
  CHECK(sphere_area(4) == Approx(2.0 * std::numbers::pi * std::numbers::pi).epsilon(1e-14));
  CHECK(sphere_area(5) == Approx(8.0 * std::pow(std::numbers::pi, 2) / 3.0).epsilon(1e-14));
}

TEST_CASE("poisson kernel on the axis") {
  const KernelContext ctx(3);
  const SpherePoint y(PointN{1.0, 0.0, 0.0});
  // (1/4pi) (1 - 1/4) / (1/2)^3
  CHECK(poisson_kernel(ctx, PointN{0.5, 0.0, 0.0}, y) ==
        Approx(6.0 / (4.0 * std::numbers::pi)).epsilon(1e-14));
}

TEST_CASE("kelvin and evolving kernels agree under dilation") {
  const KernelContext ctx(3);
  const SpherePoint y(PointN{1.0, 0.0, 0.0});
  const double expected = 3.0 / (4.0 * std::numbers::pi);
  CHECK(kelvin_kernel(ctx, ExteriorPoint::on_axis(3, 2.0), y) == Approx(expected).epsilon(1e-14));
  CHECK(evolving_kernel(ctx, ExteriorPoint::on_axis(3, 1.0), y, std::log(2.0)) ==
        Approx(expected).epsilon(1e-13));
}

TEST_CASE("time derivative matches a centered difference") {
  for (int dim : {3, 4, 5}) {
    const KernelContext ctx(dim);
    double xc[5] = {1.1, -0.4, 0.3, 0.2, 0.1};
    double yc[5] = {0.3, 0.5, -0.6, 0.4, 0.2};
    const ExteriorPoint x(PointN(std::span<const double>(xc, static_cast<std::size_t>(dim))).scaled(1.3));
    const SpherePoint y = SpherePoint::normalized(PointN(std::span<const double>(yc, static_cast<std::size_t>(dim))));
    const double t = 0.3, h = 1e-5;
    const double fd =
        (evolving_kernel(ctx, x, y, t + h) - evolving_kernel(ctx, x, y, t - h)) / (2.0 * h);
    CHECK(dt_evolving_kernel(ctx, x, y, t) == Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("kernel mass closed form") {
  const KernelContext ctx(4);
  CHECK(kernel_mass(ctx, 2.0, 0.5) == Approx(std::pow(2.0 * std::exp(0.5), -2.0)).epsilon(1e-14));
}

TEST_CASE("domain checks") {
  CHECK_THROWS_AS(KernelContext(2), ConfigError);
  CHECK_THROWS_AS(ExteriorPoint(PointN{0.5, 0.0, 0.0}), ConfigError);
  CHECK_THROWS_AS(SpherePoint(PointN{1.1, 0.0, 0.0}), ConfigError);
  const KernelContext ctx(3);
  const SpherePoint y(PointN{1.0, 0.0, 0.0});
  CHECK_THROWS_AS(kelvin_kernel(ctx, ExteriorPoint::on_axis(3, 1.0), y), SingularEvaluation);
}

TEST_CASE("kernel values from the contract examples") {
  const KernelContext ctx(3);
  const SpherePoint y(PointN{0.0, 0.6, 0.8});
  CHECK(poisson_kernel(ctx, PointN{0.0, 0.0, 0.0}, y) ==
        Approx(1.0 / (4.0 * std::numbers::pi)).epsilon(1e-14));
  CHECK(poisson_kernel(ctx, PointN{1.0, 0.0, 0.0}, y) == 0.0);
  CHECK(kelvin_kernel(ctx, ExteriorPoint::on_axis(3, 1.0), y) == Approx(0.0).scale(1.0));
  CHECK(kernel_mass(ctx, 2.0, 0.0) == Approx(0.5));
  CHECK(kernel_mass(KernelContext(5), 1.0, 0.0) == 1.0);
  CHECK(kernel_mass(KernelContext(4), 3.0, std::log(2.0)) == Approx(1.0 / 36.0).epsilon(1e-14));
}

TEST_CASE("evolving kernel at t = 0 is the Kelvin kernel") {
  std::mt19937 rng(7);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> radius(1.05, 5.0);
  const KernelContext ctx(4);
  for (int k = 0; k < 10; ++k) {
    PointN a{gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
    PointN b{gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
    const ExteriorPoint x(a.scaled(radius(rng) / a.norm()));
    const SpherePoint y = SpherePoint::normalized(b);
    CHECK(evolving_kernel(ctx, x, y, 0.0) == Approx(kelvin_kernel(ctx, x, y)).epsilon(1e-14));
  }
}

TEST_CASE("time derivative bound and forward difference") {
  std::mt19937 rng(11);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> radius(1.01, 6.0), time(0.0, 2.0);
  for (int dim : {3, 4, 5}) {
    const KernelContext ctx(dim);
    for (int k = 0; k < 1000; ++k) {
      PointN a, b;
      double ac[5], bc[5];
      for (int i = 0; i < dim; ++i) {
        ac[i] = gauss(rng);
        bc[i] = gauss(rng);
      }
      a = PointN(std::span<const double>(ac, static_cast<std::size_t>(dim)));
      b = PointN(std::span<const double>(bc, static_cast<std::size_t>(dim)));
      const ExteriorPoint x(a.scaled(radius(rng) / a.norm()));
      const SpherePoint y = SpherePoint::normalized(b);
      const double t = time(rng);
      const double rho = std::exp(t) * x.radius();
      CHECK(std::abs(dt_evolving_kernel(ctx, x, y, t)) <=
            dim * rho / (rho - 1.0) * evolving_kernel(ctx, x, y, t) * (1.0 + 1e-12));
    }
  }
  const KernelContext ctx(3);
  const auto x = ExteriorPoint::on_axis(3, 2.0);
  const SpherePoint y(PointN{1.0, 0.0, 0.0});
  const double h = 1e-6;
  const double fd = (evolving_kernel(ctx, x, y, h) - evolving_kernel(ctx, x, y, 0.0)) / h;
  CHECK(fd == Approx(dt_evolving_kernel(ctx, x, y, 0.0)).epsilon(1e-4));
}
