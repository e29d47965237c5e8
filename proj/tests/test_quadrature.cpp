#include <doctest.h>

#include <cmath>
#include <numbers>

#include "heis/quadrature.hpp"

using namespace heis;

TEST_CASE("gauss_legendre integrates polynomials of degree 2n-1 exactly") {
  const QuadratureRule rule = gauss_legendre(8, -1.0, 3.0);
  CHECK(rule.size() == 8);
  for (int d = 0; d <= 15; ++d) {
    const double exact = (std::pow(3.0, d + 1) - std::pow(-1.0, d + 1)) / (d + 1);
    CHECK(rule.integrate([d](double x) { return std::pow(x, d); }) == doctest::Approx(exact).epsilon(1e-13));
  }
}

TEST_CASE("gauss_legendre nodes are symmetric and weights sum to the length") {
  const QuadratureRule rule = gauss_legendre(33);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    sum += rule.weights[i];
    CHECK(rule.nodes[i] == doctest::Approx(-rule.nodes[rule.size() - 1 - i]).epsilon(1e-15));
  }
  CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("composite and piecewise rules") {
  const QuadratureRule c = composite_gauss_legendre(10, 8, 0.0, std::numbers::pi);
  CHECK(c.integrate([](double x) { return std::sin(x); }) == doctest::Approx(2.0).epsilon(1e-14));
  const QuadratureRule p = piecewise_gauss_legendre({0.0, 1.0, 4.0}, 10);
  CHECK(p.integrate([](double x) { return std::sqrt(x + 1.0); }) ==
        doctest::Approx(2.0 / 3.0 * (std::pow(5.0, 1.5) - 1.0)).epsilon(1e-12));
}

TEST_CASE("periodic trapezoid is spectrally accurate") {
  const QuadratureRule t = periodic_trapezoid(32);
  CHECK(t.integrate([](double th) { return std::exp(std::cos(th)); }) ==
        doctest::Approx(2.0 * std::numbers::pi * std::cyl_bessel_i(0.0, 1.0)).epsilon(1e-14));
}

TEST_CASE("invalid quadrature requests throw") {
  CHECK_THROWS(gauss_legendre(0));
  CHECK_THROWS(composite_gauss_legendre(0, 4, 0.0, 1.0));
}
