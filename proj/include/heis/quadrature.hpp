#pragma once

#include <cstddef>
#include <vector>

namespace heis {

/// Nodes and weights of a one-dimensional quadrature rule.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

/// n-point Gauss-Legendre rule on [a, b]. Nodes are ascending.
QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

/// Composite Gauss-Legendre: `panels` equal panels of `order` points each.
QuadratureRule composite_gauss_legendre(int panels, int order, double a, double b);

/// Composite rule over consecutive breakpoints, `order` points per interval.
QuadratureRule piecewise_gauss_legendre(const std::vector<double>& breaks, int order);

/// Periodic trapezoid rule on [0, 2pi) with n equispaced nodes.
QuadratureRule periodic_trapezoid(int n);

}  // namespace heis
