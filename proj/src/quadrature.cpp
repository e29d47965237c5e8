#include "heis/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace heis {

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  if (!(b > a)) throw std::invalid_argument("gauss_legendre: empty interval");

  QuadratureRule q;
  q.nodes.resize(n);
  q.weights.resize(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);

  // Newton on P_n with the Tricomi initial guess; symmetric pairs filled together.
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
    }
    dp = n * (x * p0 - p1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.nodes[i] = mid - half * x;
    q.nodes[n - 1 - i] = mid + half * x;
    q.weights[i] = q.weights[n - 1 - i] = half * w;
  }
  if (n % 2 == 1) q.nodes[n / 2] = mid;
  return q;
}

QuadratureRule composite_gauss_legendre(int panels, int order, double a, double b) {
  if (panels < 1) throw std::invalid_argument("composite_gauss_legendre: need at least one panel");
  std::vector<double> breaks(panels + 1);
  for (int i = 0; i <= panels; ++i) breaks[i] = a + (b - a) * i / panels;
  breaks.back() = b;
  return piecewise_gauss_legendre(breaks, order);
}

QuadratureRule piecewise_gauss_legendre(const std::vector<double>& breaks, int order) {
  if (breaks.size() < 2) throw std::invalid_argument("piecewise_gauss_legendre: need two breakpoints");
  const QuadratureRule ref = gauss_legendre(order);
  QuadratureRule q;
  q.nodes.reserve((breaks.size() - 1) * order);
  q.weights.reserve((breaks.size() - 1) * order);
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double lo = breaks[p], hi = breaks[p + 1];
    if (!(hi > lo)) throw std::invalid_argument("piecewise_gauss_legendre: breakpoints must increase");
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (int i = 0; i < order; ++i) {
      q.nodes.push_back(mid + half * ref.nodes[i]);
      q.weights.push_back(half * ref.weights[i]);
    }
  }
  return q;
}

QuadratureRule periodic_trapezoid(int n) {
  if (n < 1) throw std::invalid_argument("periodic_trapezoid: need at least one node");
  QuadratureRule q;
  q.nodes.resize(n);
  q.weights.assign(n, 2.0 * std::numbers::pi / n);
  for (int i = 0; i < n; ++i) q.nodes[i] = 2.0 * std::numbers::pi * i / n;
  return q;
}

}  // namespace heis
