#include "heis/geodesics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "heis/chart_functions.hpp"

namespace heis {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Phi without range checks; also used for t <= 0 inside difference stencils.
GroupPoint exp_map_raw(double t, double theta, double r) {
  const double s = t * chart::sinc(0.5 * r);
  const double phase = theta + 0.5 * r;
  return {s * std::cos(phase), s * std::sin(phase), 0.5 * t * t * r * chart::r_minus_sin_over_r3(r)};
}

std::array<double, 3> diff(const GroupPoint& a, const GroupPoint& b, double scale) {
  return {(a.x - b.x) * scale, (a.y - b.y) * scale, (a.z - b.z) * scale};
}

bool holonomy_ratio_is_monotone() {
  constexpr int kGrid = 4096;
  double prev = holonomy_ratio(0.0);
  for (int i = 1; i < kGrid; ++i) {
    const double v = holonomy_ratio(kTwoPi * i / kGrid);
    if (!(v > prev)) return false;
    prev = v;
  }
  return true;
}

// Solves holonomy_ratio(r) = q for r in [0, 2 pi), q >= 0.
double solve_holonomy(double q) {
  static const bool monotone = holonomy_ratio_is_monotone();
  if (!monotone) throw std::logic_error("holonomy ratio is not monotone on the grid");
  double lo = 0.0, hi = kTwoPi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (holonomy_ratio(mid) < q)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-15) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

void GeodesicCoordinates::validate() const {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("GeodesicCoordinates: t must be positive");
  if (!(std::abs(r) < kTwoPi)) throw std::invalid_argument("GeodesicCoordinates: r must lie in (-2pi, 2pi)");
  if (!std::isfinite(theta)) throw std::invalid_argument("GeodesicCoordinates: theta must be finite");
}

GroupPoint exp_map(const GeodesicCoordinates& c) {
  c.validate();
  return exp_map_raw(c.t, c.theta, c.r);
}

double mu(double r) {
  if (!(std::abs(r) <= kTwoPi + 1e-12)) throw std::invalid_argument("mu: |r| must not exceed 2pi");
  return chart::mu_density(r);
}

double w_coeff(double r) {
  if (r == 0.0) throw std::invalid_argument("w_coeff: pole at r = 0");
  if (!(std::abs(r) < kTwoPi)) throw std::invalid_argument("w_coeff: r must lie in (-2pi, 2pi)");
  const double x = 0.5 * r;
  return chart::sinc(x) / (x * chart::sin_minus_xcos_over_x3(x));
}

double holonomy_ratio(double r) {
  const double s = chart::sinc(0.5 * r);
  return 0.5 * r * chart::r_minus_sin_over_r3(r) / (s * s);
}

double jacobian_det(const GeodesicCoordinates& c, double h) {
  c.validate();
  const double inv = 0.5 / h;
  const auto dt = diff(exp_map_raw(c.t + h, c.theta, c.r), exp_map_raw(c.t - h, c.theta, c.r), inv);
  const auto dth = diff(exp_map_raw(c.t, c.theta + h, c.r), exp_map_raw(c.t, c.theta - h, c.r), inv);
  const auto dr = diff(exp_map_raw(c.t, c.theta, c.r + h), exp_map_raw(c.t, c.theta, c.r - h), inv);
  Eigen::Matrix3d J;
  J << dt[0], dth[0], dr[0],
       dt[1], dth[1], dr[1],
       dt[2], dth[2], dr[2];
  return J.determinant();
}

std::optional<GeodesicCoordinates> chart_inverse(const GroupPoint& p) {
  const double rho2 = p.x * p.x + p.y * p.y;
  if (rho2 == 0.0) return std::nullopt;
  const double rho = std::sqrt(rho2);
  double r = 0.0;
  if (p.z != 0.0) r = std::copysign(solve_holonomy(std::abs(p.z) / rho2), p.z);
  const double t = rho / chart::sinc(0.5 * r);
  double theta = std::atan2(p.y, p.x) - 0.5 * r;
  theta = std::fmod(theta, kTwoPi);
  if (theta < 0.0) theta += kTwoPi;
  return GeodesicCoordinates{t, theta, r};
}

double distance_from_origin(const GroupPoint& p) {
  const double rho2 = p.x * p.x + p.y * p.y;
  if (p.z == 0.0) return std::sqrt(rho2);
  if (rho2 == 0.0) return 2.0 * std::sqrt(std::numbers::pi * std::abs(p.z));
  return chart_inverse(p)->t;
}

ChartVector perpendicular_field(const GeodesicCoordinates& c) {
  c.validate();
  if (c.r == 0.0) throw std::invalid_argument("perpendicular_field: undefined at r = 0");
  const double x = 0.5 * c.r;
  // (r/t) (r - sin r)/(r sin r + 2 cos r - 2) and (r/t) w(r), in cancellation-free form
  const double dtheta = -chart::r_minus_sin_over_r3(c.r) / (c.t * chart::mu_density(c.r));
  const double dr = 2.0 * chart::sinc(x) / (c.t * chart::sin_minus_xcos_over_x3(x));
  return {0.0, dtheta, dr};
}

GradientFrame gradient_frame(const GeodesicCoordinates& c) {
  c.validate();
  GradientFrame f;
  f.radial = {1.0, 0.0, c.r / c.t};
  if (c.r != 0.0) f.perpendicular = perpendicular_field(c);
  return f;
}

std::array<double, 3> push_forward(const GeodesicCoordinates& c, const ChartVector& v, double h) {
  c.validate();
  const auto plus = exp_map_raw(c.t + h * v[0], c.theta + h * v[1], c.r + h * v[2]);
  const auto minus = exp_map_raw(c.t - h * v[0], c.theta - h * v[1], c.r - h * v[2]);
  return diff(plus, minus, 0.5 / h);
}

double FrameComponents::horizontal_norm() const { return std::hypot(a, b); }

FrameComponents frame_components(const GroupPoint& p, const std::array<double, 3>& v) {
  FrameComponents f;
  f.a = v[0];
  f.b = v[1];
  f.c = v[2] + 0.5 * f.a * p.y - 0.5 * f.b * p.x;
  return f;
}

double geodesic_horizontality(double theta0, double h0, int samples, double h, std::optional<double> t_end) {
  if (samples < 1) throw std::invalid_argument("geodesic_horizontality: need at least one sample");
  double end = 3.0;
  if (h0 != 0.0) end = std::min(end, 0.999 * kTwoPi / std::abs(h0));
  if (t_end) end = *t_end;
  if (h0 != 0.0 && !(end * std::abs(h0) < kTwoPi))
    throw std::invalid_argument("geodesic_horizontality: t h0 leaves (-2pi, 2pi)");

  const auto curve = [&](double t) { return exp_map_raw(t, theta0, t * h0); };
  double worst = 0.0;
  for (int i = 1; i <= samples; ++i) {
    const double t = end * i / samples;
    const GroupPoint p = curve(t);
    const auto v = diff(curve(t + h), curve(t - h), 0.5 / h);
    const double horiz = std::abs(v[2] - 0.5 * (p.x * v[1] - p.y * v[0]));
    const double speed = std::abs(std::hypot(v[0], v[1]) - 1.0);
    worst = std::max(worst, horiz + speed);
  }
  return worst;
}

}  // namespace heis
