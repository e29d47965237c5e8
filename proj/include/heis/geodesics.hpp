#pragma once

#include <array>
#include <optional>

#include "heis/group.hpp"

namespace heis {

/// Exponential-map chart (t, theta, r): t is the distance from the origin,
/// theta the initial covector angle and r the holonomy parameter.
struct GeodesicCoordinates {
  double t = 1.0;
  double theta = 0.0;
  double r = 0.0;

  /// Throws std::invalid_argument unless t > 0 and |r| < 2 pi.
  void validate() const;
};

/// Components along (d_t, d_theta, d_r).
using ChartVector = std::array<double, 3>;

GroupPoint exp_map(const GeodesicCoordinates& c);

/// Volume density: Phi^* dL^3 = t^3 mu(r) dt dtheta dr. Requires |r| <= 2 pi.
double mu(double r);

/// w(r) = r / (2 - r cot(r/2)); throws at r = 0 and for |r| >= 2 pi.
double w_coeff(double r);

/// Central-difference determinant of dPhi at c.
double jacobian_det(const GeodesicCoordinates& c, double h = 1e-5);

/// Sub-Riemannian distance from the origin (inverse of the chart in t).
double distance_from_origin(const GroupPoint& p);

/// Full chart inverse, defined off the z-axis. Returns nullopt on the axis.
std::optional<GeodesicCoordinates> chart_inverse(const GroupPoint& p);

/// The horizontal gradient of the distance and its orthogonal companion,
/// in chart components.
struct GradientFrame {
  ChartVector radial;                  // d_t + (r/t) d_r
  std::optional<ChartVector> perpendicular;  // absent at r = 0
};

/// Throws if c is invalid. The perpendicular field is omitted when r == 0.
GradientFrame gradient_frame(const GeodesicCoordinates& c);

/// Same, but the perpendicular field is required: throws at r == 0.
ChartVector perpendicular_field(const GeodesicCoordinates& c);

/// Push a chart vector forward through dPhi (central differences, step h).
std::array<double, 3> push_forward(const GeodesicCoordinates& c, const ChartVector& v, double h = 1e-6);

/// Decomposition of a tangent vector at p as a X_H + b Y_H + c Z_H.
struct FrameComponents {
  double a = 0.0, b = 0.0, c = 0.0;
  double horizontal_norm() const;
};
FrameComponents frame_components(const GroupPoint& p, const std::array<double, 3>& v);

/// Max over `samples` points t in (0, t_end] of the horizontality defect
/// |z' - (x y' - y x')/2| plus the unit-speed defect ||(x', y')| - 1| along
/// t -> Phi(t, theta0, t h0). t_end defaults to the largest t keeping |t h0| < 2 pi (capped at 3).
double geodesic_horizontality(double theta0, double h0, int samples, double h = 1e-5,
                              std::optional<double> t_end = std::nullopt);

/// The scalar z / (x^2 + y^2) as a function of r along the chart.
double holonomy_ratio(double r);

}  // namespace heis
