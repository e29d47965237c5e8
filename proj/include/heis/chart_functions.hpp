#pragma once

// Scalar functions of the holonomy parameter r that appear in the exponential
// chart. Every function here is evaluated through a power series for small
// |r|, where the closed forms cancel catastrophically.

namespace heis::chart {

/// |r| below this switches to series evaluation.
inline constexpr double kSeriesThreshold = 1.0;

/// sin(x) / x, with value 1 at 0.
double sinc(double x);

/// (r - sin r) / r^3, value 1/6 at 0.
double r_minus_sin_over_r3(double r);

/// (r^2 - 2 r sin r - 2 cos r + 2) / r^4, value 1/4 at 0.
double quartic_over_r4(double r);

/// d/dr of quartic_over_r4; odd, about -r/36 near 0.
double quartic_over_r4_derivative(double r);

/// (2 - 2 cos r - r sin r) / r^4, value 1/12 at 0. This is the volume density mu.
double mu_density(double r);

/// (sin x - x cos x) / x^3, value 1/3 at 0.
double sin_minus_xcos_over_x3(double x);

/// N(Phi(1, theta, r)) = sqrt(2) (quartic_over_r4)^{1/4}; 1 at r = 0, 1/sqrt(pi) at |r| = 2 pi.
double koranyi_profile(double r);

}  // namespace heis::chart
