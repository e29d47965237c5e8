#pragma once

#include <string>
#include <utility>
#include <vector>

#include "heis/group.hpp"

namespace heis {

/// Upper bound for the Hardy constant quoted for the Heisenberg group.
inline constexpr double kClaimedHardyBound = 0.798;

/// Quotient sweep used by the report.
inline const std::vector<double> kDefaultAlphaSweep = {-2.9, -2.5, -2.2, -2.1, -2.05, -2.01};

/// gamma_alpha(r) = 2^{alpha/2} ((r^2 - 2 r sin r - 2 cos r + 2)^{1/4} / |r|)^alpha; 1 at r = 0.
double gamma_alpha(double alpha, double r);

/// eta(r) = r^2 (1 - cos r) / (2 (r^2 - 2 r sin r - 2 cos r + 2)); 1 at r = 0, 0 at |r| = 2 pi.
double eta(double r);

/// |grad_H N|^2 in the exponential chart: (1 - cos r) / sqrt(r^2 - 2 r sin r - 2 cos r + 2).
double koranyi_gradient_sq(double r);

struct HardyReport {
  double ratio = 0.0;
  double numerator = 0.0;    // int gamma_{-2} eta mu dr
  double denominator = 0.0;  // int gamma_{-2} mu dr
  int quadrature_nodes = 0;
  double refined_ratio = 0.0;  // same quotient at twice the nodes
  bool converged = false;      // |refined_ratio - ratio| < 1e-8
  std::vector<std::pair<double, double>> alpha_sweep;
  double bound_claimed = kClaimedHardyBound;

  std::string to_json() const;
};

/// Computes int gamma_{-2} eta mu / int gamma_{-2} mu over (-2pi, 2pi) with
/// `nodes` Gauss-Legendre points, plus the refinement at 2 * nodes. The alpha sweep is
/// left empty. Throws for nodes < 1.
HardyReport hardy_ratio(int nodes);

/// The trial-function quotient int |grad_H u_alpha|^2 / int u_alpha^2 / delta^2 for
/// u_alpha = chi(t / s) N^{alpha/2}(s, theta, r) on t <= s and N^{alpha/2} beyond,
/// with s = cutoff_scale and chi the quintic smoothstep on [1/2, 1].
/// Requires -3 <= alpha < -2.
double quotient_for_alpha(double alpha, double cutoff_scale = 1.0, int nodes = 256);

/// A test function with its support contained in the Koranyi shell
/// n_inner <= N <= n_outer (n_inner > 0).
struct HardyTestFunction {
  std::string name;
  ScalarField u;
  double n_inner = 0.5;
  double n_outer = 2.0;
};

struct GarofaloTerms {
  double energy = 0.0;     // int |grad_H u|^2
  double potential = 0.0;  // int u^2 |grad_H N|^2 / N^2
  double defect() const { return energy - potential; }
};

struct GarofaloResolution {
  int r_nodes = 96;
  int theta_nodes = 64;
  int t_nodes = 128;
};

/// Both sides of the Koranyi-weight Hardy inequality for one test function,
/// by quadrature over the exponential chart. Throws if the function's declared
/// shell or its value at the origin touches the origin.
GarofaloTerms garofalo_terms(const HardyTestFunction& f, const GarofaloResolution& res = {});

/// Defects energy - potential, one per test function.
std::vector<double> koranyi_hardy_check(const std::vector<HardyTestFunction>& testfns,
                                        const GarofaloResolution& res = {});

/// Ten built-in test functions (radial bumps, off-center bumps, angular and
/// vertical modulations, and a near-extremal N^{-1} profile).
std::vector<HardyTestFunction> builtin_hardy_test_functions();

/// The quintic smoothstep used as the cutoff (0 below 1/2, 1 above 1).
double cutoff_chi(double t);
double cutoff_chi_derivative(double t);

}  // namespace heis
