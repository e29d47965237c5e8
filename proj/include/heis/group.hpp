#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace heis {

using cplx = std::complex<double>;

/// A point (x, y, z) of the Heisenberg group, identified with R^3.
struct GroupPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const GroupPoint&, const GroupPoint&) = default;
};

/// A sampled function on the group together with the finite-difference step
/// used whenever derivatives of it are taken.
struct ScalarField {
  std::function<cplx(const GroupPoint&)> eval;
  double h = 1e-4;

  cplx operator()(const GroupPoint& p) const { return eval(p); }
};

enum class Field { X, Y, Z };

// group algebra
GroupPoint group_mul(const GroupPoint& p, const GroupPoint& q);
GroupPoint group_inv(const GroupPoint& p);
GroupPoint dilate(double lambda, const GroupPoint& p);  // throws on lambda <= 0

double koranyi_norm(const GroupPoint& p);

/// 1 / (2 pi N(p)^2), the fundamental solution of -Delta_H for this group law; throws at the origin.
double fundamental_solution(const GroupPoint& p);

/// Central-difference application of X_H, Y_H or Z_H to f at p (step f.h).
cplx apply_field(Field which, const ScalarField& f, const GroupPoint& p);

/// The field applied to f, itself returned as a field (for nested differences).
ScalarField field_of(Field which, const ScalarField& f);

/// (d_x^2 + d_y^2 + (x^2+y^2)/4 d_z^2 + (x d_y - y d_x) d_z) f at p.
cplx apply_sublaplacian(const ScalarField& f, const GroupPoint& p);

/// Integral of Gamma^2 over eps < N(p) < 1, one value per eps.
/// eps must be positive and strictly decreasing.
std::vector<double> gamma_l2_blowup(std::span<const double> epsilons, int nodes = 64);

struct WeakIdentityResult {
  double integral = 0.0;  // int Gamma (-Delta_H phi) over N > eps
  double target = 0.0;    // phi(0)
  double error() const { return integral - target; }
};

/// int_{N > eps} Gamma(p) (-Delta_H phi)(p) dp, compared to phi(0).
/// The integration runs over the exponential chart with t up to t_max.
WeakIdentityResult weak_identity(const ScalarField& phi, double eps, int nodes, double t_max = 8.0);

}  // namespace heis
