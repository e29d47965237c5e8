#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "heis/group.hpp"
#include "heis/quadrature.hpp"

namespace heis {

/// Plancherel density |lambda| / (4 pi^2) for the representation e^{i lambda (z - y xi + xy/2)} u(xi - x).
double plancherel_density(double lambda);

/// Truncated (n, m, lambda) grid. Weights carry the Plancherel density
/// times the lambda-quadrature weight.
struct SpectralGrid {
  int truncation = 1;
  std::vector<double> lambda_nodes;
  std::vector<double> lambda_weights;

  std::size_t size() const { return lambda_nodes.size(); }
  /// Throws std::invalid_argument if any invariant is broken.
  void validate() const;
  /// Index of the node at -lambda_k.
  std::size_t mirror(std::size_t k) const { return lambda_nodes.size() - 1 - k; }

  /// Symmetric geometric nodes in [-lambda_max, -lambda_min] U [lambda_min, lambda_max],
  /// `per_side` on each side, trapezoidal weights times plancherel_density.
  static SpectralGrid geometric(int truncation, double lambda_min, double lambda_max, int per_side);
};

/// f~^{lambda_k}(n, m) stored dense, row-major in (n, m, k).
struct SpectralCoefficients {
  SpectralGrid grid;
  std::vector<cplx> values;

  explicit SpectralCoefficients(SpectralGrid g);

  std::size_t index(int n, int m, std::size_t k) const {
    return (static_cast<std::size_t>(n) * grid.truncation + m) * grid.size() + k;
  }
  cplx& operator()(int n, int m, std::size_t k) { return values[index(n, m, k)]; }
  const cplx& operator()(int n, int m, std::size_t k) const { return values[index(n, m, k)]; }
};

/// Cube [-halfwidth, halfwidth]^3 sampled by a composite Gauss-Legendre rule per axis.
struct QuadratureBox {
  double halfwidth = 6.0;
  int nodes = 64;

  QuadratureRule axis_rule() const;
};

/// Rule for the xi-integral defining matrix coefficients at frequency lambda:
/// composite Gauss-Legendre on [-R, R], R tracking the Hermite envelope
/// (scaled by |lambda|^{-1/2}) and the panel count the oscillation of the
/// phase for |y| <= y_extent.
QuadratureRule xi_rule(double lambda, int truncation, double x_extent, double y_extent);

/// X_p(n, m, lambda) for all n, m < truncation.
Eigen::MatrixXcd rep_matrix(const GroupPoint& p, int truncation, double lambda);

/// Same, with a caller-supplied xi rule.
Eigen::MatrixXcd rep_matrix(const GroupPoint& p, int truncation, double lambda, const QuadratureRule& xi);

/// X_p(n, m, lambda) = int e^{i lambda (z - y xi + x y / 2)} H_{m,lambda}(xi - x) H_{n,lambda}(xi) dxi.
cplx rep_coefficient(const GroupPoint& p, int n, int m, double lambda);

/// f~^{lambda_k}(n, m) = int f(p) X_{p^{-1}}(n, m, lambda_k) dp over the box.
/// Sum-factorized kernel, parallel over lambda nodes; bitwise deterministic.
SpectralCoefficients forward_transform(const ScalarField& f, const SpectralGrid& grid, const QuadratureBox& box);

/// Same kernel without threading.
SpectralCoefficients forward_transform_serial(const ScalarField& f, const SpectralGrid& grid, const QuadratureBox& box);

/// Direct tensor quadrature, one matrix coefficient per spatial node. Slow; kept
/// as an independent check of the factorized kernels.
SpectralCoefficients forward_transform_reference(const ScalarField& f, const SpectralGrid& grid,
                                                 const QuadratureBox& box);

/// Fourier inversion: sum_{n,m,k} c(n,m,k) X_p(m, n, lambda_k) w_k, which equals
/// sum c(n,m,k) conj(X_{p^{-1}}(n, m, lambda_k)) w_k.
cplx inverse_transform(const SpectralCoefficients& c, const GroupPoint& p);

/// The transpose pairing sum_{n,m,k} c(n,m,k) X_{p^{-1}}(n,m,lambda_k) w_k. Applied
/// to f~ it reproduces f(x, -y, -z) rather than f(p).
cplx transpose_transform(const SpectralCoefficients& c, const GroupPoint& p);

double plancherel_norm(const SpectralCoefficients& c);

/// Multiplies cell (n, m, k) by |lambda_k| (2n + 1) + shift.
SpectralCoefficients sublaplacian_multiplier(const SpectralCoefficients& c, cplx shift);

/// Direct L^2 norm of f over the box by tensor Gauss-Legendre.
double direct_l2_norm(const ScalarField& f, const QuadratureBox& box);

std::string to_json(const SpectralCoefficients& c);
SpectralCoefficients spectral_from_json(const std::string& text);

}  // namespace heis
