#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace heis {

/// Frequency lambda != 0 and the number of basis functions kept (indices 0..N-1).
struct HermiteBasisSpec {
  double lambda = 1.0;
  int truncation = 1;

  void validate() const;
};

/// L^2-normalized Hermite function H_n(xi) = (2^n n! sqrt(pi))^{-1/2} h_n(xi) e^{-xi^2/2},
/// by the three-term recurrence on normalized functions.
double hermite_eval(int n, double xi);

/// H_0(xi), ..., H_{count-1}(xi).
std::vector<double> hermite_all(int count, double xi);

/// |lambda|^{1/4} H_n(|lambda|^{1/2} xi). Throws for lambda == 0.
double rescaled_hermite_eval(int n, double lambda, double xi);

/// H_{0,lambda}(xi), ..., H_{count-1,lambda}(xi).
std::vector<double> rescaled_hermite_all(int count, double lambda, double xi);

/// Matrix of multiplication by lambda*xi in the rescaled basis (column m holds
/// the expansion of lambda xi H_{m,lambda}). Tridiagonal, zero diagonal, symmetric.
Eigen::MatrixXd position_matrix(const HermiteBasisSpec& spec);

/// Matrix of d/dxi in the rescaled basis. Tridiagonal and antisymmetric.
Eigen::MatrixXd derivative_matrix(const HermiteBasisSpec& spec);

/// Relative residual of (d^2 - lambda^2 xi^2) H_{n,lambda} = -E H_{n,lambda} on a
/// xi-sample, with E = (2n+1)|lambda| unless overridden. The second derivative
/// is taken through the exact recurrence matrices.
double oscillator_residual(int n, double lambda, std::optional<double> eigenvalue = std::nullopt);

}  // namespace heis
