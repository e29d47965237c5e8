#include "heis/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace heis {

void HermiteBasisSpec::validate() const {
  if (lambda == 0.0 || !std::isfinite(lambda)) throw std::invalid_argument("HermiteBasisSpec: lambda must be nonzero");
  if (truncation < 1) throw std::invalid_argument("HermiteBasisSpec: truncation must be >= 1");
}

std::vector<double> hermite_all(int count, double xi) {
  std::vector<double> h(std::max(count, 0));
  if (count <= 0) return h;
  h[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * xi * xi);
  if (count > 1) h[1] = std::sqrt(2.0) * xi * h[0];
  for (int k = 1; k + 1 < count; ++k)
    h[k + 1] = std::sqrt(2.0 / (k + 1)) * xi * h[k] - std::sqrt(static_cast<double>(k) / (k + 1)) * h[k - 1];
  return h;
}

double hermite_eval(int n, double xi) {
  if (n < 0) throw std::invalid_argument("hermite_eval: n must be >= 0");
  double h0 = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * xi * xi);
  if (n == 0) return h0;
  double h1 = std::sqrt(2.0) * xi * h0;
  for (int k = 1; k < n; ++k) {
    const double h2 = std::sqrt(2.0 / (k + 1)) * xi * h1 - std::sqrt(static_cast<double>(k) / (k + 1)) * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

double rescaled_hermite_eval(int n, double lambda, double xi) {
  if (lambda == 0.0) throw std::invalid_argument("rescaled_hermite_eval: lambda must be nonzero");
  const double a = std::abs(lambda);
  return std::pow(a, 0.25) * hermite_eval(n, std::sqrt(a) * xi);
}

std::vector<double> rescaled_hermite_all(int count, double lambda, double xi) {
  if (lambda == 0.0) throw std::invalid_argument("rescaled_hermite_all: lambda must be nonzero");
  const double a = std::abs(lambda);
  auto h = hermite_all(count, std::sqrt(a) * xi);
  const double s = std::pow(a, 0.25);
  for (double& v : h) v *= s;
  return h;
}

Eigen::MatrixXd position_matrix(const HermiteBasisSpec& spec) {
  spec.validate();
  const int N = spec.truncation;
  const double c = std::copysign(std::sqrt(std::abs(spec.lambda)), spec.lambda);
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(N, N);
  for (int n = 0; n + 1 < N; ++n) X(n, n + 1) = X(n + 1, n) = c * std::sqrt((n + 1) / 2.0);
  return X;
}

Eigen::MatrixXd derivative_matrix(const HermiteBasisSpec& spec) {
  spec.validate();
  const int N = spec.truncation;
  const double c = std::sqrt(std::abs(spec.lambda));
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(N, N);
  for (int n = 0; n + 1 < N; ++n) {
    D(n, n + 1) = c * std::sqrt((n + 1) / 2.0);
    D(n + 1, n) = -D(n, n + 1);
  }
  return D;
}

double oscillator_residual(int n, double lambda, std::optional<double> eigenvalue) {
  if (n < 0) throw std::invalid_argument("oscillator_residual: n must be >= 0");
  const HermiteBasisSpec spec{lambda, n + 3};
  spec.validate();
  const Eigen::MatrixXd D = derivative_matrix(spec);
  const Eigen::MatrixXd X = position_matrix(spec);
  const Eigen::VectorXd coeffs = (D * D - X * X).col(n);
  const double E = eigenvalue.value_or((2.0 * n + 1.0) * std::abs(lambda));

  const double a = std::abs(lambda);
  const double R = (std::sqrt(2.0 * n + 1.0) + 5.0) / std::sqrt(a);
  constexpr int kSamples = 401;
  double worst = 0.0, scale = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double xi = -R + 2.0 * R * i / (kSamples - 1);
    const auto h = rescaled_hermite_all(spec.truncation, lambda, xi);
    double lhs = 0.0;
    for (int k = 0; k < spec.truncation; ++k) lhs += coeffs(k) * h[k];
    worst = std::max(worst, std::abs(lhs + E * h[n]));
    scale = std::max(scale, std::abs(h[n]));
  }
  return worst / scale;
}

}  // namespace heis
