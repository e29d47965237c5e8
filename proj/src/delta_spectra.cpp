#include "heis/delta_spectra.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "heis/quadrature.hpp"

namespace heis {

void MultiIndex::validate(int max_order) const {
  if (a1 < 0 || a2 < 0 || a3 < 0) throw std::invalid_argument("MultiIndex: components must be >= 0");
  if (order() > max_order) throw std::invalid_argument("MultiIndex: order exceeds the configured cap");
}

double BandedSpectralOperator::homogeneity(double lambda) const {
  return std::pow(std::abs(lambda), abs_exponent) * std::pow(lambda, sgn_exponent);
}

namespace {

// i (sqrt((n+1)/2) delta_{n+1,m} + sqrt(n/2) delta_{n,m+1})
Eigen::MatrixXcd y_factor(int M) {
  Eigen::MatrixXcd Y = Eigen::MatrixXcd::Zero(M, M);
  for (int n = 0; n + 1 < M; ++n) {
    Y(n, n + 1) = cplx(0.0, std::sqrt((n + 1) / 2.0));
    Y(n + 1, n) = cplx(0.0, std::sqrt((n + 1) / 2.0));
  }
  return Y;
}

// sqrt((n+1)/2) delta_{n+1,m} - sqrt(n/2) delta_{n,m+1}
Eigen::MatrixXcd x_factor(int M) {
  Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(M, M);
  for (int n = 0; n + 1 < M; ++n) {
    X(n, n + 1) = std::sqrt((n + 1) / 2.0);
    X(n + 1, n) = -std::sqrt((n + 1) / 2.0);
  }
  return X;
}

cplx minus_i_power(int k) {
  static const cplx table[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  return table[k % 4];
}

}  // namespace

BandedSpectralOperator build_B(const MultiIndex& alpha, int N) {
  alpha.validate();
  if (N < alpha.band() + 1) throw std::invalid_argument("build_B: truncation too small for the band");
  if (N > kMaxDeltaTruncation) throw std::invalid_argument("build_B: truncation exceeds the configured cap");

  const int M = N + alpha.order();
  Eigen::MatrixXcd B = minus_i_power(alpha.a3) * Eigen::MatrixXcd::Identity(M, M);
  const Eigen::MatrixXcd Y = y_factor(M);
  const Eigen::MatrixXcd X = x_factor(M);
  for (int k = 0; k < alpha.a2; ++k) B = Y * B;
  for (int k = 0; k < alpha.a1; ++k) B = X * B;

  BandedSpectralOperator op;
  op.alpha = alpha;
  op.entries = B.topLeftCorner(N, N);
  op.abs_exponent = 0.5 * alpha.band();
  op.sgn_exponent = alpha.a3;
  return op;
}

bool band_check(const BandedSpectralOperator& op) {
  const int N = op.truncation();
  const int band = op.alpha.band();
  bool inside_nonzero = false;
  for (int n = 0; n < N; ++n)
    for (int m = 0; m < N; ++m) {
      const bool nonzero = op.entries(n, m) != cplx{};
      if (std::abs(n - m) > band) {
        if (nonzero) return false;
      } else if (nonzero) {
        inside_nonzero = true;
      }
    }
  return inside_nonzero;
}

cplx delta_coefficients(const MultiIndex& alpha, int n, int m, double lambda) {
  if (lambda == 0.0) throw std::invalid_argument("delta_coefficients: lambda must be nonzero");
  if (n < 0 || m < 0) throw std::invalid_argument("delta_coefficients: indices must be >= 0");
  const BandedSpectralOperator op = build_B(alpha, std::max({n, m, alpha.band()}) + 1);
  return op.homogeneity(lambda) * op.entries(n, m);
}

DeficiencyCandidate::DeficiencyCandidate(std::vector<std::pair<MultiIndex, cplx>> coefficients, int truncation)
    : coefficients_(std::move(coefficients)), truncation_(truncation) {
  if (truncation_ < 1) throw std::invalid_argument("DeficiencyCandidate: truncation must be >= 1");
  bool any = false;
  for (const auto& [alpha, c] : coefficients_) {
    alpha.validate();
    any = any || c != cplx{};
  }
  if (!any) throw std::invalid_argument("DeficiencyCandidate: all coefficients vanish");
  operators_.reserve(coefficients_.size());
  for (const auto& [alpha, c] : coefficients_)
    operators_.push_back(build_B(alpha, std::max(truncation_, alpha.band() + 1)));
}

cplx DeficiencyCandidate::numerator(int n, int m, double lambda) const {
  cplx q = 0.0;
  for (std::size_t i = 0; i < operators_.size(); ++i)
    q += coefficients_[i].second * operators_[i].homogeneity(lambda) * operators_[i].entries(n, m);
  return q;
}

cplx deficiency_values(const DeficiencyCandidate& cand, int n, int m, double lambda) {
  if (lambda == 0.0) throw std::invalid_argument("deficiency_values: lambda must be nonzero");
  return cand.numerator(n, m, lambda) / cplx(std::abs(lambda) * (2.0 * n + 1.0), 1.0);
}

double partial_norm(const DeficiencyCandidate& cand, double lambda_lo, double lambda_hi) {
  if (!(lambda_lo > 0.0) || lambda_hi < lambda_lo)
    throw std::invalid_argument("partial_norm: need 0 < lambda_lo <= lambda_hi");
  if (lambda_hi == lambda_lo) return 0.0;

  // In s = ln|lambda| the measure |lambda|/(4 pi) dlambda becomes lambda^2/(4 pi) ds.
  const double s_lo = std::log(lambda_lo), s_hi = std::log(lambda_hi);
  const int panels = std::max(4, static_cast<int>(std::ceil(4.0 * (s_hi - s_lo) / std::numbers::ln10)));
  const QuadratureRule rule = composite_gauss_legendre(panels, 16, s_lo, s_hi);
  const int N = cand.truncation();

  std::vector<double> per_node(rule.size(), 0.0);
#pragma omp parallel for schedule(static)
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const double lam = std::exp(rule.nodes[j]);
    double s = 0.0;
    for (double sign : {-1.0, 1.0})
      for (int n = 0; n < N; ++n)
        for (int m = 0; m < N; ++m) s += std::norm(deficiency_values(cand, n, m, sign * lam));
    per_node[j] = rule.weights[j] * s * lam * lam / (4.0 * std::numbers::pi);
  }
  double total = 0.0;
  for (double v : per_node) total += v;
  return total;
}

DivergenceReport divergence_report(const DeficiencyCandidate& cand, const std::vector<double>& cutoffs,
                                   double lambda_lo) {
  if (cutoffs.empty()) throw std::invalid_argument("divergence_report: no cutoffs");
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    if (!(cutoffs[i] > lambda_lo)) throw std::invalid_argument("divergence_report: cutoffs must exceed lambda_lo");
    if (i > 0 && !(cutoffs[i] > cutoffs[i - 1]))
      throw std::invalid_argument("divergence_report: cutoffs must increase");
  }
  DivergenceReport rep;
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    DivergenceRow row;
    row.lambda_hi = cutoffs[i];
    row.partial_norm = partial_norm(cand, lambda_lo, cutoffs[i]);
    row.slope_estimate = i == 0 ? std::numeric_limits<double>::quiet_NaN()
                                : (row.partial_norm - rep.rows.back().partial_norm) /
                                      (std::log(cutoffs[i]) - std::log(cutoffs[i - 1]));
    rep.rows.push_back(row);
  }

  const std::size_t k = std::min<std::size_t>(3, rep.rows.size());
  if (k < 2) {
    rep.fitted_slope = std::numeric_limits<double>::quiet_NaN();
    return rep;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = rep.rows.size() - k; i < rep.rows.size(); ++i) {
    const double x = std::log(rep.rows[i].lambda_hi), y = rep.rows[i].partial_norm;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  rep.fitted_slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  if (rep.rows.size() >= 3) {
    const double a = rep.rows[rep.rows.size() - 2].slope_estimate;
    const double b = rep.rows.back().slope_estimate;
    rep.stable = a > 0 && b > 0 && std::abs(b - a) <= 0.05 * std::abs(b);
  }
  return rep;
}

LowerBoundWitness lower_bound_witness(const DeficiencyCandidate& cand, double lambda_from, double lambda_to,
                                      int samples) {
  if (!(lambda_from > 0.0) || !(lambda_to > lambda_from) || samples < 2)
    throw std::invalid_argument("lower_bound_witness: need 0 < lambda_from < lambda_to");
  LowerBoundWitness best;
  best.constant = -1.0;
  const int N = cand.truncation();
  for (int n = 0; n < N; ++n)
    for (int m = 0; m < N; ++m) {
      double lowest = std::numeric_limits<double>::infinity();
      for (int i = 0; i < samples; ++i) {
        const double lam = lambda_from * std::pow(lambda_to / lambda_from, static_cast<double>(i) / (samples - 1));
        for (double sign : {-1.0, 1.0}) {
          const double l = sign * lam;
          const double a = 2.0 * n + 1.0;
          lowest = std::min(lowest, std::norm(deficiency_values(cand, n, m, l)) * (l * l * a * a + 1.0));
        }
      }
      if (lowest > best.constant) best = {n, m, lowest};
    }
  return best;
}

}  // namespace heis
