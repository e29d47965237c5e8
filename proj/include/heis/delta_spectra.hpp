#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "heis/group.hpp"

namespace heis {

inline constexpr int kMaxMultiIndexOrder = 6;
inline constexpr int kMaxDeltaTruncation = 64;

struct MultiIndex {
  int a1 = 0, a2 = 0, a3 = 0;

  int order() const { return a1 + a2 + a3; }
  int band() const { return a1 + a2; }
  void validate(int max_order = kMaxMultiIndexOrder) const;

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
};

/// Fourier coefficients of D^alpha delta_0: |lambda|^{abs_exponent} lambda^{sgn_exponent} entries.
struct BandedSpectralOperator {
  MultiIndex alpha;
  Eigen::MatrixXcd entries;  // lambda-independent part B_alpha(n, m)
  double abs_exponent = 0.0;
  int sgn_exponent = 0;

  int truncation() const { return static_cast<int>(entries.rows()); }
  /// |lambda|^{abs_exponent} lambda^{sgn_exponent}
  double homogeneity(double lambda) const;
};

/// B_alpha composed as (x-factor)^{a1} (y-factor)^{a2} (-i)^{a3} I,
/// assembled at truncation N + |alpha| and cropped to N. Requires N >= a1 + a2 + 1.
BandedSpectralOperator build_B(const MultiIndex& alpha, int N);

/// True iff every entry with |n - m| > a1 + a2 is exactly zero and some entry is nonzero.
bool band_check(const BandedSpectralOperator& op);

/// (D^alpha delta_0)~^lambda(n, m).
cplx delta_coefficients(const MultiIndex& alpha, int n, int m, double lambda);

/// Nonzero combination sum_alpha c_alpha D^alpha delta_0 and the candidate deficiency
/// element theta~ = Q / (|lambda| (2n + 1) + i) it induces.
class DeficiencyCandidate {
 public:
  /// Throws std::invalid_argument when every coefficient vanishes.
  DeficiencyCandidate(std::vector<std::pair<MultiIndex, cplx>> coefficients, int truncation);

  int truncation() const { return truncation_; }
  const std::vector<std::pair<MultiIndex, cplx>>& coefficients() const { return coefficients_; }

  /// Q_{n,m}(lambda) = sum c_alpha |lambda|^{(a1+a2)/2} lambda^{a3} B_alpha(n, m).
  cplx numerator(int n, int m, double lambda) const;

 private:
  std::vector<std::pair<MultiIndex, cplx>> coefficients_;
  std::vector<BandedSpectralOperator> operators_;
  int truncation_;
};

cplx deficiency_values(const DeficiencyCandidate& cand, int n, int m, double lambda);

/// sum_{n,m < N} int_{lo <= |lambda| <= hi} |theta~|^2 |lambda| / (4 pi) dlambda.
double partial_norm(const DeficiencyCandidate& cand, double lambda_lo, double lambda_hi);

struct DivergenceRow {
  double lambda_hi = 0.0;
  double partial_norm = 0.0;
  double slope_estimate = 0.0;  // NaN on the first row
};

struct DivergenceReport {
  std::vector<DivergenceRow> rows;
  double fitted_slope = 0.0;  // least squares of partial_norm on ln(lambda_hi), last three rows
  bool stable = false;        // last two successive slopes agree within 5%
};

/// cutoffs must be increasing and above lambda_lo.
DivergenceReport divergence_report(const DeficiencyCandidate& cand, const std::vector<double>& cutoffs,
                                   double lambda_lo = 1.0);

struct LowerBoundWitness {
  int n0 = 0, m0 = 0;
  double constant = 0.0;  // min over the scan of |theta~|^2 (lambda^2 (2 n0 + 1)^2 + 1)
};

/// Scans |lambda| in [lambda_from, lambda_to] (both signs, geometric) for the index pair
/// with the largest lower constant.
LowerBoundWitness lower_bound_witness(const DeficiencyCandidate& cand, double lambda_from, double lambda_to,
                                      int samples = 400);

}  // namespace heis
