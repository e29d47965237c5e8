#include "heis/chart_functions.hpp"

#include <array>
#include <cmath>

namespace heis::chart {
namespace {

constexpr int kTerms = 20;

// Horner evaluation of sum_k c[k] u^k with u = r^2.
template <std::size_t N>
double even_series(const std::array<double, N>& c, double r) {
  const double u = r * r;
  double s = 0.0;
  for (std::size_t k = N; k-- > 0;) s = s * u + c[k];
  return s;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// (r - sin r)/r^3 = sum_{k>=1} (-1)^{k+1} r^{2k-2} / (2k+1)!
std::array<double, kTerms> make_r_minus_sin() {
  std::array<double, kTerms> c{};
  for (int k = 1; k <= kTerms; ++k) c[k - 1] = ((k % 2) ? 1.0 : -1.0) / factorial(2 * k + 1);
  return c;
}

// P(r)/r^4, coefficient of r^{2j} in P is 2 (-1)^j (2j-1) / (2j)!, j >= 2
std::array<double, kTerms> make_quartic() {
  std::array<double, kTerms> c{};
  for (int j = 2; j < kTerms + 2; ++j)
    c[j - 2] = 2.0 * ((j % 2) ? -1.0 : 1.0) * (2 * j - 1) / factorial(2 * j);
  return c;
}

// (2 - 2cos r - r sin r)/r^4, coefficient of r^{2j} is (-1)^j (2j-2) / (2j)!, j >= 2
std::array<double, kTerms> make_mu() {
  std::array<double, kTerms> c{};
  for (int j = 2; j < kTerms + 2; ++j) c[j - 2] = ((j % 2) ? -1.0 : 1.0) * (2 * j - 2) / factorial(2 * j);
  return c;
}

// (sin x - x cos x)/x^3 = sum_{k>=1} (-1)^{k+1} 2k x^{2k-2} / (2k+1)!
std::array<double, kTerms> make_sin_minus_xcos() {
  std::array<double, kTerms> c{};
  for (int k = 1; k <= kTerms; ++k) c[k - 1] = ((k % 2) ? 1.0 : -1.0) * 2.0 * k / factorial(2 * k + 1);
  return c;
}

// d/dr (P/r^4) = (2 r^2 (1 - cos r) - 4 P) / r^5; the bracket has coefficient
// 2 (-1)^k (2k-1)(2k-4)/(2k)! on r^{2k}, k >= 3, so the derivative is r times a series.
std::array<double, kTerms> make_quartic_derivative() {
  std::array<double, kTerms> c{};
  for (int k = 3; k < kTerms + 3; ++k)
    c[k - 3] = 2.0 * ((k % 2) ? -1.0 : 1.0) * (2 * k - 1) * (2 * k - 4) / factorial(2 * k);
  return c;
}

const std::array<double, kTerms> kRMinusSin = make_r_minus_sin();
const std::array<double, kTerms> kQuartic = make_quartic();
const std::array<double, kTerms> kMu = make_mu();
const std::array<double, kTerms> kSinMinusXCos = make_sin_minus_xcos();
const std::array<double, kTerms> kQuarticDerivative = make_quartic_derivative();

}  // namespace

double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

double r_minus_sin_over_r3(double r) {
  if (std::abs(r) < kSeriesThreshold) return even_series(kRMinusSin, r);
  return (r - std::sin(r)) / (r * r * r);
}

double quartic_over_r4(double r) {
  if (std::abs(r) < kSeriesThreshold) return even_series(kQuartic, r);
  const double r2 = r * r;
  return (r2 - 2.0 * r * std::sin(r) - 2.0 * std::cos(r) + 2.0) / (r2 * r2);
}

double quartic_over_r4_derivative(double r) {
  if (std::abs(r) < kSeriesThreshold) return r * even_series(kQuarticDerivative, r);
  const double r2 = r * r;
  const double P = r2 - 2.0 * r * std::sin(r) - 2.0 * std::cos(r) + 2.0;
  return (2.0 * r2 * (1.0 - std::cos(r)) - 4.0 * P) / (r2 * r2 * r);
}

double mu_density(double r) {
  if (std::abs(r) < kSeriesThreshold) return even_series(kMu, r);
  const double r2 = r * r;
  return (2.0 - 2.0 * std::cos(r) - r * std::sin(r)) / (r2 * r2);
}

double sin_minus_xcos_over_x3(double x) {
  if (std::abs(x) < kSeriesThreshold) return even_series(kSinMinusXCos, x);
  return (std::sin(x) - x * std::cos(x)) / (x * x * x);
}

double koranyi_profile(double r) { return std::sqrt(2.0) * std::pow(quartic_over_r4(r), 0.25); }

}  // namespace heis::chart
