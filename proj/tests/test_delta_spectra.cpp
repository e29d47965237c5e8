#include <doctest.h>

#include <cmath>
#include <numbers>

#include "heis/delta_spectra.hpp"
#include "heis/ncft.hpp"

using namespace heis;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

// Closed form of partial_norm for the pure delta_0 candidate.
double identity_oracle(int N, double lo, double hi) {
  double s = 0.0;
  for (int n = 0; n < N; ++n) {
    const double a = 2.0 * n + 1.0;
    s += std::log((hi * hi * a * a + 1.0) / (lo * lo * a * a + 1.0)) / (4.0 * kPi * a * a);
  }
  return s;
}

// Central difference of p -> X_{p^{-1}}(n, m, lambda) at the origin along one coordinate.
cplx fd_derivative(int axis, int n, int m, double lambda, double h) {
  GroupPoint a{}, b{};
  (axis == 0 ? a.x : axis == 1 ? a.y : a.z) = h;
  (axis == 0 ? b.x : axis == 1 ? b.y : b.z) = -h;
  return (rep_coefficient(group_inv(a), n, m, lambda) - rep_coefficient(group_inv(b), n, m, lambda)) / (2.0 * h);
}

}  // namespace

TEST_CASE("stated entries of first-order operators") {
  const BandedSpectralOperator z = build_B({0, 0, 1}, 5);
  CHECK((z.entries + I * Eigen::MatrixXcd::Identity(5, 5)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(z.abs_exponent == 0.0);
  CHECK(z.sgn_exponent == 1);
  const BandedSpectralOperator y = build_B({0, 1, 0}, 4);
  CHECK(y.entries(0, 1) == I * std::sqrt(0.5));
  CHECK(y.entries(1, 0) == I * std::sqrt(0.5));
  CHECK(y.abs_exponent == 0.5);
  CHECK(y.sgn_exponent == 0);
  const BandedSpectralOperator x = build_B({1, 0, 0}, 4);
  CHECK(x.entries(0, 1) == std::sqrt(0.5));
  CHECK(x.entries(1, 0) == -std::sqrt(0.5));
  CHECK(x.entries(2, 1) == -1.0);
  CHECK(x.abs_exponent == 0.5);
}

TEST_CASE("band property for every multi-index up to order 6") {
  for (int a1 = 0; a1 <= 6; ++a1)
    for (int a2 = 0; a1 + a2 <= 6; ++a2)
      for (int a3 = 0; a1 + a2 + a3 <= 6; ++a3) {
        const MultiIndex a{a1, a2, a3};
        const BandedSpectralOperator op = build_B(a, 32);
        CHECK(band_check(op));
        for (int n = 0; n < 32; ++n)
          for (int m = 0; m < 32; ++m)
            if (std::abs(n - m) > a.band()) CHECK(op.entries(n, m) == cplx{});
        // Extreme band entries are nonzero away from the truncation edge.
        const int b = a.band();
        for (int n = 0; n + b < 32 - b; ++n) {
          CHECK(op.entries(n, n + b) != cplx{});
          CHECK(op.entries(n + b, n) != cplx{});
        }
      }
  const BandedSpectralOperator yy = build_B({0, 2, 0}, 8);
  CHECK(band_check(yy));
  CHECK(yy.entries(0, 2) != cplx{});
  BandedSpectralOperator zzz = build_B({0, 0, 3}, 6);
  CHECK(band_check(zzz));
  CHECK(zzz.entries(0, 1) == cplx{});
  BandedSpectralOperator corrupted = build_B({1, 1, 0}, 8);
  corrupted.entries(1, 4) = 1e-300;
  CHECK_FALSE(band_check(corrupted));
}

TEST_CASE("composition law with interior entries exact") {
  const int N = 32;
  const Eigen::MatrixXcd Y = build_B({0, 1, 0}, N + 6).entries;
  for (int a2 = 0; a2 <= 6; ++a2)
    for (int a3 = 0; a2 + a3 <= 6; ++a3) {
      Eigen::MatrixXcd P = build_B({0, 0, a3}, N + 6).entries;
      for (int k = 0; k < a2; ++k) P = Y * P;
      const Eigen::MatrixXcd B = build_B({0, a2, a3}, N).entries;
      for (int n = 0; n < N; ++n)
        for (int m = 0; m < N; ++m)
          CHECK(std::abs(B(n, m) - P(n, m)) <= 1e-14 * std::max(1.0, std::abs(B(n, m))));
    }
}

TEST_CASE("delta coefficients") {
  for (double lam : {-3.0, 0.2, 5.0})
    for (int n = 0; n < 5; ++n)
      for (int m = 0; m < 5; ++m) CHECK(delta_coefficients({0, 0, 0}, n, m, lam) == cplx(n == m ? 1.0 : 0.0));
  CHECK(std::abs(delta_coefficients({0, 1, 0}, 0, 1, 4.0) - I * std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("homogeneity in lambda") {
  for (const MultiIndex& a : {MultiIndex{1, 0, 0}, MultiIndex{0, 1, 2}, MultiIndex{2, 1, 1}, MultiIndex{0, 0, 3}})
    for (double lam : {-2.5, -0.3, 0.7, 4.0})
      for (int n = 0; n < 6; ++n)
        for (int m = 0; m < 6; ++m) {
          const cplx one = delta_coefficients(a, n, m, 1.0);
          if (std::abs(one) == 0.0) continue;
          const double expected = std::pow(std::abs(lam), 0.5 * a.band()) * std::pow(lam, a.a3);
          CHECK(std::abs(delta_coefficients(a, n, m, lam) / one - expected) < 1e-12 * std::abs(expected));
        }
}

TEST_CASE("first-order coefficients match finite differences of matrix coefficients") {
  const double lam = 1.7;
  for (int axis = 0; axis < 3; ++axis) {
    const MultiIndex a{axis == 0, axis == 1, axis == 2};
    double previous = 1.0;
    for (double h : {2e-2, 1e-2, 5e-3}) {
      double err = 0.0;
      for (int n = 0; n < 4; ++n)
        for (int m = 0; m < 4; ++m) err = std::max(err, std::abs(fd_derivative(axis, n, m, lam, h) - delta_coefficients(a, n, m, lam)));
      CHECK(err < 5.0 * h * h);
      if (previous < 1.0 && previous > 1e-12) CHECK(err < previous / 3.0);
      previous = err;
    }
  }
}

TEST_CASE("for negative lambda the y-derivative carries sgn(lambda)") {
  const double lam = -1.7, h = 1e-4;
  for (int n = 0; n < 4; ++n)
    for (int m = 0; m < 4; ++m) {
      CHECK(std::abs(fd_derivative(0, n, m, lam, h) - delta_coefficients({1, 0, 0}, n, m, lam)) < 1e-7);
      CHECK(std::abs(fd_derivative(1, n, m, lam, h) + delta_coefficients({0, 1, 0}, n, m, lam)) < 1e-7);
      CHECK(std::abs(fd_derivative(2, n, m, lam, h) - delta_coefficients({0, 0, 1}, n, m, lam)) < 1e-7);
    }
}

TEST_CASE("deficiency candidate values") {
  CHECK_THROWS_AS(DeficiencyCandidate({{MultiIndex{0, 0, 0}, cplx{}}}, 2), std::invalid_argument);
  CHECK_THROWS_AS(DeficiencyCandidate({}, 2), std::invalid_argument);
  const DeficiencyCandidate id({{MultiIndex{0, 0, 0}, 1.0}}, 3);
  for (double lam : {-4.0, 0.5, 3.0})
    for (int n = 0; n < 3; ++n)
      for (int m = 0; m < 3; ++m) {
        const cplx expected = n == m ? 1.0 / (std::abs(lam) * (2.0 * n + 1.0) + I) : cplx{};
        CHECK(std::abs(deficiency_values(id, n, m, lam) - expected) < 1e-15);
      }
  CHECK(std::norm(deficiency_values(id, 0, 0, 2.0)) == doctest::Approx(1.0 / 5.0));
}

TEST_CASE("partial norm matches the closed-form oracle") {
  for (int N : {1, 3, 8}) {
    const DeficiencyCandidate id({{MultiIndex{0, 0, 0}, 1.0}}, N);
    for (auto [lo, hi] : {std::pair{1.0, 1e3}, std::pair{0.01, 1e6}, std::pair{1.0, 1e9}}) {
      const double oracle = identity_oracle(N, lo, hi);
      CHECK(std::abs(partial_norm(id, lo, hi) - oracle) <= 1e-8 * oracle);
    }
    CHECK(partial_norm(id, 5.0, 5.0) == 0.0);
  }
  const DeficiencyCandidate scaled({{MultiIndex{0, 0, 0}, cplx(0.0, 2.0)}}, 1);
  CHECK(partial_norm(scaled, 1.0, 1e4) == doctest::Approx(4.0 * identity_oracle(1, 1.0, 1e4)).epsilon(1e-10));
}

TEST_CASE("partial norm grows by equal increments per decade and is monotone") {
  const DeficiencyCandidate id({{MultiIndex{0, 0, 0}, 1.0}}, 1);
  const double a = partial_norm(id, 1.0, 1e3), b = partial_norm(id, 1.0, 1e6), c = partial_norm(id, 1.0, 1e9);
  CHECK((b - a) == doctest::Approx(c - b).epsilon(1e-6));
  CHECK((c - b) / (3.0 * std::log(10.0)) == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-6));
  const DeficiencyCandidate mixed({{MultiIndex{1, 0, 0}, 1.0}, {MultiIndex{0, 1, 0}, cplx(0.0, 0.5)}}, 4);
  double prev = 0.0;
  for (double hi : {10.0, 100.0, 1e3, 1e4}) {
    const double v = partial_norm(mixed, 1.0, hi);
    CHECK(v >= prev);
    prev = v;
  }
  double prevN = 0.0;
  for (int N : {2, 3, 4, 6}) {
    const double v = partial_norm(DeficiencyCandidate({{MultiIndex{0, 1, 0}, 1.0}}, N), 1.0, 1e3);
    CHECK(v >= prevN);
    prevN = v;
  }
}

TEST_CASE("divergence report") {
  const std::vector<double> cutoffs{1e3, 1e4, 1e5, 1e6, 1e7, 1e8, 1e9};
  const DivergenceReport id = divergence_report(DeficiencyCandidate({{MultiIndex{0, 0, 0}, 1.0}}, 1), cutoffs);
  REQUIRE(id.rows.size() == cutoffs.size());
  CHECK(std::isnan(id.rows[0].slope_estimate));
  CHECK(id.fitted_slope == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(0.05));
  CHECK(id.stable);
  const std::vector<std::vector<std::pair<MultiIndex, cplx>>> candidates{
      {{MultiIndex{0, 1, 0}, 1.0}},
      {{MultiIndex{1, 0, 0}, 1.0}, {MultiIndex{0, 0, 1}, cplx(0.0, 0.5)}},
      {{MultiIndex{0, 0, 0}, 1.0}, {MultiIndex{2, 0, 0}, -1.0}},
      {{MultiIndex{1, 1, 0}, cplx(0.3, 0.4)}}};
  const std::vector<double> short_cutoffs{1e2, 1e3, 1e4, 1e5};
  for (const auto& c : candidates)
    CHECK(divergence_report(DeficiencyCandidate(c, 4), short_cutoffs).fitted_slope > 0.0);
  CHECK_THROWS_AS(divergence_report(DeficiencyCandidate({{MultiIndex{0, 0, 0}, 1.0}}, 1), {1e3, 1e2}), std::invalid_argument);
}

TEST_CASE("lower-bound witness") {
  const LowerBoundWitness w = lower_bound_witness(DeficiencyCandidate({{MultiIndex{0, 0, 0}, 1.0}}, 3), 10.0, 1e6);
  CHECK(w.constant == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(w.n0 == w.m0);
  const LowerBoundWitness m =
      lower_bound_witness(DeficiencyCandidate({{MultiIndex{0, 1, 0}, 1.0}, {MultiIndex{0, 0, 1}, 0.2}}, 4), 10.0, 1e6);
  CHECK(m.constant > 0.0);
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(build_B({1, 1, 0}, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_B({0, 0, 0}, 65), std::invalid_argument);
  CHECK_THROWS_AS(build_B({4, 3, 0}, 32), std::invalid_argument);
  CHECK_THROWS_AS(build_B({-1, 0, 0}, 8), std::invalid_argument);
}
