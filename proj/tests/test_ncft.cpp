#include <doctest.h>

#include <cmath>
#include <numbers>

#include "heis/group.hpp"
#include "heis/ncft.hpp"

using namespace heis;

namespace {

constexpr double kPi = std::numbers::pi;

ScalarField gaussian() {
  return {[](const GroupPoint& p) { return cplx(std::exp(-(p.x * p.x + p.y * p.y + p.z * p.z))); }};
}

// Real, not invariant under p -> p^{-1}.
ScalarField shifted_gaussian() {
  return {[](const GroupPoint& p) {
    return cplx(std::exp(-((p.x - 0.4) * (p.x - 0.4) + (p.y + 0.3) * (p.y + 0.3) + (p.z - 0.2) * (p.z - 0.2))));
  }};
}

// X_p(0, 0, lambda) = e^{i lambda z} e^{-|lambda| (x^2 + y^2) / 4}.
cplx ground_coefficient(const GroupPoint& p, double lambda) {
  return std::exp(cplx(0.0, lambda * p.z)) * std::exp(-std::abs(lambda) * (p.x * p.x + p.y * p.y) / 4.0);
}

SpectralGrid small_grid(int N) { return SpectralGrid::geometric(N, 0.3, 3.0, 3); }

}  // namespace

TEST_CASE("matrix coefficients at special points") {
  for (double lam : {-2.5, -1.0, 0.7, 3.0}) {
    const Eigen::MatrixXcd M = rep_matrix({0, 0, 0}, 6, lam);
    CHECK((M - Eigen::MatrixXcd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK(std::abs(rep_coefficient({2, 0, 0}, 0, 0, 1.0) - std::exp(-1.0)) < 1e-12);
  for (const GroupPoint& p : {GroupPoint{0.3, -0.7, 1.1}, GroupPoint{-1.2, 0.5, -0.4}, GroupPoint{0, 2, 3}})
    for (double lam : {-2.0, 0.4, 1.5}) CHECK(std::abs(rep_coefficient(p, 0, 0, lam) - ground_coefficient(p, lam)) < 1e-12);
}

TEST_CASE("representation is a homomorphism on truncated blocks") {
  const GroupPoint p{0.3, -0.2, 0.5}, q{-0.1, 0.4, 0.2};
  const double lam = 1.3;
  const int N = 40;
  const Eigen::MatrixXcd Mp = rep_matrix(p, N, lam), Mq = rep_matrix(q, N, lam), Mpq = rep_matrix(group_mul(p, q), N, lam);
  const Eigen::MatrixXcd prod = Mp * Mq;
  CHECK((prod - Mpq).topLeftCorner(6, 6).cwiseAbs().maxCoeff() < 1e-10);
  const Eigen::MatrixXcd Minv = rep_matrix(group_inv(p), N, lam);
  CHECK((Minv - Mp.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("truncated unitarity defect is nonnegative and nonincreasing") {
  double previous = 1.0;
  for (int N = 1; N <= 24; ++N) {
    const double defect = 1.0 - rep_matrix({0.5, 0.5, 0.5}, N, 1.0).col(0).squaredNorm();
    CHECK(defect >= -1e-13);
    CHECK(defect <= previous + 1e-15);
    previous = defect;
  }
  CHECK(previous < 1e-10);
}

TEST_CASE("forward transform of the Gaussian matches the closed form at (0,0)") {
  const SpectralGrid grid = small_grid(3);
  const SpectralCoefficients c = forward_transform(gaussian(), grid, QuadratureBox{6.0, 64});
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double lam = grid.lambda_nodes[k];
    const double exact = std::sqrt(kPi) * std::exp(-lam * lam / 4.0) * kPi / (1.0 + std::abs(lam) / 4.0);
    CHECK(std::abs(c(0, 0, k) - exact) < 1e-12);
  }
}

TEST_CASE("parallel, serial and reference kernels agree") {
  const SpectralGrid grid = small_grid(3);
  const QuadratureBox box{5.0, 16};
  const ScalarField f = shifted_gaussian();
  const SpectralCoefficients a = forward_transform(f, grid, box);
  const SpectralCoefficients b = forward_transform_serial(f, grid, box);
  const SpectralCoefficients r = forward_transform_reference(f, grid, box);
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    CHECK(a.values[i] == b.values[i]);
    CHECK(std::abs(a.values[i] - r.values[i]) < 1e-10);
  }
}

TEST_CASE("symmetries under lambda -> -lambda") {
  const SpectralGrid grid = small_grid(4);
  const QuadratureBox box{6.0, 40};
  const SpectralCoefficients even = forward_transform(gaussian(), grid, box);
  const SpectralCoefficients odd = forward_transform(shifted_gaussian(), grid, box);
  for (int n = 0; n < 4; ++n)
    for (int m = 0; m < 4; ++m)
      for (std::size_t k = 0; k < grid.size(); ++k) {
        const std::size_t mk = grid.mirror(k);
        CHECK(grid.lambda_nodes[mk] == -grid.lambda_nodes[k]);
        CHECK(std::abs(odd(n, m, mk) - std::conj(odd(n, m, k))) < 1e-12);
        CHECK(std::abs(even(n, m, mk) - even(m, n, k)) < 1e-12);
      }
}

TEST_CASE("linearity and zero input") {
  const SpectralGrid grid = small_grid(3);
  const QuadratureBox box{5.0, 24};
  const ScalarField f = gaussian(), g = shifted_gaussian();
  const cplx a(0.7, -0.2), b(-1.3, 0.5);
  const ScalarField h{[&](const GroupPoint& p) { return a * f(p) + b * g(p); }};
  const SpectralCoefficients cf = forward_transform(f, grid, box), cg = forward_transform(g, grid, box),
                             ch = forward_transform(h, grid, box);
  for (std::size_t i = 0; i < ch.values.size(); ++i)
    CHECK(std::abs(ch.values[i] - (a * cf.values[i] + b * cg.values[i])) < 1e-13);
  const ScalarField zero{[](const GroupPoint&) { return cplx{}; }};
  for (const cplx& v : forward_transform(zero, grid, box).values) CHECK(v == cplx{});
}

TEST_CASE("transform intertwines the sub-Laplacian with the Hermite multiplier") {
  const SpectralGrid grid = small_grid(3);
  const QuadratureBox box{6.0, 48};
  const ScalarField f = shifted_gaussian();
  const ScalarField minus_lap{[f](const GroupPoint& p) { return -apply_sublaplacian(f, p); }, 1e-4};
  const SpectralCoefficients lhs = forward_transform(minus_lap, grid, box);
  const SpectralCoefficients rhs = sublaplacian_multiplier(forward_transform(f, grid, box), 0.0);
  for (std::size_t i = 0; i < lhs.values.size(); ++i) CHECK(std::abs(lhs.values[i] - rhs.values[i]) < 1e-6);
}

TEST_CASE("Hermite multiplier") {
  SpectralGrid grid;
  grid.truncation = 4;
  grid.lambda_nodes = {-2.0, 1.0};
  grid.lambda_weights = {0.5, 0.25};
  SpectralCoefficients c(grid);
  for (auto& v : c.values) v = 1.0;
  const SpectralCoefficients m0 = sublaplacian_multiplier(c, 0.0);
  CHECK(m0(0, 0, 1) == cplx(1.0, 0.0));
  const SpectralCoefficients mi = sublaplacian_multiplier(c, cplx(0.0, 1.0));
  CHECK(mi(3, 0, 0) == cplx(14.0, 1.0));
  CHECK(mi(3, 2, 0) == cplx(14.0, 1.0));
  CHECK(plancherel_norm(mi) >= plancherel_norm(c));
  SpectralCoefficients single(grid);
  single(2, 1, 0) = 3.0;
  const SpectralCoefficients ms = sublaplacian_multiplier(single, cplx(0.0, 1.0));
  for (std::size_t i = 0; i < ms.values.size(); ++i)
    if (i != single.index(2, 1, 0)) CHECK(ms.values[i] == cplx{});
  CHECK(ms(2, 1, 0) == 3.0 * cplx(10.0, 1.0));
}

TEST_CASE("Plancherel norm of simple tensors") {
  SpectralGrid grid;
  grid.truncation = 2;
  grid.lambda_nodes = {-1.0, 1.0};
  grid.lambda_weights = {0.3, 0.7};
  SpectralCoefficients c(grid);
  CHECK(plancherel_norm(c) == 0.0);
  c(1, 0, 1) = cplx(0.6, 0.8);
  CHECK(plancherel_norm(c) == doctest::Approx(std::sqrt(0.7)));
  CHECK(plancherel_density(-2.0) == doctest::Approx(2.0 / (4.0 * kPi * kPi)));
}

TEST_CASE("inverse transform") {
  SpectralGrid grid;
  grid.truncation = 3;
  grid.lambda_nodes = {-1.5, 0.8};
  grid.lambda_weights = {0.2, 0.4};
  SpectralCoefficients c(grid);
  const GroupPoint p{0.2, -0.6, 0.9};
  CHECK(inverse_transform(c, p) == cplx{});
  c(2, 1, 1) = cplx(0.5, -0.25);
  CHECK(std::abs(inverse_transform(c, p) - c(2, 1, 1) * rep_coefficient(p, 1, 2, 0.8) * 0.4) < 1e-14);
  CHECK(std::abs(transpose_transform(c, p) - c(2, 1, 1) * rep_coefficient(group_inv(p), 2, 1, 0.8) * 0.4) < 1e-14);
}

TEST_CASE("inversion converges to f(p); the transpose pairing converges to f(x,-y,-z)") {
  const ScalarField f = shifted_gaussian();
  const GroupPoint p{0.4, -0.3, 0.2};
  const double fp = f(p).real();
  const double mirrored = f(GroupPoint{p.x, -p.y, -p.z}).real();
  REQUIRE(std::abs(mirrored - fp) > 0.3);
  double prev_inv = 1.0, prev_tr = 1.0;
  for (int N : {8, 16}) {
    const SpectralCoefficients c = forward_transform(f, SpectralGrid::geometric(N, 0.01, 10.0, 32), QuadratureBox{6.0, 40});
    const double e_inv = std::abs(inverse_transform(c, p) - fp);
    const double e_tr = std::abs(transpose_transform(c, p) - mirrored);
    CHECK(e_inv < prev_inv);
    CHECK(e_tr < prev_tr);
    prev_inv = e_inv;
    prev_tr = e_tr;
  }
  CHECK(prev_inv < 0.1);
  CHECK(prev_tr < 0.1);
}

TEST_CASE("Plancherel defect for the Gaussian decreases along the ladder") {
  const ScalarField f = gaussian();
  const QuadratureBox box{6.0, 64};
  const double direct = direct_l2_norm(f, box);
  CHECK(direct * direct == doctest::Approx(std::pow(kPi / 2.0, 1.5)).epsilon(1e-12));
  double previous = 1.0;
  for (auto [N, per_side] : {std::pair{4, 12}, std::pair{8, 24}}) {
    const double spectral = plancherel_norm(forward_transform(f, SpectralGrid::geometric(N, 0.05, 8.0, per_side), box));
    const double defect = std::abs(direct - spectral) / direct;
    CHECK(defect < previous);
    previous = defect;
  }
}

TEST_CASE("JSON round trip and invalid grids") {
  const SpectralGrid grid = small_grid(2);
  const SpectralCoefficients c = forward_transform(shifted_gaussian(), grid, QuadratureBox{5.0, 16});
  const SpectralCoefficients back = spectral_from_json(to_json(c));
  CHECK(back.grid.truncation == 2);
  CHECK(back.grid.lambda_nodes == grid.lambda_nodes);
  CHECK(back.grid.lambda_weights == grid.lambda_weights);
  CHECK(back.values == c.values);

  SpectralGrid empty;
  CHECK_THROWS_AS(empty.validate(), std::invalid_argument);
  SpectralGrid at_zero;
  at_zero.lambda_nodes = {0.0};
  at_zero.lambda_weights = {1.0};
  CHECK_THROWS_AS(at_zero.validate(), std::invalid_argument);
  CHECK_THROWS_AS(forward_transform(gaussian(), empty, QuadratureBox{}), std::invalid_argument);
  CHECK_THROWS_AS(forward_transform(gaussian(), grid, QuadratureBox{0.0, 8}), std::invalid_argument);
  CHECK_THROWS(spectral_from_json("{\"truncation\": 2}"));
}
