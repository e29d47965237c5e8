#include "heis/ncft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "heis/hermite.hpp"

namespace heis {

void SpectralGrid::validate() const {
  if (truncation < 1) throw std::invalid_argument("SpectralGrid: truncation must be >= 1");
  if (lambda_nodes.empty()) throw std::invalid_argument("SpectralGrid: empty lambda grid");
  if (lambda_nodes.size() != lambda_weights.size())
    throw std::invalid_argument("SpectralGrid: nodes and weights differ in length");
  for (std::size_t k = 0; k < lambda_nodes.size(); ++k) {
    if (lambda_nodes[k] == 0.0 || !std::isfinite(lambda_nodes[k]))
      throw std::invalid_argument("SpectralGrid: node at lambda = 0");
    if (k > 0 && !(lambda_nodes[k] > lambda_nodes[k - 1]))
      throw std::invalid_argument("SpectralGrid: nodes must be strictly increasing");
    if (!(lambda_weights[k] > 0.0)) throw std::invalid_argument("SpectralGrid: weights must be positive");
  }
}

double plancherel_density(double lambda) {
  return std::abs(lambda) / (4.0 * std::numbers::pi * std::numbers::pi);
}

SpectralGrid SpectralGrid::geometric(int truncation, double lambda_min, double lambda_max, int per_side) {
  if (!(lambda_min > 0.0) || !(lambda_max > lambda_min) || per_side < 2)
    throw std::invalid_argument("SpectralGrid::geometric: need 0 < lambda_min < lambda_max and per_side >= 2");
  std::vector<double> pos(per_side), wpos(per_side);
  const double ratio = std::pow(lambda_max / lambda_min, 1.0 / (per_side - 1));
  for (int j = 0; j < per_side; ++j) pos[j] = lambda_min * std::pow(ratio, j);
  pos.back() = lambda_max;
  for (int j = 0; j < per_side; ++j) {
    const double left = j > 0 ? pos[j] - pos[j - 1] : 0.0;
    const double right = j + 1 < per_side ? pos[j + 1] - pos[j] : 0.0;
    wpos[j] = 0.5 * (left + right) * plancherel_density(pos[j]);
  }
  SpectralGrid g;
  g.truncation = truncation;
  for (int j = per_side - 1; j >= 0; --j) {
    g.lambda_nodes.push_back(-pos[j]);
    g.lambda_weights.push_back(wpos[j]);
  }
  for (int j = 0; j < per_side; ++j) {
    g.lambda_nodes.push_back(pos[j]);
    g.lambda_weights.push_back(wpos[j]);
  }
  g.validate();
  return g;
}

SpectralCoefficients::SpectralCoefficients(SpectralGrid g) : grid(std::move(g)) {
  grid.validate();
  values.assign(static_cast<std::size_t>(grid.truncation) * grid.truncation * grid.size(), cplx{});
}

QuadratureRule QuadratureBox::axis_rule() const {
  if (!(halfwidth > 0.0) || nodes < 1) throw std::invalid_argument("QuadratureBox: degenerate box");
  const int order = std::min(nodes, 16);
  return composite_gauss_legendre(std::max(1, nodes / order), order, -halfwidth, halfwidth);
}

QuadratureRule xi_rule(double lambda, int truncation, double x_extent, double y_extent) {
  if (lambda == 0.0) throw std::invalid_argument("xi_rule: lambda must be nonzero");
  const double a = std::abs(lambda);
  const double R = (std::sqrt(2.0 * truncation + 1.0) + 8.0) / std::sqrt(a) + 0.5 * std::abs(x_extent);
  const double phase = 2.0 * std::numbers::pi * (2.0 * truncation + 2.0) + a * std::abs(y_extent) * 2.0 * R;
  const double envelope = 2.0 * R * std::sqrt(a) / 1.5;
  const int panels = std::max({4, static_cast<int>(std::ceil(phase / 10.0)), static_cast<int>(std::ceil(envelope))});
  return composite_gauss_legendre(panels, 16, -R, R);
}

namespace {

Eigen::MatrixXd hermite_table(int truncation, double lambda, const std::vector<double>& xs, double shift) {
  Eigen::MatrixXd H(truncation, xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const auto h = rescaled_hermite_all(truncation, lambda, xs[j] + shift);
    for (int n = 0; n < truncation; ++n) H(n, j) = h[n];
  }
  return H;
}

// Samples f on the box grid, index (a * n + b) * n + c for (x_a, y_b, z_c).
std::vector<cplx> sample_box(const ScalarField& f, const QuadratureRule& axis) {
  const std::size_t n = axis.size();
  std::vector<cplx> out(n * n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        out[(a * n + b) * n + c] = f(GroupPoint{axis.nodes[a], axis.nodes[b], axis.nodes[c]});
  return out;
}

// One lambda slice of the factorized transform:
//   F(a,b)  = sum_c w_c f(a,b,c) e^{-i lambda z_c}
//   G(a,j)  = sum_b w_b F(a,b) e^{i lambda y_b (xi_j + x_a / 2)}
//   out(n,m) = sum_a w_a sum_j omega_j G(a,j) H_m(xi_j + x_a) H_n(xi_j)
Eigen::MatrixXcd transform_slice(const std::vector<cplx>& samples, const QuadratureRule& axis, int truncation,
                                 double lambda, double halfwidth) {
  const std::size_t n = axis.size();
  const QuadratureRule xi = xi_rule(lambda, truncation, 2.0 * halfwidth, halfwidth);
  const std::size_t J = xi.size();
  const cplx I(0.0, 1.0);

  std::vector<cplx> ez(n);
  for (std::size_t c = 0; c < n; ++c) ez[c] = axis.weights[c] * std::exp(-I * lambda * axis.nodes[c]);
  Eigen::MatrixXcd A(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      cplx s = 0.0;
      for (std::size_t c = 0; c < n; ++c)
        s += samples[(a * n + b) * n + c] * ez[c];
      A(a, b) = axis.weights[b] * s * std::exp(I * lambda * 0.5 * axis.nodes[a] * axis.nodes[b]);
    }

  Eigen::MatrixXcd Ey(n, J);
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t j = 0; j < J; ++j) Ey(b, j) = std::exp(I * lambda * axis.nodes[b] * xi.nodes[j]);
  const Eigen::MatrixXcd G = A * Ey;

  const Eigen::MatrixXd HN = hermite_table(truncation, lambda, xi.nodes, 0.0);
  const Eigen::Map<const Eigen::RowVectorXd> omega(xi.weights.data(), J);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(truncation, truncation);
  for (std::size_t a = 0; a < n; ++a) {
    const Eigen::MatrixXd HM = hermite_table(truncation, lambda, xi.nodes, axis.nodes[a]);
    const Eigen::RowVectorXcd scale = (axis.weights[a] * omega.cast<cplx>()).cwiseProduct(G.row(a));
    const Eigen::MatrixXcd left = HN.cast<cplx>().array().rowwise() * scale.array();
    out.noalias() += left * HM.transpose().cast<cplx>();
  }
  return out;
}

SpectralCoefficients forward_impl(const ScalarField& f, const SpectralGrid& grid, const QuadratureBox& box,
                                  bool parallel) {
  grid.validate();
  const QuadratureRule axis = box.axis_rule();
  const std::vector<cplx> samples = sample_box(f, axis);
  SpectralCoefficients out(grid);
  const int N = grid.truncation;
  const auto K = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::ptrdiff_t k = 0; k < K; ++k) {
    const Eigen::MatrixXcd slice = transform_slice(samples, axis, N, grid.lambda_nodes[k], box.halfwidth);
    for (int n = 0; n < N; ++n)
      for (int m = 0; m < N; ++m) out(n, m, k) = slice(n, m);
  }
  return out;
}

}  // namespace

Eigen::MatrixXcd rep_matrix(const GroupPoint& p, int truncation, double lambda, const QuadratureRule& xi) {
  if (lambda == 0.0) throw std::invalid_argument("rep_matrix: lambda must be nonzero");
  if (truncation < 1) throw std::invalid_argument("rep_matrix: truncation must be >= 1");
  const cplx I(0.0, 1.0);
  const Eigen::MatrixXd HN = hermite_table(truncation, lambda, xi.nodes, 0.0);
  const Eigen::MatrixXd HM = hermite_table(truncation, lambda, xi.nodes, -p.x);
  Eigen::RowVectorXcd phase(xi.size());
  for (std::size_t j = 0; j < xi.size(); ++j)
    phase(j) = xi.weights[j] * std::exp(I * lambda * (p.z - p.y * xi.nodes[j] + 0.5 * p.x * p.y));
  const Eigen::MatrixXcd left = HN.cast<cplx>().array().rowwise() * phase.array();
  return left * HM.transpose().cast<cplx>();
}

Eigen::MatrixXcd rep_matrix(const GroupPoint& p, int truncation, double lambda) {
  return rep_matrix(p, truncation, lambda, xi_rule(lambda, truncation, std::abs(p.x), std::abs(p.y)));
}

cplx rep_coefficient(const GroupPoint& p, int n, int m, double lambda) {
  if (n < 0 || m < 0) throw std::invalid_argument("rep_coefficient: indices must be >= 0");
  return rep_matrix(p, std::max(n, m) + 1, lambda)(n, m);
}

SpectralCoefficients forward_transform(const ScalarField& f, const SpectralGrid& grid, const QuadratureBox& box) {
  return forward_impl(f, grid, box, true);
}

SpectralCoefficients forward_transform_serial(const ScalarField& f, const SpectralGrid& grid,
                                              const QuadratureBox& box) {
  return forward_impl(f, grid, box, false);
}

SpectralCoefficients forward_transform_reference(const ScalarField& f, const SpectralGrid& grid,
                                                 const QuadratureBox& box) {
  grid.validate();
  const QuadratureRule axis = box.axis_rule();
  SpectralCoefficients out(grid);
  const int N = grid.truncation;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double lambda = grid.lambda_nodes[k];
    const QuadratureRule xi = xi_rule(lambda, N, 2.0 * box.halfwidth, box.halfwidth);
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(N, N);
    for (std::size_t a = 0; a < axis.size(); ++a)
      for (std::size_t b = 0; b < axis.size(); ++b)
        for (std::size_t c = 0; c < axis.size(); ++c) {
          const GroupPoint p{axis.nodes[a], axis.nodes[b], axis.nodes[c]};
          const double w = axis.weights[a] * axis.weights[b] * axis.weights[c];
          acc += (w * f(p)) * rep_matrix(group_inv(p), N, lambda, xi);
        }
    for (int n = 0; n < N; ++n)
      for (int m = 0; m < N; ++m) out(n, m, k) = acc(n, m);
  }
  return out;
}

namespace {

template <bool Conjugate>
cplx pair_with_matrix_elements(const SpectralCoefficients& c, const GroupPoint& p) {
  const int N = c.grid.truncation;
  const GroupPoint q = group_inv(p);
  cplx sum = 0.0;
  for (std::size_t k = 0; k < c.grid.size(); ++k) {
    const Eigen::MatrixXcd M = rep_matrix(q, N, c.grid.lambda_nodes[k]);
    cplx slice = 0.0;
    for (int n = 0; n < N; ++n)
      for (int m = 0; m < N; ++m) slice += c(n, m, k) * (Conjugate ? std::conj(M(n, m)) : M(n, m));
    sum += c.grid.lambda_weights[k] * slice;
  }
  return sum;
}

}  // namespace

cplx inverse_transform(const SpectralCoefficients& c, const GroupPoint& p) {
  return pair_with_matrix_elements<true>(c, p);
}

cplx transpose_transform(const SpectralCoefficients& c, const GroupPoint& p) {
  return pair_with_matrix_elements<false>(c, p);
}

double plancherel_norm(const SpectralCoefficients& c) {
  double s = 0.0;
  const int N = c.grid.truncation;
  for (int n = 0; n < N; ++n)
    for (int m = 0; m < N; ++m)
      for (std::size_t k = 0; k < c.grid.size(); ++k) s += std::norm(c(n, m, k)) * c.grid.lambda_weights[k];
  return std::sqrt(s);
}

SpectralCoefficients sublaplacian_multiplier(const SpectralCoefficients& c, cplx shift) {
  SpectralCoefficients out = c;
  const int N = c.grid.truncation;
  for (int n = 0; n < N; ++n)
    for (int m = 0; m < N; ++m)
      for (std::size_t k = 0; k < c.grid.size(); ++k)
        out(n, m, k) *= std::abs(c.grid.lambda_nodes[k]) * (2.0 * n + 1.0) + shift;
  return out;
}

double direct_l2_norm(const ScalarField& f, const QuadratureBox& box) {
  const QuadratureRule axis = box.axis_rule();
  double s = 0.0;
  for (std::size_t a = 0; a < axis.size(); ++a)
    for (std::size_t b = 0; b < axis.size(); ++b)
      for (std::size_t c = 0; c < axis.size(); ++c)
        s += axis.weights[a] * axis.weights[b] * axis.weights[c] *
             std::norm(f(GroupPoint{axis.nodes[a], axis.nodes[b], axis.nodes[c]}));
  return std::sqrt(s);
}

std::string to_json(const SpectralCoefficients& c) {
  nlohmann::json j;
  j["truncation"] = c.grid.truncation;
  j["lambda_nodes"] = c.grid.lambda_nodes;
  j["lambda_weights"] = c.grid.lambda_weights;
  nlohmann::json vals = nlohmann::json::array();
  for (const cplx& v : c.values) vals.push_back({v.real(), v.imag()});
  j["values"] = std::move(vals);
  return j.dump();
}

SpectralCoefficients spectral_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  SpectralGrid g;
  g.truncation = j.at("truncation").get<int>();
  g.lambda_nodes = j.at("lambda_nodes").get<std::vector<double>>();
  g.lambda_weights = j.at("lambda_weights").get<std::vector<double>>();
  SpectralCoefficients c(std::move(g));
  const auto& vals = j.at("values");
  if (vals.size() != c.values.size()) throw std::invalid_argument("spectral_from_json: value count mismatch");
  for (std::size_t i = 0; i < vals.size(); ++i) c.values[i] = {vals[i].at(0).get<double>(), vals[i].at(1).get<double>()};
  return c;
}

}  // namespace heis
