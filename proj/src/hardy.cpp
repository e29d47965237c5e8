#include "heis/hardy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "heis/chart_functions.hpp"
#include "heis/geodesics.hpp"
#include "heis/quadrature.hpp"

namespace heis {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

QuadratureRule r_rule(int nodes) {
  if (nodes < 1) throw std::invalid_argument("hardy: need at least one node");
  const int order = std::min(nodes, 16);
  return composite_gauss_legendre(std::max(1, nodes / order), order, -kTwoPi, kTwoPi);
}

struct RatioIntegrals {
  double numerator = 0.0, denominator = 0.0;
};

RatioIntegrals ratio_integrals(const QuadratureRule& rule) {
  RatioIntegrals out;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double r = rule.nodes[i];
    const double base = gamma_alpha(-2.0, r) * chart::mu_density(r);
    out.numerator += rule.weights[i] * base * eta(r);
    out.denominator += rule.weights[i] * base;
  }
  return out;
}

// d/dr log N(1, theta, r)^{alpha/2}
double log_derivative(double alpha, double r) {
  return 0.125 * alpha * chart::quartic_over_r4_derivative(r) / chart::quartic_over_r4(r);
}

// r * w(r), finite at r = 0 (value 6).
double r_times_w(double r) {
  const double x = 0.5 * r;
  return 2.0 * chart::sinc(x) / chart::sin_minus_xcos_over_x3(x);
}

double bump(double x) {
  if (std::abs(x) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - x * x));
}

double shell_bump(double n, double lo, double hi) { return bump((2.0 * n - lo - hi) / (hi - lo)); }

double ball_bump(const GroupPoint& p, const GroupPoint& c, double radius) {
  const double dx = p.x - c.x, dy = p.y - c.y, dz = p.z - c.z;
  return bump(std::sqrt(dx * dx + dy * dy + dz * dz) / radius);
}

}  // namespace

double gamma_alpha(double alpha, double r) {
  if (!(std::abs(r) <= kTwoPi + 1e-12)) throw std::invalid_argument("gamma_alpha: |r| must not exceed 2pi");
  return std::pow(chart::koranyi_profile(r), alpha);
}

double eta(double r) {
  if (!(std::abs(r) <= kTwoPi + 1e-12)) throw std::invalid_argument("eta: |r| must not exceed 2pi");
  const double s = chart::sinc(0.5 * r);
  return s * s / (4.0 * chart::quartic_over_r4(r));
}

double koranyi_gradient_sq(double r) {
  const double s = chart::sinc(0.5 * r);
  return s * s / (2.0 * std::sqrt(chart::quartic_over_r4(r)));
}

double cutoff_chi(double t) {
  if (t <= 0.5) return 0.0;
  if (t >= 1.0) return 1.0;
  const double u = 2.0 * t - 1.0;
  return u * u * u * (10.0 - 15.0 * u + 6.0 * u * u);
}

double cutoff_chi_derivative(double t) {
  if (t <= 0.5 || t >= 1.0) return 0.0;
  const double u = 2.0 * t - 1.0;
  return 2.0 * 30.0 * u * u * (1.0 - u) * (1.0 - u);
}

std::string HardyReport::to_json() const {
  nlohmann::json j;
  j["ratio"] = ratio;
  j["numerator"] = numerator;
  j["denominator"] = denominator;
  j["quadrature_nodes"] = quadrature_nodes;
  j["refined_ratio"] = refined_ratio;
  j["converged"] = converged;
  j["bound_claimed"] = bound_claimed;
  nlohmann::json sweep = nlohmann::json::array();
  for (const auto& [a, q] : alpha_sweep) sweep.push_back({{"alpha", a}, {"quotient", q}});
  j["alpha_sweep"] = std::move(sweep);
  return j.dump(2);
}

HardyReport hardy_ratio(int nodes) {
  const QuadratureRule coarse = r_rule(nodes);
  const QuadratureRule fine = r_rule(2 * static_cast<int>(coarse.size()));
  const RatioIntegrals a = ratio_integrals(coarse);
  const RatioIntegrals b = ratio_integrals(fine);
  HardyReport rep;
  rep.numerator = a.numerator;
  rep.denominator = a.denominator;
  rep.ratio = a.numerator / a.denominator;
  rep.quadrature_nodes = static_cast<int>(coarse.size());
  rep.refined_ratio = b.numerator / b.denominator;
  rep.converged = std::abs(rep.refined_ratio - rep.ratio) < 1e-8;
  return rep;
}

double quotient_for_alpha(double alpha, double cutoff_scale, int nodes) {
  if (!(alpha >= -3.0 && alpha < -2.0)) throw std::invalid_argument("quotient_for_alpha: alpha must lie in [-3, -2)");
  if (!(cutoff_scale > 0.0)) throw std::invalid_argument("quotient_for_alpha: cutoff_scale must be positive");
  const double s = cutoff_scale;
  const QuadratureRule rr = r_rule(nodes);

  double gm = 0.0, gem = 0.0;
  for (std::size_t i = 0; i < rr.size(); ++i) {
    const double r = rr.nodes[i];
    const double base = gamma_alpha(alpha, r) * chart::mu_density(r);
    gm += rr.weights[i] * base;
    gem += rr.weights[i] * base * eta(r);
  }

  // int_s^T t^{alpha+1} dt in log variables, T such that T^{alpha+2}/|alpha+2| < 1e-10.
  const double beta = alpha + 2.0;
  const double sigma_lo = std::log(s);
  const double sigma_hi = std::max(sigma_lo + 1.0, std::log(1e-10 * std::abs(beta)) / beta);
  const QuadratureRule tail = composite_gauss_legendre(64, 16, sigma_lo, sigma_hi);
  double t_outer = 0.0;
  for (std::size_t j = 0; j < tail.size(); ++j) t_outer += tail.weights[j] * std::exp(beta * tail.nodes[j]);

  // cutoff region t in [s/2, s]
  const QuadratureRule tin = composite_gauss_legendre(std::max(1, nodes / 16), 16, 0.5 * s, s);
  const double s_alpha = std::pow(s, alpha);
  double den_inner = 0.0, num_inner = 0.0;
  for (std::size_t j = 0; j < tin.size(); ++j) {
    const double t = tin.nodes[j];
    const double chi = cutoff_chi(t / s), dchi = cutoff_chi_derivative(t / s) / s;
    den_inner += tin.weights[j] * chi * chi * t;
    double acc = 0.0;
    for (std::size_t i = 0; i < rr.size(); ++i) {
      const double r = rr.nodes[i];
      // grad_H delta = d_t + (r/t) d_r, its companion has d_r-coefficient (r/t) w(r)
      const double L = log_derivative(alpha, r);
      const double radial = dchi + chi * r * L / t;
      const double perp = chi * r_times_w(r) * L / t;
      acc += rr.weights[i] * gamma_alpha(alpha, r) * chart::mu_density(r) * (radial * radial + perp * perp);
    }
    num_inner += tin.weights[j] * t * t * t * s_alpha * acc;
  }
  den_inner *= s_alpha * gm;

  const double denominator = kTwoPi * (den_inner + t_outer * gm);
  const double numerator = kTwoPi * (num_inner + 0.25 * alpha * alpha * t_outer * gem);
  return numerator / denominator;
}

GarofaloTerms garofalo_terms(const HardyTestFunction& f, const GarofaloResolution& res) {
  if (!(f.n_inner > 0.0) || !(f.n_outer > f.n_inner))
    throw std::invalid_argument("garofalo_terms: support shell must satisfy 0 < n_inner < n_outer");
  if (std::abs(f.u(GroupPoint{})) != 0.0)
    throw std::invalid_argument("garofalo_terms: test function does not vanish at the origin");

  const QuadratureRule rr = r_rule(res.r_nodes);
  const QuadratureRule th = periodic_trapezoid(res.theta_nodes);
  // N = t n(r) with 1/sqrt(pi) <= n(r) <= 1, so the shell maps into this t-range.
  const double s_lo = std::log(f.n_inner), s_hi = std::log(f.n_outer * std::sqrt(std::numbers::pi));
  const int order = std::min(res.t_nodes, 16);
  const QuadratureRule sr = composite_gauss_legendre(std::max(1, res.t_nodes / order), order, s_lo, s_hi);

  std::vector<double> energy(rr.size(), 0.0), potential(rr.size(), 0.0);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < rr.size(); ++i) {
    const double r = rr.nodes[i];
    const double m = chart::mu_density(r);
    const double n = chart::koranyi_profile(r);
    const double gsq = koranyi_gradient_sq(r);
    double e = 0.0, v = 0.0;
    for (std::size_t j = 0; j < sr.size(); ++j) {
      const double t = std::exp(sr.nodes[j]);
      const double jac = sr.weights[j] * t * t * t * t * m;  // dt = t dsigma
      for (std::size_t k = 0; k < th.size(); ++k) {
        const GroupPoint p = exp_map({t, th.nodes[k], r});
        const cplx val = f.u(p);
        const cplx gx = apply_field(Field::X, f.u, p);
        const cplx gy = apply_field(Field::Y, f.u, p);
        e += jac * th.weights[k] * (std::norm(gx) + std::norm(gy));
        v += jac * th.weights[k] * std::norm(val) * gsq / (t * t * n * n);
      }
    }
    energy[i] = rr.weights[i] * e;
    potential[i] = rr.weights[i] * v;
  }
  GarofaloTerms out;
  for (std::size_t i = 0; i < rr.size(); ++i) {
    out.energy += energy[i];
    out.potential += potential[i];
  }
  return out;
}

std::vector<double> koranyi_hardy_check(const std::vector<HardyTestFunction>& testfns, const GarofaloResolution& res) {
  std::vector<double> out;
  out.reserve(testfns.size());
  for (const auto& f : testfns) out.push_back(garofalo_terms(f, res).defect());
  return out;
}

std::vector<HardyTestFunction> builtin_hardy_test_functions() {
  std::vector<HardyTestFunction> fs;
  const auto radial = [](double lo, double hi, double scale) {
    return [=](const GroupPoint& p) { return cplx(scale * shell_bump(koranyi_norm(p), lo, hi)); };
  };
  fs.push_back({"radial_bump_0.5_2", {radial(0.5, 2.0, 1.0)}, 0.5, 2.0});
  fs.push_back({"radial_bump_1_3", {radial(1.0, 3.0, 1.0)}, 1.0, 3.0});
  fs.push_back({"narrow_radial_bump", {radial(0.8, 1.2, 1.0)}, 0.8, 1.2});
  fs.push_back({"scaled_radial_bump", {radial(0.5, 2.0, 10.0)}, 0.5, 2.0});

  // N^{-1} phi(ln N) with phi a long, flat C^2 profile: the energy exceeds the
  // potential only by int phi'^2 / int phi^2 (about 0.08 here).
  {
    constexpr double kCenter = 2.0, kHalfWidth = 7.0;
    auto u = [=](const GroupPoint& p) {
      const double n = koranyi_norm(p);
      if (n <= 0.0) return cplx{};
      const double x = (std::log(n) - kCenter) / kHalfWidth;
      if (std::abs(x) >= 1.0) return cplx{};
      const double b = 1.0 - x * x;
      return cplx(b * b * b / n);
    };
    fs.push_back({"near_extremal_profile", {u, 1e-7}, std::exp(kCenter - kHalfWidth), std::exp(kCenter + kHalfWidth)});
  }

  fs.push_back({"offcenter_bump_x",
                {[](const GroupPoint& p) { return cplx(ball_bump(p, {1.5, 0.0, 0.0}, 0.8)); }},
                0.3,
                3.0});
  fs.push_back({"offcenter_bump_yz",
                {[](const GroupPoint& p) { return cplx(ball_bump(p, {0.0, 1.0, 0.5}, 0.6)); }},
                0.3,
                3.0});
  fs.push_back({"axis_bump",
                {[](const GroupPoint& p) { return cplx(ball_bump(p, {0.0, 0.0, 1.0}, 0.5)); }},
                1.0,
                3.0});
  fs.push_back({"x_modulated_bump",
                {[](const GroupPoint& p) { return cplx(p.x * shell_bump(koranyi_norm(p), 0.5, 2.5)); }},
                0.5,
                2.5});
  fs.push_back({"z_modulated_bump",
                {[](const GroupPoint& p) { return cplx(p.z * shell_bump(koranyi_norm(p), 0.6, 2.5)); }},
                0.6,
                2.5});
  return fs;
}

}  // namespace heis
