#include "heis/group.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "heis/chart_functions.hpp"
#include "heis/geodesics.hpp"
#include "heis/quadrature.hpp"

namespace heis {

GroupPoint group_mul(const GroupPoint& p, const GroupPoint& q) {
  return {p.x + q.x, p.y + q.y, p.z + q.z + 0.5 * (p.x * q.y - q.x * p.y)};
}

GroupPoint group_inv(const GroupPoint& p) { return {-p.x, -p.y, -p.z}; }

GroupPoint dilate(double lambda, const GroupPoint& p) {
  if (!(lambda > 0.0)) throw std::invalid_argument("dilate: lambda must be positive");
  return {lambda * p.x, lambda * p.y, lambda * lambda * p.z};
}

double koranyi_norm(const GroupPoint& p) {
  const double rho2 = p.x * p.x + p.y * p.y;
  return std::pow(rho2 * rho2 + 16.0 * p.z * p.z, 0.25);
}

double fundamental_solution(const GroupPoint& p) {
  const double n = koranyi_norm(p);
  if (n == 0.0) throw std::invalid_argument("fundamental_solution: pole at the origin");
  return 1.0 / (2.0 * std::numbers::pi * n * n);
}

namespace {

cplx partial(const ScalarField& f, const GroupPoint& p, int axis) {
  const double h = f.h;
  GroupPoint a = p, b = p;
  double* pa = axis == 0 ? &a.x : axis == 1 ? &a.y : &a.z;
  double* pb = axis == 0 ? &b.x : axis == 1 ? &b.y : &b.z;
  *pa += h;
  *pb -= h;
  return (f(a) - f(b)) / (2.0 * h);
}

cplx second(const ScalarField& f, const GroupPoint& p, int axis) {
  const double h = f.h;
  GroupPoint a = p, b = p;
  double* pa = axis == 0 ? &a.x : axis == 1 ? &a.y : &a.z;
  double* pb = axis == 0 ? &b.x : axis == 1 ? &b.y : &b.z;
  *pa += h;
  *pb -= h;
  return (f(a) - 2.0 * f(p) + f(b)) / (h * h);
}

GroupPoint shifted(GroupPoint p, int axis, double d) {
  (axis == 0 ? p.x : axis == 1 ? p.y : p.z) += d;
  return p;
}

cplx mixed(const ScalarField& f, const GroupPoint& p, int i, int j) {
  const double h = f.h;
  const auto at = [&](double si, double sj) { return f(shifted(shifted(p, i, si * h), j, sj * h)); };
  return (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * h * h);
}

}  // namespace

cplx apply_field(Field which, const ScalarField& f, const GroupPoint& p) {
  switch (which) {
    case Field::X:
      return partial(f, p, 0) - 0.5 * p.y * partial(f, p, 2);
    case Field::Y:
      return partial(f, p, 1) + 0.5 * p.x * partial(f, p, 2);
    case Field::Z:
      return partial(f, p, 2);
  }
  return {};
}

ScalarField field_of(Field which, const ScalarField& f) {
  return {[which, f](const GroupPoint& p) { return apply_field(which, f, p); }, f.h};
}

cplx apply_sublaplacian(const ScalarField& f, const GroupPoint& p) {
  const double rho2 = p.x * p.x + p.y * p.y;
  return second(f, p, 0) + second(f, p, 1) + 0.25 * rho2 * second(f, p, 2) +
         p.x * mixed(f, p, 1, 2) - p.y * mixed(f, p, 0, 2);
}

std::vector<double> gamma_l2_blowup(std::span<const double> epsilons, int nodes) {
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0)) throw std::invalid_argument("gamma_l2_blowup: epsilons must be positive");
    if (i > 0 && !(epsilons[i] < epsilons[i - 1]))
      throw std::invalid_argument("gamma_l2_blowup: epsilons must be strictly decreasing");
  }
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  const QuadratureRule rq = composite_gauss_legendre(std::max(1, nodes / 16), 16, -kTwoPi, kTwoPi);
  const QuadratureRule sq = gauss_legendre(8);  // integrand in log t is constant per r

  std::vector<double> out;
  out.reserve(epsilons.size());
  for (double eps : epsilons) {
    // Gamma^2 t^3 mu = mu(r) / (64 pi^2 t n(r)^4); integrate in s = log t.
    double total = 0.0;
    for (std::size_t i = 0; i < rq.size(); ++i) {
      const double r = rq.nodes[i];
      const double n = chart::koranyi_profile(r);
      const double s_lo = std::log(eps / n), s_hi = std::log(1.0 / n);
      const double half = 0.5 * (s_hi - s_lo);
      double inner = 0.0;
      for (std::size_t j = 0; j < sq.size(); ++j) inner += half * sq.weights[j];
      const double n2 = n * n;
      total += rq.weights[i] * chart::mu_density(r) / (4.0 * std::numbers::pi * std::numbers::pi * n2 * n2) * inner;
    }
    out.push_back(kTwoPi * total);
  }
  return out;
}

WeakIdentityResult weak_identity(const ScalarField& phi, double eps, int nodes, double t_max) {
  if (!(eps > 0.0) || !(t_max > eps * std::sqrt(std::numbers::pi)))
    throw std::invalid_argument("weak_identity: need 0 < eps and t_max beyond the excised ball");
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  const int panels = std::max(1, nodes / 16);
  const QuadratureRule rq = composite_gauss_legendre(panels, 16, -kTwoPi, kTwoPi);
  const QuadratureRule thq = periodic_trapezoid(std::max(8, nodes));
  const QuadratureRule unit = composite_gauss_legendre(panels, 16, 0.0, 1.0);

  std::vector<double> per_r(rq.size(), 0.0);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < rq.size(); ++i) {
    const double r = rq.nodes[i];
    const double n = chart::koranyi_profile(r);
    const double t_lo = eps / n;
    const double len = t_max - t_lo;
    const double dens = chart::mu_density(r) / (2.0 * std::numbers::pi * n * n);
    double acc = 0.0;
    for (std::size_t j = 0; j < unit.size(); ++j) {
      const double t = t_lo + len * unit.nodes[j];
      double ring = 0.0;
      for (std::size_t k = 0; k < thq.size(); ++k) {
        const GroupPoint p = exp_map({t, thq.nodes[k], r});
        ring += thq.weights[k] * (-apply_sublaplacian(phi, p)).real();
      }
      acc += len * unit.weights[j] * t * dens * ring;
    }
    per_r[i] = rq.weights[i] * acc;
  }
  WeakIdentityResult res;
  for (double v : per_r) res.integral += v;
  res.target = phi(GroupPoint{}).real();
  return res;
}

}  // namespace heis
