#include <omp.h>

#include <cmath>
#include <cstdio>
#include <functional>

#include "heis/ncft.hpp"

namespace {

double seconds(const std::function<void()>& fn) {
  const double start = omp_get_wtime();
  fn();
  return omp_get_wtime() - start;
}

}  // namespace

int main() {
  using namespace heis;
  const ScalarField f{[](const GroupPoint& p) { return cplx(std::exp(-(p.x * p.x + p.y * p.y + p.z * p.z))); }};
  const QuadratureBox box{6.0, 32};
  std::printf("threads available: %d\n", omp_get_max_threads());
  for (int N : {4, 8, 16}) {
    const SpectralGrid grid = SpectralGrid::geometric(N, 0.05, 8.0, 8);
    double parallel_norm = 0.0, serial_norm = 0.0;
    const double tp = seconds([&] { parallel_norm = plancherel_norm(forward_transform(f, grid, box)); });
    const double ts = seconds([&] { serial_norm = plancherel_norm(forward_transform_serial(f, grid, box)); });
    std::printf("N=%2d  openmp %.3fs  serial %.3fs  speedup %.2f  |norm diff| %.2e\n", N, tp, ts, ts / tp,
                std::abs(parallel_norm - serial_norm));
  }
  const SpectralGrid small = SpectralGrid::geometric(2, 0.5, 2.0, 2);
  const QuadratureBox coarse{5.0, 12};
  const double tr = seconds([&] { forward_transform_reference(f, small, coarse); });
  const double tf = seconds([&] { forward_transform_serial(f, small, coarse); });
  std::printf("reference %.3fs vs sum-factorized %.3fs on a 2x2 truncation\n", tr, tf);
  return 0;
}
