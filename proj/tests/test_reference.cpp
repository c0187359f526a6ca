// The OpenMP kernels against their serial reference twins.
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "memctrl/convolution.hpp"
#include "memctrl/reference.hpp"

using namespace memctrl;
using kernels::Complex;
using kernels::MemoryKernel;
using kernels::Signal;
using kernels::TimeGrid;

namespace {

Signal wiggly(const TimeGrid& grid, double a, double b) {
  Signal s(grid);
  for (int j = 0; j < s.size(); ++j) {
    const double t = grid.node(j);
    s.values[j] = Complex{std::sin(a * t) + 0.2 * t, std::cos(b * t)};
  }
  return s;
}

}  // namespace

TEST_CASE("parallel convolution matches the serial reference") {
  const TimeGrid grid(2.0, 1024);
  const Signal a = wiggly(grid, 3.1, 1.7);
  const Signal b = wiggly(grid, 0.9, 4.2);
  const Signal par = kernels::convolve(a, b);
  const Signal ser = reference::convolve(a, b);
  CHECK((par - ser).sup_norm() < 1e-13 * (1.0 + ser.sup_norm()));
}

TEST_CASE("parallel zeta batch matches the serial reference") {
  const TimeGrid grid(2.0, 512);
  const auto basis = spectral::build_interval_basis(0.0, 8);
  const auto kernel = MemoryKernel::exponential(1.0, 1.0);
  const auto par = volterra::solve_zeta_batch(basis, kernel, grid);
  const auto ser = reference::solve_zeta_batch(basis, kernel, grid);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK((par[i].zeta - ser[i].zeta).sup_norm() == 0.0);
    CHECK((par[i].dzeta - ser[i].dzeta).sup_norm() == 0.0);
  }
}

TEST_CASE("parallel gram assembly matches the serial reference") {
  const TimeGrid grid(2.0, 512);
  const auto basis = spectral::build_interval_basis(0.0, 6);
  const auto kernel = MemoryKernel::exponential(0.7, 1.3);
  const auto zetas = volterra::solve_zeta_batch(basis, kernel, grid);
  const auto set = moment::build_kernel_set(1, basis, zetas, kernel);
  const auto family = moment::realified_family(set);
  const auto par = moment::assemble_gram(family);
  const auto ser = reference::assemble_gram(family);
  CHECK((par - ser).norm() < 1e-13 * ser.norm());
}

TEST_CASE("parallel modal simulation matches the serial reference") {
  const TimeGrid grid(2.0, 512);
  const auto basis = spectral::build_interval_basis(0.0, 8);
  const auto kernel = MemoryKernel::constant(1.0);
  Signal f(grid);
  for (int j = 0; j < f.size(); ++j)
    f.values[j] = std::sin(std::numbers::pi * grid.node(j));
  const auto par = synthesis::simulate_modal(f, basis, kernel, grid);
  const auto ser = reference::simulate_modal(f, basis, kernel, grid);
  for (int n = 0; n < 8; ++n) {
    CHECK(std::abs(par.position[n] - ser.position[n]) == 0.0);
    CHECK(std::abs(par.velocity[n] - ser.velocity[n]) == 0.0);
  }
}
