#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "memctrl/convolution.hpp"
#include "memctrl/volterra.hpp"

using namespace memctrl;
using namespace memctrl::volterra;
using kernels::Complex;
using kernels::MemoryKernel;
using kernels::Signal;
using kernels::TimeGrid;

namespace {

constexpr double kPi = std::numbers::pi;

spectral::Mode interval_mode(int n, double b = 0.0) {
  return spectral::build_interval_basis(b, n).modes[n - 1];
}

spectral::Mode imaginary_mode() {
  // lambda^2 = -1, lambda = i
  spectral::Mode mode;
  mode.index = 1;
  mode.lambda_sq = -1.0;
  mode.lambda = Complex{0.0, 1.0};
  mode.trace = 1.0;
  mode.psi = mode.trace / mode.lambda;
  return mode;
}

/// Independent oracle for K(t) = e^-t: invert
///   zhat(s) = (s+1) / (s^3 + s^2 + lambda^2 s + lambda^2 - 1)
/// by partial fractions over the cubic's roots (companion-matrix eigenvalues).
double zeta_exp_kernel_oracle(double lambda, double t) {
  Eigen::Matrix3cd companion = Eigen::Matrix3cd::Zero();
  companion(0, 2) = -(lambda * lambda - 1.0);
  companion(1, 0) = 1.0;
  companion(1, 2) = -lambda * lambda;
  companion(2, 1) = 1.0;
  companion(2, 2) = -1.0;
  const Eigen::Vector3cd roots = companion.eigenvalues();
  Complex acc{};
  for (int i = 0; i < 3; ++i) {
    const Complex r = roots(i);
    const Complex dp = 3.0 * r * r + 2.0 * r + lambda * lambda;
    acc += (r + 1.0) / dp * std::exp(r * t);
  }
  return acc.real();
}

}  // namespace

TEST_CASE("timestep solver, K = 0, matches sin(lambda t)/lambda") {
  const TimeGrid grid(2.0, 512);
  const auto table = solve_zeta_timestep(interval_mode(1), MemoryKernel::zero(), grid);
  CHECK(table.method == Method::timestep);
  CHECK(table.zeta.values[0] == Complex{0.0, 0.0});
  CHECK(table.dzeta.values[0] == Complex{1.0, 0.0});
  double err = 0.0;
  for (int j = 0; j < grid.size(); ++j)
    err = std::max(err, std::abs(table.zeta.values[j] -
                                 Complex{std::sin(kPi * grid.node(j)) / kPi, 0.0}));
  CHECK(err < 2e-4);
}

TEST_CASE("timestep solver, imaginary lambda, matches sinh") {
  const TimeGrid grid(2.0, 512);
  const auto table = solve_zeta_timestep(imaginary_mode(), MemoryKernel::zero(), grid);
  double err = 0.0;
  for (int j = 0; j < grid.size(); ++j)
    err = std::max(err, std::abs(table.zeta.values[j] -
                                 Complex{std::sinh(grid.node(j)), 0.0}));
  CHECK(err < 100.0 * grid.dt * grid.dt);
}

TEST_CASE("timestep solver validated against Laplace inversion, K = e^-t") {
  const double oracle = zeta_exp_kernel_oracle(kPi, 1.0);
  auto error_at = [&](int m) {
    const TimeGrid grid(2.0, m);
    const auto table =
        solve_zeta_timestep(interval_mode(1), MemoryKernel::exponential(1.0, 1.0), grid);
    return std::abs(table.zeta.values[m / 2].real() - oracle);  // t = 1
  };
  const double e1 = error_at(1024);
  CHECK(e1 < 1e-5);
  // second-order convergence toward the transform inversion
  const double ratio = e1 / error_at(2048);
  CHECK(ratio > 3.0);
  CHECK(ratio < 5.0);
}

TEST_CASE("under-resolved grid rejected") {
  const TimeGrid grid(2.0, 64);  // h lambda = (2/64) * 16 pi ~ 1.57
  CHECK_THROWS_AS(solve_zeta_timestep(interval_mode(16), MemoryKernel::zero(), grid),
                  UnderResolved);
}

TEST_CASE("picard solver") {
  const TimeGrid grid(2.0, 512);
  SUBCASE("K = 0 converges in one iteration to sin(lambda t)/lambda") {
    const auto table = solve_zeta_picard(interval_mode(2), MemoryKernel::zero(), grid, 5, 1e-12);
    CHECK(table.iterations_used == 1);
    double err = 0.0;
    for (int j = 0; j < grid.size(); ++j)
      err = std::max(err, std::abs(table.zeta.values[j] -
                                   std::sin(2.0 * kPi * grid.node(j)) / (2.0 * kPi)));
    CHECK(err < 1e-13);
  }
  SUBCASE("K = e^-t converges within 25 iterations at tol 1e-10") {
    const auto table = solve_zeta_picard(interval_mode(1), MemoryKernel::exponential(1.0, 1.0),
                                         grid, 25, 1e-10);
    CHECK(table.iterations_used <= 25);
    CHECK(table.method == Method::picard);
  }
  SUBCASE("max_iter too small raises NoConvergence") {
    CHECK_THROWS_AS(solve_zeta_picard(interval_mode(1), MemoryKernel::exponential(1.0, 1.0),
                                      grid, 2, 1e-14),
                    NoConvergence);
  }
  SUBCASE("K constant, lambda = 2 pi, T = 4: cross-method agreement") {
    const TimeGrid wide(4.0, 1024);
    const auto mode = interval_mode(2);
    const auto a = solve_zeta_timestep(mode, MemoryKernel::constant(1.0), wide);
    const auto b = solve_zeta_picard(mode, MemoryKernel::constant(1.0), wide, 40, 1e-11);
    CHECK((a.zeta - b.zeta).sup_norm() < 1e-3);
  }
}

TEST_CASE("cross-method agreement, K = e^-t, lambda = pi") {
  const TimeGrid grid(2.0, 1024);
  const auto kernel = MemoryKernel::exponential(1.0, 1.0);
  const auto mode = interval_mode(1);
  const auto ts = solve_zeta_timestep(mode, kernel, grid);
  const auto pi = solve_zeta_picard(mode, kernel, grid, 40, 1e-11);
  CHECK((ts.zeta - pi.zeta).sup_norm() < 5e-4);
  CHECK((ts.dzeta - pi.dzeta).sup_norm() < 5e-4);
}

TEST_CASE("z table algebra") {
  const TimeGrid grid(2.0, 512);
  const auto kernel = MemoryKernel::exponential(1.0, 1.0);
  const auto mode = interval_mode(2);
  const auto table = solve_zeta_timestep(mode, kernel, grid);

  SUBCASE("z = dzeta + i lambda zeta pointwise") {
    for (int j = 0; j < grid.size(); j += 37) {
      const Complex expected =
          table.dzeta.values[j] + Complex{0.0, 1.0} * mode.lambda * table.zeta.values[j];
      CHECK(std::abs(table.z.values[j] - expected) < 1e-15);
    }
  }

  SUBCASE("centered second differences satisfy the modal equation") {
    // The leapfrog identity makes the defect vanish identically.
    const Signal ks = kernel.sample(grid);
    const Signal mem = kernels::convolve(ks, table.zeta);
    const double h = grid.dt;
    double defect = 0.0;
    for (int j = 1; j < grid.steps; ++j) {
      const Complex second_diff = (table.zeta.values[j + 1] - 2.0 * table.zeta.values[j] +
                                   table.zeta.values[j - 1]) /
                                  (h * h);
      const Complex rhs = -mode.lambda_sq * table.zeta.values[j] + mem.values[j];
      defect = std::max(defect, std::abs(second_diff - rhs));
    }
    CHECK(defect < 200.0 * h * h);
  }

  SUBCASE("termwise-derivative identity dZ/dt = i lambda Z + K * zeta") {
    const Signal ks = kernel.sample(grid);
    const Signal mem = kernels::convolve(ks, table.zeta);
    const double h = grid.dt;
    double worst = 0.0;
    for (int j = 1; j < grid.steps; ++j) {
      const Complex dz = (table.z.values[j + 1] - table.z.values[j - 1]) / (2.0 * h);
      const Complex rhs =
          Complex{0.0, 1.0} * mode.lambda * table.z.values[j] + mem.values[j];
      worst = std::max(worst, std::abs(dz - rhs));
    }
    CHECK(worst < 500.0 * h * h);
  }

  SUBCASE("fixed-point residual of Z = E + (1/lambda) K*S*Z") {
    const auto trig = kernels::trig_signals(mode, grid);
    const Signal ks = kernel.sample(grid);
    const Signal ksz = kernels::convolve(kernels::convolve(ks, trig.s), table.z);
    double worst = 0.0;
    for (int j = 0; j < grid.size(); ++j) {
      const Complex residual =
          table.z.values[j] - trig.e.values[j] - ksz.values[j] / mode.lambda;
      worst = std::max(worst, std::abs(residual));
    }
    CHECK(worst < 500.0 * grid.dt * grid.dt);
  }
}

TEST_CASE("energy identity at K = 0") {
  const TimeGrid grid(2.0, 512);
  const auto mode = interval_mode(1);
  const auto table = solve_zeta_timestep(mode, MemoryKernel::zero(), grid);
  double worst = 0.0;
  for (int j = 0; j < grid.size(); ++j) {
    const double energy = std::norm(table.dzeta.values[j]) +
                          mode.lambda_sq * std::norm(table.zeta.values[j]);
    worst = std::max(worst, std::abs(energy - 1.0));
  }
  CHECK(worst < 100.0 * grid.dt * grid.dt);
}

TEST_CASE("Gronwall-type bound on Z over a basis") {
  const TimeGrid grid(2.0, 1024);
  const auto basis = spectral::build_interval_basis(0.0, 8);
  for (const auto& kernel :
       {MemoryKernel::zero(), MemoryKernel::constant(1.0), MemoryKernel::exponential(1.0, 1.0)}) {
    const auto tables = solve_zeta_batch(basis, kernel, grid);
    const double bound =
        2.0 * std::exp(grid.horizon * grid.horizon * kernel.sup_on(grid));
    for (const auto& table : tables) CHECK(table.z.sup_norm() <= bound);
  }
}

TEST_CASE("batch solve preserves mode order") {
  const TimeGrid grid(2.0, 512);
  const auto basis = spectral::build_interval_basis(0.0, 6);
  const auto tables = solve_zeta_batch(basis, MemoryKernel::exponential(1.0, 1.0), grid);
  REQUIRE(tables.size() == 6);
  for (int i = 0; i < 6; ++i) CHECK(tables[i].mode.index == i + 1);
}

TEST_CASE("z expansion") {
  const auto kernel = MemoryKernel::exponential(1.0, 1.0);
  SUBCASE("K = 0: expansion equals E, remainder at discretization level") {
    const TimeGrid grid(2.0, 1024);
    const auto mode = interval_mode(1);
    const auto [expansion, remainder] = z_expansion(mode, MemoryKernel::zero(), grid, 2);
    const auto trig = kernels::trig_signals(mode, grid);
    CHECK((expansion - trig.e).sup_norm() < 1e-12);
    // remainder = lambda^3 (Z - E); Z comes from the timestep solver, so this
    // sits at the solver's O(h^2) level rather than exactly at zero.
    CHECK(remainder.sup_norm() < 3e4 * grid.dt * grid.dt);
    const auto [e2, r2] = z_expansion(mode, MemoryKernel::zero(), TimeGrid(2.0, 2048), 2);
    CHECK(r2.sup_norm() < 0.35 * remainder.sup_norm());  // O(h^2) down
  }
  SUBCASE("order-0 remainders stay bounded across n (consecutive ratios)") {
    std::vector<double> sups;
    for (int n : {4, 8, 16}) {
      const auto mode = interval_mode(n);
      const TimeGrid grid(2.0, 16384);
      const auto [expansion, remainder] = z_expansion(mode, kernel, grid, 0);
      sups.push_back(remainder.sup_norm());
    }
    CHECK(sups[0] / sups[1] > 0.3);
    CHECK(sups[0] / sups[1] < 3.0);
    CHECK(sups[1] / sups[2] > 0.3);
    CHECK(sups[1] / sups[2] < 3.0);
  }
  SUBCASE("order 1 vs order 0 differ by the first correction term") {
    const auto mode = interval_mode(16);
    const TimeGrid grid(2.0, 2048);
    const auto [e0, r0] = z_expansion(mode, kernel, grid, 0);
    const auto [e1, r1] = z_expansion(mode, kernel, grid, 1);
    const double diff = (e1 - e0).sup_norm();
    const double bound = grid.horizon * grid.horizon * kernel.sup_on(grid) /
                         mode.abs_lambda();
    CHECK(diff <= bound);
    CHECK(diff > 0.0);
  }
  SUBCASE("imaginary lambda rejected") {
    const TimeGrid grid(2.0, 512);
    CHECK_THROWS_AS(z_expansion(imaginary_mode(), kernel, grid, 0), ImaginaryLambda);
    CHECK_THROWS_AS(z_expansion(interval_mode(1), kernel, grid, 5), InvalidArgument);
  }
}

TEST_CASE("zeta CSV dump") {
  const TimeGrid grid(2.0, 64);
  const auto table = solve_zeta_timestep(interval_mode(1), MemoryKernel::zero(), grid);
  const auto dir = std::filesystem::temp_directory_path() / "memctrl_zeta_csv";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "zeta.csv").string();
  write_csv(table, path);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,re_zeta,im_zeta,re_dzeta,im_dzeta");
  int rows = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == grid.size());
}
