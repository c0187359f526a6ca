#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "memctrl/convolution.hpp"
#include "memctrl/memory_kernel.hpp"

using namespace memctrl;
using kernels::Complex;
using kernels::MemoryKernel;
using kernels::Signal;
using kernels::TimeGrid;

namespace {

constexpr double kPi = std::numbers::pi;

Signal sampled(const TimeGrid& grid, auto f) {
  Signal s(grid);
  for (int j = 0; j < s.size(); ++j) s.values[j] = f(grid.node(j));
  return s;
}

Signal random_smooth(const TimeGrid& grid, unsigned seed) {
  // Short trigonometric sum: smooth, bounded derivatives.
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double a0 = u(rng), a1 = u(rng), a2 = u(rng), ph = u(rng);
  return sampled(grid, [&](double t) {
    return Complex{a0 + a1 * std::sin(2.0 * t + ph), a2 * std::cos(3.0 * t)};
  });
}

}  // namespace

TEST_CASE("time grid invariants") {
  const TimeGrid grid(2.0, 64);
  CHECK(grid.dt == doctest::Approx(2.0 / 64).epsilon(1e-15));
  CHECK(grid.dt * grid.steps == doctest::Approx(grid.horizon).epsilon(1e-15));
  CHECK(grid.size() == 65);
  CHECK_THROWS_AS(TimeGrid(-1.0, 64), InvalidArgument);
  CHECK_THROWS_AS(TimeGrid(1.0, 8), InvalidArgument);
}

TEST_CASE("convolution of constants is exact") {
  const TimeGrid grid(1.0, 100);
  const Signal one = sampled(grid, [](double) { return 1.0; });
  const Signal c = kernels::convolve(one, one);
  for (int j = 0; j < c.size(); ++j)
    CHECK(c.values[j].real() == doctest::Approx(grid.node(j)).epsilon(1e-14));
  CHECK(c.values[0] == Complex{0.0, 0.0});
}

TEST_CASE("convolution of ramp with constant is exact") {
  const TimeGrid grid(1.0, 100);
  const Signal one = sampled(grid, [](double) { return 1.0; });
  const Signal ramp = sampled(grid, [](double t) { return t; });
  const Signal c = kernels::convolve(ramp, one);
  CHECK(std::abs(c.values[grid.steps] - Complex{0.5, 0.0}) < 1e-15);
}

TEST_CASE("convolution against closed-form oscillatory integral") {
  // (sin(pi .) * exp(-.))(1) = pi (1 + e^-1) / (1 + pi^2)
  const TimeGrid grid(1.0, 200);
  const Signal a = sampled(grid, [](double t) { return std::sin(kPi * t); });
  const Signal b = sampled(grid, [](double t) { return std::exp(-t); });
  const Signal c = kernels::convolve(a, b);
  const double exact = kPi * (1.0 + std::exp(-1.0)) / (1.0 + kPi * kPi);
  CHECK(std::abs(c.values[grid.steps].real() - exact) < 5e-5);
}

TEST_CASE("convolution powers") {
  const TimeGrid grid(1.0, 400);
  const Signal one = sampled(grid, [](double) { return 1.0; });
  SUBCASE("r=2 gives t") {
    const Signal p = kernels::conv_power(one, 2);
    CHECK(std::abs(p.values[grid.steps].real() - 1.0) < 1e-13);
  }
  SUBCASE("r=3 gives t^2/2") {
    const Signal p = kernels::conv_power(one, 3);
    for (int j = 0; j < p.size(); j += 50) {
      const double t = grid.node(j);
      CHECK(std::abs(p.values[j].real() - 0.5 * t * t) < 1e-3);
    }
  }
  SUBCASE("exponential squared gives t exp(-t)") {
    const Signal k = sampled(grid, [](double t) { return std::exp(-t); });
    const Signal p = kernels::conv_power(k, 2);
    for (int j = 0; j < p.size(); j += 50) {
      const double t = grid.node(j);
      CHECK(std::abs(p.values[j].real() - t * std::exp(-t)) < 1e-4);
    }
  }
  CHECK_THROWS_AS(kernels::conv_power(one, 0), InvalidArgument);
}

TEST_CASE("convolution commutes and associates within O(h^2)") {
  const TimeGrid grid(1.5, 256);
  const Signal a = random_smooth(grid, 11);
  const Signal b = random_smooth(grid, 22);
  const Signal c = random_smooth(grid, 33);
  CHECK((kernels::convolve(a, b) - kernels::convolve(b, a)).sup_norm() < 1e-12);
  const double assoc =
      (kernels::convolve(kernels::convolve(a, b), c) -
       kernels::convolve(a, kernels::convolve(b, c)))
          .sup_norm();
  CHECK(assoc < 50.0 * grid.dt * grid.dt);
}

TEST_CASE("Richardson: halving h reduces smooth convolution error by ~4") {
  auto error_at = [](int m) {
    const TimeGrid grid(1.0, m);
    const Signal a = sampled(grid, [](double t) { return std::sin(kPi * t); });
    const Signal b = sampled(grid, [](double t) { return std::exp(-t); });
    const double exact = kPi * (1.0 + std::exp(-1.0)) / (1.0 + kPi * kPi);
    return std::abs(kernels::convolve(a, b).values[m].real() - exact);
  };
  const double ratio = error_at(128) / error_at(256);
  CHECK(ratio > 4.0 * 0.8);
  CHECK(ratio < 4.0 * 1.2);
}

TEST_CASE("grid mismatch raises") {
  const Signal a{TimeGrid(1.0, 64)};
  const Signal b{TimeGrid(1.0, 128)};
  CHECK_THROWS_AS(kernels::convolve(a, b), GridMismatch);
}

TEST_CASE("trig signals") {
  const TimeGrid grid(1.0, 64);
  SUBCASE("lambda = pi") {
    const auto trig = kernels::trig_signals(Complex{kPi, 0.0}, grid);
    const int half = 32;  // t = 0.5
    CHECK(std::abs(trig.s.values[half] - Complex{1.0, 0.0}) < 1e-14);
    CHECK(std::abs(trig.c.values[half]) < 1e-14);
    CHECK(std::abs(trig.e.values[half] - Complex{0.0, 1.0}) < 1e-14);
  }
  SUBCASE("lambda = 2 pi at t = 1") {
    const auto trig = kernels::trig_signals(Complex{2.0 * kPi, 0.0}, grid);
    CHECK(std::abs(trig.e.values[grid.steps] - Complex{1.0, 0.0}) < 1e-13);
  }
  SUBCASE("imaginary lambda gives hyperbolic branch") {
    const auto trig = kernels::trig_signals(Complex{0.0, 1.0}, grid);
    CHECK(std::abs(trig.e.values[grid.steps] - Complex{std::exp(-1.0), 0.0}) < 1e-14);
  }
}

TEST_CASE("memory kernel antiderivatives") {
  const TimeGrid grid(2.0, 256);
  SUBCASE("exponential closed forms match numeric integration") {
    const auto k = MemoryKernel::exponential(0.7, 1.3);
    const Signal ks = k.sample(grid);
    const Signal k1_numeric = kernels::cumulative_integral(ks);
    const Signal k1 = k.sample_first(grid);
    const Signal k2_numeric = kernels::cumulative_integral(k1);
    const Signal k2 = k.sample_second(grid);
    CHECK((k1 - k1_numeric).sup_norm() < 2.0 * grid.dt * grid.dt);
    CHECK((k2 - k2_numeric).sup_norm() < 2.0 * grid.dt * grid.dt);
    CHECK(k.first(0.0) == 0.0);
    CHECK(k.second(0.0) == 0.0);
  }
  SUBCASE("finite differences recover K1' = K and K2' = K1") {
    const auto k = MemoryKernel::exponential(1.0, 0.5);
    const double h = 1e-5;
    for (double t : {0.3, 1.1, 1.9}) {
      CHECK(std::abs((k.first(t + h) - k.first(t - h)) / (2 * h) - k.value(t)) < 1e-8);
      CHECK(std::abs((k.second(t + h) - k.second(t - h)) / (2 * h) - k.first(t)) < 1e-8);
    }
  }
  SUBCASE("constant family") {
    const auto k = MemoryKernel::constant(2.0);
    CHECK(k.value(0.7) == 2.0);
    CHECK(k.first(0.7) == doctest::Approx(1.4));
    CHECK(k.second(1.0) == doctest::Approx(1.0));
  }
  SUBCASE("zero detection") {
    CHECK(MemoryKernel::zero().is_zero());
    CHECK(MemoryKernel::constant(0.0).is_zero());
    CHECK(!MemoryKernel::exponential(1.0, 1.0).is_zero());
  }
}

TEST_CASE("tabulated kernel from CSV") {
  const auto dir = std::filesystem::temp_directory_path() / "memctrl_kernel_csv";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "kernel.csv").string();
  {
    std::ofstream out(path);
    out << "t,K\n";
    const int rows = 401;
    for (int i = 0; i < rows; ++i) {
      const double t = 3.0 * i / (rows - 1);
      out << t << "," << std::exp(-t) << "\n";
    }
  }
  const auto k = MemoryKernel::from_csv(path);
  const TimeGrid grid(2.0, 128);
  const Signal s = k.sample(grid);
  const auto exact = MemoryKernel::exponential(1.0, 1.0);
  CHECK((s - exact.sample(grid)).sup_norm() < 1e-4);
  CHECK(std::abs(k.first(2.0) - exact.first(2.0)) < 1e-4);
  CHECK(std::abs(k.second(2.0) - exact.second(2.0)) < 1e-4);
  CHECK_THROWS_AS(k.value(5.0), InvalidArgument);  // outside the table
}
