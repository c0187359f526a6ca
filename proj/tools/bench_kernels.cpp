// Timing comparison between the OpenMP production kernels and the serial
// reference implementations: convolution, zeta batch solve, Gram assembly,
// forced modal simulation.
#include <chrono>
#include <cstdio>
#include <numbers>

#include "memctrl/convolution.hpp"
#include "memctrl/moment.hpp"
#include "memctrl/reference.hpp"
#include "memctrl/runtime.hpp"
#include "memctrl/synthesis.hpp"
#include "memctrl/volterra.hpp"

namespace {

using namespace memctrl;
using Clock = std::chrono::steady_clock;

template <typename F>
double time_ms(F&& fn, int reps = 3) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    fn();
    const auto t1 = Clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-22s serial %9.2f ms   openmp %9.2f ms   speedup %5.2fx\n", name, serial_ms,
              parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main() {
  const int threads = runtime::apply_thread_cap();
  std::printf("memctrl kernel benchmark (%d threads)\n", threads);

  const kernels::TimeGrid grid(2.0, 4096);
  const auto kernel = kernels::MemoryKernel::exponential(1.0, 1.0);
  const auto basis = spectral::build_interval_basis(0.0, 16);

  kernels::Signal a(grid), b(grid);
  for (int j = 0; j < grid.size(); ++j) {
    const double t = grid.node(j);
    a.values[j] = {std::sin(3.0 * t), std::cos(t)};
    b.values[j] = {std::exp(-t), 0.1 * t};
  }
  report("convolve m=4096",
         time_ms([&] { (void)reference::convolve(a, b); }),
         time_ms([&] { (void)kernels::convolve(a, b); }));

  const kernels::TimeGrid zgrid(2.0, 2048);
  report("zeta batch N=16",
         time_ms([&] { (void)reference::solve_zeta_batch(basis, kernel, zgrid); }, 2),
         time_ms([&] { (void)volterra::solve_zeta_batch(basis, kernel, zgrid); }, 2));

  const auto zetas = volterra::solve_zeta_batch(basis, kernel, zgrid);
  const auto set = moment::build_kernel_set(1, basis, zetas, kernel);
  const auto family = moment::realified_family(set);
  report("gram 32x32 m=2048",
         time_ms([&] { (void)reference::assemble_gram(family); }),
         time_ms([&] { (void)moment::assemble_gram(family); }));

  kernels::Signal f(zgrid);
  for (int j = 0; j < zgrid.size(); ++j)
    f.values[j] = std::sin(std::numbers::pi * zgrid.node(j));
  report("simulate N=16 m=2048",
         time_ms([&] { (void)reference::simulate_modal(f, basis, kernel, zgrid); }, 2),
         time_ms([&] { (void)synthesis::simulate_modal(f, basis, kernel, zgrid); }, 2));
  return 0;
}
