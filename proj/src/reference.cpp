#include "memctrl/reference.hpp"

#include "memctrl/convolution.hpp"

namespace memctrl::reference {

using kernels::Complex;

Signal convolve(const Signal& a, const Signal& b) {
  kernels::require_same_grid(a, b, "reference::convolve");
  const int m = a.grid.steps;
  const double h = a.grid.dt;
  Signal out(a.grid);
  for (int j = 1; j <= m; ++j) {
    Complex acc = 0.5 * (a.values[0] * b.values[j] + a.values[j] * b.values[0]);
    for (int i = 1; i < j; ++i) acc += a.values[i] * b.values[j - i];
    out.values[j] = h * acc;
  }
  return out;
}

std::vector<volterra::ZetaTable> solve_zeta_batch(const spectral::ModalBasis& basis,
                                                  const kernels::MemoryKernel& kernel,
                                                  const kernels::TimeGrid& grid) {
  std::vector<volterra::ZetaTable> tables;
  tables.reserve(basis.modes.size());
  for (const auto& mode : basis.modes)
    tables.push_back(volterra::solve_zeta_timestep(mode, kernel, grid));
  return tables;
}

Eigen::MatrixXcd assemble_gram(const moment::RealifiedFamily& family) {
  const int k = static_cast<int>(family.columns.size());
  Eigen::MatrixXcd gram(k, k);
  for (int v = 0; v < k; ++v) {
    for (int u = v; u < k; ++u) {
      const Complex entry = kernels::inner_product(family.columns[u], family.columns[v]);
      gram(v, u) = entry;
      gram(u, v) = std::conj(entry);
    }
  }
  return gram;
}

spectral::CoeffState simulate_modal(const Signal& f, const spectral::ModalBasis& basis,
                                    const kernels::MemoryKernel& kernel,
                                    const kernels::TimeGrid& grid) {
  const Signal ks = kernel.sample(grid);
  spectral::CoeffState state;
  state.position.assign(basis.size(), Complex{});
  state.velocity.assign(basis.size(), Complex{});
  for (int n = 0; n < basis.size(); ++n) {
    Signal forcing(grid);
    for (int j = 0; j < grid.size(); ++j)
      forcing.values[j] = -basis.modes[n].trace * f.values[j];
    auto [w, v] =
        volterra::detail::integrate_memory_ode(basis.modes[n].lambda_sq, ks, &forcing, 0.0, 0.0);
    state.position[n] = w.values[grid.steps];
    state.velocity[n] = v.values[grid.steps];
  }
  return state;
}

}  // namespace memctrl::reference
