#include "memctrl/volterra.hpp"

#include <cmath>
#include <utility>

#include "memctrl/convolution.hpp"
#include "memctrl/csv.hpp"

namespace memctrl::volterra {

void require_resolved(const spectral::Mode& mode, const TimeGrid& grid) {
  if (grid.dt * mode.abs_lambda() > 0.5)
    throw UnderResolved("mode " + std::to_string(mode.index) +
                        ": h |lambda| = " + std::to_string(grid.dt * mode.abs_lambda()) +
                        " > 0.5");
}

namespace detail {

std::pair<Signal, Signal> integrate_memory_ode(double lambda_sq, const Signal& kernel_samples,
                                               const Signal* forcing, Complex w0, Complex v0) {
  const TimeGrid grid = kernel_samples.grid;
  if (forcing) require_same_grid(kernel_samples, *forcing, "integrate_memory_ode");
  const int m = grid.steps;
  const double h = grid.dt;
  Signal w(grid), v(grid);
  w.values[0] = w0;
  v.values[0] = v0;
  const Complex* K = kernel_samples.values.data();
  Complex* wv = w.values.data();

  // Trapezoid memory term M_j = int_0^{t_j} K(t_j - s) w(s) ds.
  auto memory = [&](int j) -> Complex {
    if (j == 0) return Complex{};
    Complex acc = 0.5 * (K[j] * wv[0] + K[0] * wv[j]);
    for (int i = 1; i < j; ++i) acc += K[j - i] * wv[i];
    return h * acc;
  };
  auto force = [&](int j) -> Complex { return forcing ? forcing->values[j] : Complex{}; };

  Complex a = -lambda_sq * w.values[0] + memory(0) + force(0);
  for (int j = 0; j < m; ++j) {
    w.values[j + 1] = w.values[j] + h * v.values[j] + 0.5 * h * h * a;
    const Complex a_next = -lambda_sq * w.values[j + 1] + memory(j + 1) + force(j + 1);
    v.values[j + 1] = v.values[j] + 0.5 * h * (a + a_next);
    a = a_next;
  }
  return {std::move(w), std::move(v)};
}

}  // namespace detail

namespace {

Signal combine_z(const Signal& dzeta, Complex lambda, const Signal& zeta) {
  Signal z(zeta.grid);
  const Complex i{0.0, 1.0};
  for (int j = 0; j < z.size(); ++j) z.values[j] = dzeta.values[j] + i * lambda * zeta.values[j];
  return z;
}

}  // namespace

ZetaTable solve_zeta_timestep(const spectral::Mode& mode, const MemoryKernel& kernel,
                              const TimeGrid& grid) {
  require_resolved(mode, grid);
  const Signal ks = kernel.sample(grid);
  auto [zeta, dzeta] = detail::integrate_memory_ode(mode.lambda_sq, ks, nullptr, 0.0, 1.0);
  ZetaTable table{mode, grid, std::move(zeta), std::move(dzeta), Signal(grid), Method::timestep, 0};
  table.z = combine_z(table.dzeta, mode.lambda, table.zeta);
  return table;
}

ZetaTable solve_zeta_picard(const spectral::Mode& mode, const MemoryKernel& kernel,
                            const TimeGrid& grid, int max_iter, double tol) {
  require_resolved(mode, grid);
  if (max_iter < 1) throw InvalidArgument("solve_zeta_picard: max_iter must be >= 1");
  const auto trig = kernels::trig_signals(mode, grid);
  const Signal ks = kernel.sample(grid);
  const Signal q = (1.0 / mode.lambda) * kernels::convolve(ks, trig.s);
  const Signal zeta0 = (1.0 / mode.lambda) * trig.s;

  Signal zeta = zeta0;
  Signal dzeta = trig.c;
  int used = 0;
  bool converged = false;
  for (int it = 1; it <= max_iter; ++it) {
    Signal zeta_next = zeta0 + kernels::convolve(q, zeta);
    Signal dzeta_next = trig.c + kernels::convolve(q, dzeta);
    const double dist =
        std::max((zeta_next - zeta).sup_norm(), (dzeta_next - dzeta).sup_norm());
    zeta = std::move(zeta_next);
    dzeta = std::move(dzeta_next);
    used = it;
    if (dist < tol) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw NoConvergence("solve_zeta_picard: tolerance " + std::to_string(tol) + " not met in " +
                        std::to_string(max_iter) + " iterations");
  ZetaTable table{mode, grid, std::move(zeta), std::move(dzeta), Signal(grid), Method::picard,
                  used};
  table.z = combine_z(table.dzeta, mode.lambda, table.zeta);
  return table;
}

std::vector<ZetaTable> solve_zeta_batch(const spectral::ModalBasis& basis,
                                        const MemoryKernel& kernel, const TimeGrid& grid) {
  for (const auto& mode : basis.modes) require_resolved(mode, grid);
  std::vector<ZetaTable> tables(basis.modes.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < basis.size(); ++i)
    tables[i] = solve_zeta_timestep(basis.modes[i], kernel, grid);
  return tables;
}

ZExpansion z_expansion(const spectral::Mode& mode, const MemoryKernel& kernel,
                       const TimeGrid& grid, int order) {
  if (mode.lambda_sq < 0.0)
    throw ImaginaryLambda("z_expansion: requires lambda real (lambda_sq > 0)");
  if (order < 0 || order > 4) throw InvalidArgument("z_expansion: order must be in [0, 4]");
  const auto trig = kernels::trig_signals(mode, grid);
  const Signal ks = kernel.sample(grid);

  Signal expansion = trig.e;
  if (order >= 1) {
    // K^(*r) * S^(*r) = (K*S)^(*r); accumulate (K*S)^(*r) * E iteratively.
    const Signal q = kernels::convolve(ks, trig.s);
    Signal acc = trig.e;
    Complex scale = 1.0;
    for (int r = 1; r <= order; ++r) {
      acc = kernels::convolve(q, acc);
      scale /= mode.lambda;
      expansion = expansion + scale * acc;
    }
  }
  const ZetaTable table = solve_zeta_timestep(mode, kernel, grid);
  const Complex factor = std::pow(mode.lambda, static_cast<double>(order + 1));
  Signal remainder = factor * (table.z - expansion);
  return {std::move(expansion), std::move(remainder)};
}

void write_csv(const ZetaTable& table, const std::string& path) {
  csv::Writer out(path, {"t", "re_zeta", "im_zeta", "re_dzeta", "im_dzeta"});
  for (int j = 0; j < table.grid.size(); ++j)
    out.row({table.grid.node(j), table.zeta.values[j].real(), table.zeta.values[j].imag(),
             table.dzeta.values[j].real(), table.dzeta.values[j].imag()});
}

}  // namespace memctrl::volterra
