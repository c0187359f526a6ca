#pragma once

#include <string>
#include <vector>

#include "memctrl/memory_kernel.hpp"
#include "memctrl/spectral.hpp"
#include "memctrl/time_grid.hpp"

namespace memctrl::volterra {

using kernels::Complex;
using kernels::MemoryKernel;
using kernels::Signal;
using kernels::TimeGrid;

enum class Method { timestep, picard, closed_form };

/// Sampled trajectory of the modal memory equation
///   zeta'' = -lambda^2 zeta + (K * zeta)(t),  zeta(0) = 0, zeta'(0) = 1,
/// together with Z = zeta' + i lambda zeta.
struct ZetaTable {
  spectral::Mode mode;
  TimeGrid grid;
  Signal zeta;
  Signal dzeta;
  Signal z;
  Method method = Method::timestep;
  int iterations_used = 0;  // picard only
};

/// Throws UnderResolved unless h |lambda| <= 0.5.
void require_resolved(const spectral::Mode& mode, const TimeGrid& grid);

/// Velocity Stoermer-Verlet with trapezoidal memory term; second order.
ZetaTable solve_zeta_timestep(const spectral::Mode& mode, const MemoryKernel& kernel,
                              const TimeGrid& grid);

/// Picard iteration on the second-kind Volterra forms
///   zeta  = S/lambda + (K*S/lambda) * zeta,
///   zeta' = C        + (K*S/lambda) * zeta',
/// run until successive sup-distance < tol.  Throws NoConvergence when
/// max_iter is too small for the requested tol.
ZetaTable solve_zeta_picard(const spectral::Mode& mode, const MemoryKernel& kernel,
                            const TimeGrid& grid, int max_iter, double tol);

/// Per-mode solves in a parallel map; results in basis order.
std::vector<ZetaTable> solve_zeta_batch(const spectral::ModalBasis& basis,
                                        const MemoryKernel& kernel, const TimeGrid& grid);

struct ZExpansion {
  Signal expansion;  // E + sum_{r<=order} lambda^-r (K*S)^(*r) * E
  Signal remainder;  // lambda^(order+1) (Z - expansion)
};

/// Truncated convolution expansion of Z and its scaled remainder; Z comes
/// from solve_zeta_timestep.  Requires lambda real (large-n regime).
ZExpansion z_expansion(const spectral::Mode& mode, const MemoryKernel& kernel,
                       const TimeGrid& grid, int order);

/// Columns t, Re zeta, Im zeta, Re zeta', Im zeta'.
void write_csv(const ZetaTable& table, const std::string& path);

namespace detail {
/// Shared integrator for w'' = -lambda_sq w + (K*w)(t) + forcing,
/// w(0) = w0, w'(0) = v0.  Returns (w, w').
std::pair<Signal, Signal> integrate_memory_ode(double lambda_sq, const Signal& kernel_samples,
                                               const Signal* forcing, Complex w0, Complex v0);
}  // namespace detail

}  // namespace memctrl::volterra
