#pragma once

#include <Eigen/Dense>
#include <vector>

#include "memctrl/moment.hpp"
#include "memctrl/synthesis.hpp"
#include "memctrl/volterra.hpp"

/// Plain serial implementations of the parallel hot kernels, kept as the
/// ground truth for the consistency tests and the benchmark target.  Same
/// arithmetic per output element as the production loops.
namespace memctrl::reference {

using kernels::Signal;

Signal convolve(const Signal& a, const Signal& b);

std::vector<volterra::ZetaTable> solve_zeta_batch(const spectral::ModalBasis& basis,
                                                  const kernels::MemoryKernel& kernel,
                                                  const kernels::TimeGrid& grid);

Eigen::MatrixXcd assemble_gram(const moment::RealifiedFamily& family);

spectral::CoeffState simulate_modal(const Signal& f, const spectral::ModalBasis& basis,
                                    const kernels::MemoryKernel& kernel,
                                    const kernels::TimeGrid& grid);

}  // namespace memctrl::reference
