#pragma once

#include "memctrl/spectral.hpp"
#include "memctrl/time_grid.hpp"

namespace memctrl::kernels {

/// Trapezoidal convolution quadrature:
///   (a*b)(t_j) ~ int_0^{t_j} a(s) b(t_j - s) ds,
/// second order on C^2 integrands, exact zero at t = 0.  O(m^2); each output
/// node is independent, so the loop is parallel and deterministic.
Signal convolve(const Signal& a, const Signal& b);

/// r-fold convolution power a^(*r); a^(*1) = a.
Signal conv_power(const Signal& a, int r);

struct TrigSignals {
  Signal s;  // sin(lambda t)
  Signal c;  // cos(lambda t)
  Signal e;  // exp(i lambda t)
};

/// Sampled S, C, E for a (possibly imaginary) lambda; complex definitions
/// throughout, so imaginary lambda yields the hyperbolic branch.
TrigSignals trig_signals(Complex lambda, const TimeGrid& grid);
TrigSignals trig_signals(const spectral::Mode& mode, const TimeGrid& grid);

}  // namespace memctrl::kernels
