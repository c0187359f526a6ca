#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "memctrl/moment.hpp"

namespace memctrl::synthesis {

using kernels::Complex;
using kernels::MemoryKernel;
using kernels::Signal;
using kernels::TimeGrid;
using spectral::CoeffState;
using spectral::TailVerdict;

enum class ControlClass { L2, H10, H20, H30 };

std::string to_string(ControlClass cls);
/// Number of vanishing moments int_0^T (T-s)^k g ds = 0, k < this, the
/// generator must satisfy (0 for L2, 1 for H10, 2 for H20, 3 for H30).
int vanishing_moments(ControlClass cls);
/// Target smoothness class steered by each control class (H30 has none).
moment::SmoothnessClass target_class_for(ControlClass cls);

/// Generator g plus the control f applied at x = 0:
///   L2:  f = g
///   H10: f(t) = int_0^t g
///   H20: f(t) = int_0^t (t-s) g(s) ds
///   H30: f(t) = int_0^t (t-s)^2 g(s) ds
struct ControlSignal {
  ControlClass cls = ControlClass::L2;
  Signal g;
  Signal f;
};

/// Checks the class's vanishing-moment constraints (ConstraintViolated lists
/// the first violated functional), then lifts g to f.
ControlSignal lift_generator(const Signal& g, ControlClass cls);

/// Per-mode timestepping of
///   w_n'' = -lambda_n^2 w_n + (K*w_n)(t) - trace_n f(t),  w_n(0) = w_n'(0) = 0.
/// The boundary forcing enters with -trace_n (the sign that reproduces the
/// K = 0 closed form; the representation simulator uses the same convention).
CoeffState simulate_modal(const Signal& f, const spectral::ModalBasis& basis,
                          const MemoryKernel& kernel, const TimeGrid& grid);

/// State at T through the impulse-response representation:
///   w_n(T) = -trace_n (zeta_n * f)(T),  w_n'(T) = -trace_n (zeta_n' * f)(T).
CoeffState simulate_via_representation(const Signal& f,
                                       const std::vector<volterra::ZetaTable>& zetas);

/// Coefficients (w_n, w_n') a target (xi, eta) prescribes in its class
/// normalization.
CoeffState target_coeff_state(const moment::TargetSpec& target,
                              const spectral::ModalBasis& basis);

struct ReachReport {
  CoeffState target;
  CoeffState achieved;
  int weight_order = 0;       // position weight |lambda|^p, velocity |lambda|^(p-1)
  double weighted_error = 0.0;
  double target_norm = 0.0;
  double relative_error = 0.0;
};

ReachReport make_reach_report(const CoeffState& target, const CoeffState& achieved,
                              const spectral::ModalBasis& basis, int weight_order);

struct SteerResult {
  ControlSignal control;
  ReachReport report;
  double moment_residual = 0.0;
  double gram_condition = 0.0;
  std::vector<double> gram_spectrum;
};

inline constexpr double kReachThreshold = 1e-3;

/// Full pipeline: zeta tables -> moment kernels -> projection -> Gram ->
/// minimum-norm generator -> lift -> independent modal simulation -> report.
/// Throws ReachFailed when the relative reach error exceeds kReachThreshold.
SteerResult steer(const moment::TargetSpec& target, const spectral::ModalBasis& basis,
                  const MemoryKernel& kernel, const TimeGrid& grid, ControlClass cls,
                  double ridge = 1e-10);

/// Obs(g1) = int_0^T (T-nu)^2 (K*g1)(nu) dnu.
double obstruction_value(const MemoryKernel& kernel, const Signal& g1,
                         const TimeGrid& grid);

/// Orthogonal projection onto the three-constraint subspace of H30
/// generators (discrete removal of span{1, t, t^2}).
Signal project_h3_constraints(const Signal& s);

struct RegularityRun {
  std::string kernel_description;
  CoeffState state;
  std::array<std::vector<double>, 4> partial_sums;  // S_k(N), k = 1..4
  std::array<double, 4> slopes{};
  std::array<TailVerdict, 4> verdicts{};
};

struct RegularityReport {
  double obstruction = 0.0;
  ControlSignal control;
  RegularityRun with_kernel;
  std::optional<RegularityRun> zero_twin;  // runs alongside when K != 0
};

/// The negative-regularity experiment: H30 control g(x,t) = g0 g1(t), modal
/// simulation, weighted tails S_k(N) for k = 1..4 with fitted slopes.  When
/// K != 0 the obstruction must not vanish (ObstructionVanishes otherwise) and
/// a K = 0 twin runs alongside for contrast.
RegularityReport regularity_experiment(const MemoryKernel& kernel, double g0,
                                       const Signal& g1, const spectral::ModalBasis& basis,
                                       const TimeGrid& grid);

}  // namespace memctrl::synthesis
