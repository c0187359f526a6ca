#include "memctrl/synthesis.hpp"

#include <cmath>

#include "memctrl/convolution.hpp"

namespace memctrl::synthesis {

namespace {

// The modal equation carries the boundary forcing as -(gamma_1 phi_n) f while
// the paper's impulse-response representation is written without the minus;
// the simulators use the physical sign (fixed by the K = 0 closed form), so
// the moment right-hand side flips globally.
constexpr double kBoundarySign = -1.0;

Signal polynomial_signal(const TimeGrid& grid, int power) {
  Signal s(grid);
  for (int j = 0; j < s.size(); ++j) s.values[j] = std::pow(grid.node(j), power);
  return s;
}

}  // namespace

std::string to_string(ControlClass cls) {
  switch (cls) {
    case ControlClass::L2: return "L2";
    case ControlClass::H10: return "H10";
    case ControlClass::H20: return "H20";
    case ControlClass::H30: return "H30";
  }
  return "?";
}

int vanishing_moments(ControlClass cls) {
  switch (cls) {
    case ControlClass::L2: return 0;
    case ControlClass::H10: return 1;
    case ControlClass::H20: return 2;
    case ControlClass::H30: return 3;
  }
  return 0;
}

moment::SmoothnessClass target_class_for(ControlClass cls) {
  switch (cls) {
    case ControlClass::L2: return moment::SmoothnessClass::L2xHm1;
    case ControlClass::H10: return moment::SmoothnessClass::H10xL2;
    case ControlClass::H20: return moment::SmoothnessClass::H2xH10;
    default:
      throw InvalidArgument("no steering target class for control class H30");
  }
}

ControlSignal lift_generator(const Signal& g, ControlClass cls) {
  const TimeGrid& grid = g.grid;
  const double T = grid.horizon;
  const double scale = g.l2_norm();
  for (int k = 0; k < vanishing_moments(cls); ++k) {
    Complex moment_k{};
    for (int j = 0; j < g.size(); ++j)
      moment_k += kernels::trapezoid_weight(grid, j) * std::pow(T - grid.node(j), k) *
                  g.values[j];
    const double tol = 1e-6 * scale * std::pow(T, k) * std::sqrt(T);
    if (std::abs(moment_k) > tol)
      throw ConstraintViolated("lift_generator(" + to_string(cls) + "): moment k=" +
                               std::to_string(k) + " of g equals " +
                               std::to_string(std::abs(moment_k)) + " (tolerance " +
                               std::to_string(tol) + ")");
  }
  ControlSignal control;
  control.cls = cls;
  control.g = g;
  switch (cls) {
    case ControlClass::L2: control.f = g; break;
    case ControlClass::H10: control.f = kernels::cumulative_integral(g); break;
    case ControlClass::H20: control.f = kernels::convolve(polynomial_signal(grid, 1), g); break;
    case ControlClass::H30: control.f = kernels::convolve(polynomial_signal(grid, 2), g); break;
  }
  return control;
}

CoeffState simulate_modal(const Signal& f, const spectral::ModalBasis& basis,
                          const MemoryKernel& kernel, const TimeGrid& grid) {
  require_grid(f, grid, "simulate_modal");
  for (const auto& mode : basis.modes) volterra::require_resolved(mode, grid);
  const Signal ks = kernel.sample(grid);
  CoeffState state;
  state.position.assign(basis.size(), Complex{});
  state.velocity.assign(basis.size(), Complex{});
#pragma omp parallel for schedule(dynamic)
  for (int n = 0; n < basis.size(); ++n) {
    Signal forcing(grid);
    for (int j = 0; j < grid.size(); ++j)
      forcing.values[j] = kBoundarySign * basis.modes[n].trace * f.values[j];
    auto [w, v] =
        volterra::detail::integrate_memory_ode(basis.modes[n].lambda_sq, ks, &forcing, 0.0, 0.0);
    state.position[n] = w.values[grid.steps];
    state.velocity[n] = v.values[grid.steps];
  }
  return state;
}

CoeffState simulate_via_representation(const Signal& f,
                                       const std::vector<volterra::ZetaTable>& zetas) {
  if (zetas.empty()) throw InvalidArgument("simulate_via_representation: no zeta tables");
  for (const auto& zt : zetas) require_same_grid(f, zt.zeta, "simulate_via_representation");
  const TimeGrid& grid = f.grid;
  const int m = grid.steps;
  CoeffState state;
  state.position.assign(zetas.size(), Complex{});
  state.velocity.assign(zetas.size(), Complex{});
#pragma omp parallel for schedule(static)
  for (int n = 0; n < static_cast<int>(zetas.size()); ++n) {
    Complex wp{}, vp{};
    for (int j = 0; j <= m; ++j) {
      const double w = kernels::trapezoid_weight(grid, j);
      wp += w * zetas[n].zeta.values[m - j] * f.values[j];
      vp += w * zetas[n].dzeta.values[m - j] * f.values[j];
    }
    const double factor = kBoundarySign * zetas[n].mode.trace;
    state.position[n] = factor * wp;
    state.velocity[n] = factor * vp;
  }
  return state;
}

CoeffState target_coeff_state(const moment::TargetSpec& target,
                              const spectral::ModalBasis& basis) {
  if (static_cast<int>(target.xi.size()) != basis.size() ||
      static_cast<int>(target.eta.size()) != basis.size())
    throw InvalidArgument("target_coeff_state: coefficient count must match basis");
  CoeffState state;
  state.position.reserve(basis.size());
  state.velocity.reserve(basis.size());
  for (int n = 0; n < basis.size(); ++n) {
    const Complex lambda = basis.modes[n].lambda;
    switch (target.cls) {
      case moment::SmoothnessClass::L2xHm1:
        state.position.push_back(target.xi[n]);
        state.velocity.push_back(target.eta[n] * lambda);
        break;
      case moment::SmoothnessClass::H10xL2:
        state.position.push_back(target.xi[n] / lambda);
        state.velocity.push_back(target.eta[n]);
        break;
      case moment::SmoothnessClass::H2xH10:
        state.position.push_back(target.xi[n] / (lambda * lambda));
        state.velocity.push_back(target.eta[n] / lambda);
        break;
    }
  }
  return state;
}

ReachReport make_reach_report(const CoeffState& target, const CoeffState& achieved,
                              const spectral::ModalBasis& basis, int weight_order) {
  if (target.size() != achieved.size())
    throw InvalidArgument("make_reach_report: state sizes differ");
  ReachReport report;
  report.target = target;
  report.achieved = achieved;
  report.weight_order = weight_order;
  double err = 0.0, norm = 0.0;
  for (int n = 0; n < target.size(); ++n) {
    const double al = basis.modes[n].abs_lambda();
    const double wp = std::pow(al, weight_order);
    const double wv = std::pow(al, weight_order - 1);
    err += std::norm(wp * (achieved.position[n] - target.position[n]));
    err += std::norm(wv * (achieved.velocity[n] - target.velocity[n]));
    norm += std::norm(wp * target.position[n]) + std::norm(wv * target.velocity[n]);
  }
  report.weighted_error = std::sqrt(err);
  report.target_norm = std::sqrt(norm);
  report.relative_error =
      report.target_norm > 0.0 ? report.weighted_error / report.target_norm
                               : report.weighted_error;
  return report;
}

SteerResult steer(const moment::TargetSpec& target, const spectral::ModalBasis& basis,
                  const MemoryKernel& kernel, const TimeGrid& grid, ControlClass cls,
                  double ridge) {
  if (cls == ControlClass::H30)
    throw InvalidArgument("steer: H30 is not a steering class (see regularity_experiment)");
  if (target.cls != target_class_for(cls))
    throw ClassMismatch("steer: target class " + moment::to_string(target.cls) +
                        " does not match control class " + to_string(cls));
  if (basis.domain == spectral::DomainTag::interval && grid.horizon < 2.0)
    throw InvalidArgument("steer: needs T >= 2 (critical time for the interval with "
                          "control at x = 0)");
  for (const auto& mode : basis.modes)
    if (!(mode.lambda_sq > 0.0))
      throw InvalidArgument("steer: requires a positive spectrum (all lambda_n^2 > 0)");

  const auto zetas = volterra::solve_zeta_batch(basis, kernel, grid);
  auto set = moment::build_kernel_set(moment::order_of(target.cls), basis, zetas, kernel);
  auto c = moment::target_to_moments(target);
  for (auto& cn : c) cn *= kBoundarySign;
  auto system = moment::make_system(std::move(set), std::move(c));

  SteerResult result;
  const Signal g = moment::solve_min_norm(system, ridge);
  result.moment_residual = system.residual;
  result.gram_condition = system.condition;
  result.gram_spectrum = system.gram_spectrum;
  result.control = lift_generator(g, cls);

  const CoeffState achieved = simulate_modal(result.control.f, basis, kernel, grid);
  const CoeffState wanted = target_coeff_state(target, basis);
  result.report = make_reach_report(wanted, achieved, basis, moment::order_of(target.cls));
  if (result.report.relative_error > kReachThreshold)
    throw ReachFailed("steer: relative reach error " +
                          std::to_string(result.report.relative_error) + " > " +
                          std::to_string(kReachThreshold),
                      result.report.relative_error);
  return result;
}

double obstruction_value(const MemoryKernel& kernel, const Signal& g1, const TimeGrid& grid) {
  require_grid(g1, grid, "obstruction_value");
  const Signal kg = kernels::convolve(kernel.sample(grid), g1);
  Complex acc{};
  const double T = grid.horizon;
  for (int j = 0; j < kg.size(); ++j) {
    const double weight = kernels::trapezoid_weight(grid, j);
    const double poly = (T - grid.node(j)) * (T - grid.node(j));
    acc += weight * poly * kg.values[j];
  }
  return acc.real();
}

Signal project_h3_constraints(const Signal& s) {
  // Remove the discrete best-fit quadratic: output annihilates
  // int (T-s)^k g for k = 0, 1, 2.
  const TimeGrid& grid = s.grid;
  std::array<Signal, 3> basis{polynomial_signal(grid, 0), polynomial_signal(grid, 1),
                              polynomial_signal(grid, 2)};
  Eigen::Matrix3d gram;
  Eigen::Vector3cd rhs;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b)
      gram(a, b) = kernels::inner_product(basis[b], basis[a]).real();
    rhs(a) = kernels::inner_product(s, basis[a]);
  }
  const Eigen::Vector3cd coeff = gram.ldlt().solve(rhs.real()).cast<Complex>() +
                                 Complex{0.0, 1.0} *
                                     gram.ldlt().solve(rhs.imag()).cast<Complex>();
  Signal out = s;
  for (int j = 0; j < out.size(); ++j) {
    const double t = grid.node(j);
    out.values[j] -= coeff(0) + coeff(1) * t + coeff(2) * t * t;
  }
  return out;
}

namespace {

RegularityRun run_regularity_case(const MemoryKernel& kernel, const ControlSignal& control,
                                  const spectral::ModalBasis& basis, const TimeGrid& grid) {
  RegularityRun run;
  run.kernel_description = kernel.describe();
  run.state = simulate_modal(control.f, basis, kernel, grid);
  for (int k = 1; k <= 4; ++k) {
    const auto tail = spectral::weighted_tail(run.state, basis, k);
    run.partial_sums[k - 1] = tail.partial_sums;
    run.slopes[k - 1] = spectral::fit_decay_exponent(tail.partial_sums);
    run.verdicts[k - 1] = spectral::classify_slope(run.slopes[k - 1]);
  }
  return run;
}

}  // namespace

RegularityReport regularity_experiment(const MemoryKernel& kernel, double g0,
                                       const Signal& g1, const spectral::ModalBasis& basis,
                                       const TimeGrid& grid) {
  if (basis.size() < 8)
    throw InvalidArgument("regularity_experiment: need >= 8 modes for the slope fits");
  RegularityReport report;
  report.obstruction = obstruction_value(kernel, g1, grid);
  const double T = grid.horizon;
  if (!kernel.is_zero()) {
    const double scale =
        kernel.sup_on(grid) * g1.l2_norm() * std::pow(T, 3) * std::sqrt(T) + 1e-300;
    if (std::abs(report.obstruction) <= 1e-8 * scale)
      throw ObstructionVanishes("regularity_experiment: Obs(g1) = " +
                                std::to_string(report.obstruction) +
                                " vanishes; experiment inconclusive for this generator");
  }
  Signal g = g1;
  for (auto& v : g.values) v *= g0;
  report.control = lift_generator(g, ControlClass::H30);
  report.with_kernel = run_regularity_case(kernel, report.control, basis, grid);
  if (!kernel.is_zero())
    report.zero_twin =
        run_regularity_case(MemoryKernel::zero(), report.control, basis, grid);
  return report;
}

}  // namespace memctrl::synthesis
