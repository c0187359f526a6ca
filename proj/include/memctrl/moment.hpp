#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "memctrl/memory_kernel.hpp"
#include "memctrl/spectral.hpp"
#include "memctrl/time_grid.hpp"
#include "memctrl/volterra.hpp"

namespace memctrl::moment {

using kernels::Complex;
using kernels::MemoryKernel;
using kernels::Signal;
using kernels::TimeGrid;

/// Orthogonal projection onto N1 = { g : int_0^T g = 0 } under the discrete
/// trapezoid inner product (mean removal); idempotent and self-adjoint to
/// machine precision.
Signal project_N1(const Signal& s);

struct ProjectionCoeffs {
  Complex slope;      // A: coefficient of t removed
  Complex intercept;  // B: constant removed
};

/// Orthogonal projection onto N2 = { g : int_0^T g = 0, int_0^T (T-r) g = 0 },
/// i.e. removal of the discrete best-fit affine part s(t) - t A - B.
Signal project_N2(const Signal& s, ProjectionCoeffs* coeffs = nullptr);

/// Moment kernels for one control class:
///   order 0: e_n = Psi_n (zeta' + i lambda zeta)
///   order 1: e_n = Psi_n [(zeta' - K1*zeta) + i lambda zeta],        p_n = P_N1 e_n
///   order 2: e_n = Psi_n [(zeta' - K1*zeta) + i lambda (zeta - K2*zeta)], p_n = P2 e_n
/// Kernels are stored un-reversed; pair() applies the g(T-r) time reversal.
struct MomentKernelSet {
  int order = 0;
  TimeGrid grid;
  std::vector<spectral::Mode> modes;
  std::vector<Signal> raw;        // e_n
  std::vector<Signal> projected;  // p_n, orders 1-2 only

  int size() const { return static_cast<int>(modes.size()); }
  /// Kernel actually used in pairings: projected for orders 1-2, raw else.
  const Signal& pairing_kernel(int i) const;
};

MomentKernelSet build_kernel_set(int order, const spectral::ModalBasis& basis,
                                 const std::vector<volterra::ZetaTable>& zetas,
                                 const MemoryKernel& kernel);

/// Moment values m_n = int_0^T kappa_n(r) g(T-r) dr (bilinear pairing).
std::vector<Complex> pair(const MomentKernelSet& set, const Signal& g);

/// Conjugate-closed working family: modes with lambda^2 > 0 contribute
/// conj(kappa_n) and kappa_n, modes with lambda^2 < 0 a single column (their
/// kernel is colinear with its conjugate).  Column c belongs to mode
/// column_mode[c]; column_conjugated[c] marks the conjugated copy.
struct RealifiedFamily {
  std::vector<Signal> columns;
  std::vector<int> column_mode;
  std::vector<bool> column_conjugated;
};

RealifiedFamily realified_family(const MomentKernelSet& set, int n_modes = -1);

/// Hermitian Gram matrix G_vu = <kappa_u, kappa_v> of the realified family
/// under trapezoid weights.
Eigen::MatrixXcd assemble_gram(const MomentKernelSet& set);
Eigen::MatrixXcd assemble_gram(const RealifiedFamily& family);

enum class SmoothnessClass { L2xHm1, H10xL2, H2xH10 };

int order_of(SmoothnessClass cls);
std::string to_string(SmoothnessClass cls);

/// Target pair (xi, eta) in the normalized coefficient form of its class:
///   L2xHm1:  xi = sum xi_n phi_n,            eta = sum (eta_n lambda_n) phi_n
///   H10xL2:  xi = sum (xi_n / lambda_n) phi_n, eta = sum eta_n phi_n
///   H2xH10:  xi = sum (xi_n / lambda_n^2) phi_n, eta = sum (eta_n / lambda_n) phi_n
struct TargetSpec {
  SmoothnessClass cls = SmoothnessClass::L2xHm1;
  std::vector<double> xi;
  std::vector<double> eta;
};

/// Per-class complex factors c_n = xi_factor xi_n + eta_factor eta_n.  The
/// shipped defaults are validated end-to-end by the steer tests.
struct MomentConvention {
  Complex xi_factor;
  Complex eta_factor;
};

struct ConventionTable {
  MomentConvention order0{{0.0, 1.0}, {1.0, 0.0}};    // c = eta + i xi
  MomentConvention order1{{-1.0, 0.0}, {0.0, 1.0}};   // c = -xi + i eta
  MomentConvention order2{{0.0, -1.0}, {-1.0, 0.0}};  // c = -eta - i xi
  const MomentConvention& for_class(SmoothnessClass cls) const;
};

std::vector<Complex> target_to_moments(const TargetSpec& target,
                                       const ConventionTable& table = ConventionTable{});

/// Truncated moment problem: Gram matrix, right-hand side, and solution.
struct MomentSystem {
  MomentKernelSet kernels;
  RealifiedFamily family;
  Eigen::MatrixXcd gram;
  std::vector<Complex> c;
  Eigen::VectorXcd beta;
  double residual = -1.0;
  double ridge = 0.0;
  double condition = 0.0;
  std::vector<double> gram_spectrum;  // eigenvalues of G + ridge I, ascending
};

MomentSystem make_system(MomentKernelSet set, std::vector<Complex> c);

/// Minimum-norm least squares through the ridge-regularized normal equations
/// (G + ridge I) beta = [c, conj(c)]; returns the real generator
/// g(r) = (sum_k beta_k kappa_k)(T - r), so that pair(set, g) ~ c.
/// Throws IllConditioned when the condition estimate exceeds 1e12.
Signal solve_min_norm(MomentSystem& system, double ridge);

/// Empirical frame bounds, defect count, and the greedy column-removal check
/// of the finite-defect diagnostic.
struct RieszReport {
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  double condition = 0.0;
  int defect = 0;
  std::vector<double> spectrum;  // ascending
  std::vector<int> removed_columns;
  double post_removal_min_eigenvalue = 0.0;
  double post_removal_condition = 0.0;
  int post_removal_defect = 0;
};

RieszReport riesz_diagnostics(const std::vector<Signal>& family, double rel_tol = 1e-8);
RieszReport riesz_diagnostics(const MomentKernelSet& set, int n_modes = -1,
                              double rel_tol = 1e-8);

}  // namespace memctrl::moment
