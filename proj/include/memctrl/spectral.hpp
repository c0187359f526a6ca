#pragma once

#include <complex>
#include <string>
#include <vector>

namespace memctrl::spectral {

using Complex = std::complex<double>;

/// One eigenmode of A = Delta + b on (0,1) with Dirichlet conditions,
/// or of a synthetic spectrum.  -lambda_sq is the eigenvalue of A; lambda
/// is the square root with nonnegative imaginary part (real positive when
/// lambda_sq > 0).  trace is the exterior normal derivative of the
/// eigenfunction at the control point x = 0 and psi = trace / lambda.
struct Mode {
  int index = 0;
  double lambda_sq = 0.0;
  Complex lambda{};
  Complex psi{};
  double trace = 0.0;

  double abs_lambda() const { return std::abs(lambda); }
};

enum class DomainTag { interval, synthetic };

struct ModalBasis {
  double b = 0.0;
  std::vector<Mode> modes;
  DomainTag domain = DomainTag::interval;
  int synthetic_dimension = 0;  // d, only for DomainTag::synthetic

  int size() const { return static_cast<int>(modes.size()); }
  double max_abs_lambda() const;
};

/// Coefficient vector of (w(t), w'(t)) at a fixed time.
struct CoeffState {
  std::vector<Complex> position;  // w_n
  std::vector<Complex> velocity;  // w_n'

  int size() const { return static_cast<int>(position.size()); }
};

/// Exact Dirichlet eigenstructure on (0,1): lambda_n^2 = (n pi)^2 - b,
/// eigenfunctions sqrt(2) sin(n pi x), traces evaluated at x = 0.
/// Throws DegenerateEigenvalue if some lambda_n^2 vanishes.
ModalBasis build_interval_basis(double b, int n_modes);

/// Synthetic spectrum lambda_n^2 = n^(2/d) for stress-testing growth-rate
/// dependent logic; psi_profile supplies the trace factors.
ModalBasis build_synthetic_basis(int d, int n_modes, const std::vector<double>& psi_profile);

/// Coefficients <D g0, phi_n> of the lift of the constant boundary datum g0
/// at x = 0: the solution of u'' + b u = 0, u(0) = g0, u(1) = 0, projected
/// onto the eigenfunctions.  Closed form g0 * sqrt(2) n pi / (n^2 pi^2 - b).
std::vector<double> dirichlet_lift_coeffs(const ModalBasis& basis, double boundary_value);

/// |lambda_n|^k |w_n| together with the partial sums
/// S(N) = sum_{n<=N} |lambda_n|^(2k) |w_n|^2 used as a dom A^k diagnostic.
struct WeightedTail {
  std::vector<double> entries;
  std::vector<double> partial_sums;
};

WeightedTail weighted_tail(const CoeffState& state, const ModalBasis& basis, int k);

enum class TailVerdict { summable, divergent, inconclusive };

std::string to_string(TailVerdict v);

/// Least-squares slope of log S(N) versus log N over the upper half of the
/// index range.  Requires >= 8 positive entries.
double fit_decay_exponent(const std::vector<double>& partial_sums);

/// slope <= 0.05 -> summable, slope >= 0.5 -> divergent, else inconclusive.
TailVerdict classify_slope(double slope);

}  // namespace memctrl::spectral
