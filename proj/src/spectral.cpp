#include "memctrl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "memctrl/errors.hpp"

namespace memctrl::spectral {

namespace {

constexpr double kPi = std::numbers::pi;

/// Square root of a real number with the determination fixed to
/// nonnegative imaginary part (real positive branch for positive input).
Complex sqrt_determination(double lambda_sq) {
  if (lambda_sq > 0.0) return {std::sqrt(lambda_sq), 0.0};
  return {0.0, std::sqrt(-lambda_sq)};
}

}  // namespace

double ModalBasis::max_abs_lambda() const {
  double m = 0.0;
  for (const auto& mode : modes) m = std::max(m, mode.abs_lambda());
  return m;
}

ModalBasis build_interval_basis(double b, int n_modes) {
  if (n_modes < 1) throw InvalidArgument("build_interval_basis: n_modes must be >= 1");
  ModalBasis basis;
  basis.b = b;
  basis.domain = DomainTag::interval;
  basis.modes.reserve(n_modes);
  for (int n = 1; n <= n_modes; ++n) {
    const double lambda_sq = n * kPi * n * kPi - b;
    if (std::abs(lambda_sq) < 1e-10) {
      throw DegenerateEigenvalue("build_interval_basis: lambda_" + std::to_string(n) +
                                 "^2 = n^2 pi^2 - b vanishes");
    }
    Mode mode;
    mode.index = n;
    mode.lambda_sq = lambda_sq;
    mode.lambda = sqrt_determination(lambda_sq);
    // gamma_1 phi_n at x = 0 with exterior normal -e_x: -phi_n'(0).
    mode.trace = -std::numbers::sqrt2 * n * kPi;
    mode.psi = mode.trace / mode.lambda;
    basis.modes.push_back(mode);
  }
  return basis;
}

ModalBasis build_synthetic_basis(int d, int n_modes, const std::vector<double>& psi_profile) {
  if (d < 1 || d > 3) throw InvalidArgument("build_synthetic_basis: d must be 1, 2 or 3");
  if (n_modes < 1) throw InvalidArgument("build_synthetic_basis: n_modes must be >= 1");
  if (static_cast<int>(psi_profile.size()) != n_modes)
    throw InvalidArgument("build_synthetic_basis: psi_profile must have n_modes entries");
  for (double p : psi_profile) {
    const double a = std::abs(p);
    if (a < 1e-3 || a > 1e3)
      throw InvalidArgument("build_synthetic_basis: |psi| outside [1e-3, 1e3]");
  }
  ModalBasis basis;
  basis.b = 0.0;
  basis.domain = DomainTag::synthetic;
  basis.synthetic_dimension = d;
  basis.modes.reserve(n_modes);
  for (int n = 1; n <= n_modes; ++n) {
    Mode mode;
    mode.index = n;
    mode.lambda_sq = std::pow(static_cast<double>(n), 2.0 / d);
    mode.lambda = sqrt_determination(mode.lambda_sq);
    mode.psi = psi_profile[n - 1];
    mode.trace = (mode.psi * mode.lambda).real();
    basis.modes.push_back(mode);
  }
  return basis;
}

std::vector<double> dirichlet_lift_coeffs(const ModalBasis& basis, double boundary_value) {
  if (basis.domain != DomainTag::interval)
    throw InvalidArgument("dirichlet_lift_coeffs: interval basis required");
  const double b = basis.b;
  // Resonance b = (m pi)^2 makes the two-point problem unsolvable.
  if (b > 0.0) {
    const double m = std::sqrt(b) / kPi;
    if (std::abs(m - std::round(m)) < 1e-9 && std::round(m) >= 1.0)
      throw NoSolution("dirichlet_lift_coeffs: resonant lift, b = (m pi)^2");
  }
  std::vector<double> coeffs;
  coeffs.reserve(basis.modes.size());
  for (const auto& mode : basis.modes) {
    const int n = mode.index;
    // <D g0, phi_n> = g0 sqrt(2) n pi / (n^2 pi^2 - b), from integrating
    // u'' + b u = 0 twice by parts against phi_n.
    coeffs.push_back(boundary_value * std::numbers::sqrt2 * n * kPi / mode.lambda_sq);
  }
  return coeffs;
}

WeightedTail weighted_tail(const CoeffState& state, const ModalBasis& basis, int k) {
  if (k < 0) throw InvalidArgument("weighted_tail: k must be >= 0");
  if (state.size() > basis.size())
    throw InvalidArgument("weighted_tail: state longer than basis");
  if (state.position.size() != state.velocity.size())
    throw InvalidArgument("weighted_tail: position/velocity length mismatch");
  WeightedTail tail;
  tail.entries.reserve(state.size());
  tail.partial_sums.reserve(state.size());
  double sum = 0.0;
  for (int i = 0; i < state.size(); ++i) {
    const double w = std::pow(basis.modes[i].abs_lambda(), k) * std::abs(state.position[i]);
    tail.entries.push_back(w);
    sum += w * w;
    tail.partial_sums.push_back(sum);
  }
  return tail;
}

std::string to_string(TailVerdict v) {
  switch (v) {
    case TailVerdict::summable: return "summable";
    case TailVerdict::divergent: return "divergent";
    default: return "inconclusive";
  }
}

double fit_decay_exponent(const std::vector<double>& partial_sums) {
  const int total = static_cast<int>(partial_sums.size());
  if (total < 8) throw InvalidArgument("fit_decay_exponent: need at least 8 entries");
  for (double s : partial_sums)
    if (!(s > 0.0)) throw InvalidArgument("fit_decay_exponent: entries must be positive");
  // Regress over the upper half of the index range, N = ceil(total/2) .. total.
  const int first = (total + 1) / 2;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (int n = first; n <= total; ++n) {
    const double x = std::log(static_cast<double>(n));
    const double y = std::log(partial_sums[n - 1]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  const double denom = count * sxx - sx * sx;
  return (count * sxy - sx * sy) / denom;
}

TailVerdict classify_slope(double slope) {
  if (slope <= 0.05) return TailVerdict::summable;
  if (slope >= 0.5) return TailVerdict::divergent;
  return TailVerdict::inconclusive;
}

}  // namespace memctrl::spectral
