#pragma once

#include <string>
#include <vector>

#include "memctrl/time_grid.hpp"

namespace memctrl::kernels {

enum class KernelFamily { zero, constant, exponential, tabulated };

/// The scalar memory kernel K(t) with its antiderivatives
/// K1(t) = int_0^t K and K2(t) = int_0^t K1.  Analytic families evaluate in
/// closed form; tabulated kernels interpolate linearly and integrate
/// numerically.
class MemoryKernel {
 public:
  /// K = 0.
  static MemoryKernel zero();
  /// K(t) = k0.
  static MemoryKernel constant(double k0);
  /// K(t) = k0 exp(-a t).
  static MemoryKernel exponential(double k0, double a);
  /// Samples (t_i, K(t_i)); t strictly increasing, must cover the grids the
  /// kernel is later sampled on.
  static MemoryKernel tabulated(std::vector<double> t, std::vector<double> k);
  /// Two-column CSV t,K(t) with a header row.
  static MemoryKernel from_csv(const std::string& path);

  KernelFamily family() const { return family_; }
  bool is_zero() const;
  std::string describe() const;

  double value(double t) const;   // K(t)
  double first(double t) const;   // K1(t)
  double second(double t) const;  // K2(t)

  Signal sample(const TimeGrid& grid) const;
  Signal sample_first(const TimeGrid& grid) const;
  Signal sample_second(const TimeGrid& grid) const;

  /// sup |K| over [0, T].
  double sup_on(const TimeGrid& grid) const;

 private:
  MemoryKernel() = default;

  KernelFamily family_ = KernelFamily::zero;
  double k0_ = 0.0;
  double a_ = 0.0;
  std::vector<double> tab_t_, tab_k_, tab_k1_, tab_k2_;
};

}  // namespace memctrl::kernels
