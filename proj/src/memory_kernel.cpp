#include "memctrl/memory_kernel.hpp"

#include <algorithm>
#include <cmath>

#include "memctrl/csv.hpp"

namespace memctrl::kernels {

MemoryKernel MemoryKernel::zero() { return MemoryKernel{}; }

MemoryKernel MemoryKernel::constant(double k0) {
  MemoryKernel k;
  k.family_ = KernelFamily::constant;
  k.k0_ = k0;
  return k;
}

MemoryKernel MemoryKernel::exponential(double k0, double a) {
  if (std::abs(a) < 1e-14) return constant(k0);
  MemoryKernel k;
  k.family_ = KernelFamily::exponential;
  k.k0_ = k0;
  k.a_ = a;
  return k;
}

MemoryKernel MemoryKernel::tabulated(std::vector<double> t, std::vector<double> k) {
  if (t.size() != k.size() || t.size() < 2)
    throw InvalidArgument("MemoryKernel::tabulated: need >= 2 matching samples");
  if (std::abs(t.front()) > 1e-12)
    throw InvalidArgument("MemoryKernel::tabulated: table must start at t = 0");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1]))
      throw InvalidArgument("MemoryKernel::tabulated: abscissae must increase");
  for (double v : k)
    if (!std::isfinite(v)) throw InvalidArgument("MemoryKernel::tabulated: non-finite sample");
  MemoryKernel kern;
  kern.family_ = KernelFamily::tabulated;
  kern.tab_t_ = std::move(t);
  kern.tab_k_ = std::move(k);
  // Antiderivatives of the piecewise-linear interpolant at the table nodes.
  const auto& tt = kern.tab_t_;
  const auto& kk = kern.tab_k_;
  kern.tab_k1_.assign(tt.size(), 0.0);
  kern.tab_k2_.assign(tt.size(), 0.0);
  for (std::size_t i = 1; i < tt.size(); ++i) {
    const double h = tt[i] - tt[i - 1];
    kern.tab_k1_[i] = kern.tab_k1_[i - 1] + 0.5 * h * (kk[i - 1] + kk[i]);
    kern.tab_k2_[i] = kern.tab_k2_[i - 1] + 0.5 * h * (kern.tab_k1_[i - 1] + kern.tab_k1_[i]);
  }
  return kern;
}

MemoryKernel MemoryKernel::from_csv(const std::string& path) {
  auto table = csv::read_table(path, 2);
  return tabulated(std::move(table[0]), std::move(table[1]));
}

bool MemoryKernel::is_zero() const {
  switch (family_) {
    case KernelFamily::zero: return true;
    case KernelFamily::constant:
    case KernelFamily::exponential: return k0_ == 0.0;
    case KernelFamily::tabulated:
      return std::all_of(tab_k_.begin(), tab_k_.end(), [](double v) { return v == 0.0; });
  }
  return false;
}

std::string MemoryKernel::describe() const {
  switch (family_) {
    case KernelFamily::zero: return "zero";
    case KernelFamily::constant: return "constant(" + std::to_string(k0_) + ")";
    case KernelFamily::exponential:
      return "exponential(" + std::to_string(k0_) + ", " + std::to_string(a_) + ")";
    case KernelFamily::tabulated:
      return "tabulated(" + std::to_string(tab_t_.size()) + " samples)";
  }
  return "?";
}

namespace {

double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  if (x < xs.front() - 1e-12 || x > xs.back() + 1e-12)
    throw InvalidArgument("MemoryKernel: time outside tabulated range");
  x = std::clamp(x, xs.front(), xs.back());
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t i = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - xs.begin(), 1),
                                              xs.size() - 1);
  const double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return (1.0 - w) * ys[i - 1] + w * ys[i];
}

}  // namespace

double MemoryKernel::value(double t) const {
  switch (family_) {
    case KernelFamily::zero: return 0.0;
    case KernelFamily::constant: return k0_;
    case KernelFamily::exponential: return k0_ * std::exp(-a_ * t);
    case KernelFamily::tabulated: return interp(tab_t_, tab_k_, t);
  }
  return 0.0;
}

double MemoryKernel::first(double t) const {
  switch (family_) {
    case KernelFamily::zero: return 0.0;
    case KernelFamily::constant: return k0_ * t;
    case KernelFamily::exponential: return k0_ * (1.0 - std::exp(-a_ * t)) / a_;
    case KernelFamily::tabulated: return interp(tab_t_, tab_k1_, t);
  }
  return 0.0;
}

double MemoryKernel::second(double t) const {
  switch (family_) {
    case KernelFamily::zero: return 0.0;
    case KernelFamily::constant: return 0.5 * k0_ * t * t;
    case KernelFamily::exponential:
      return (k0_ / a_) * t - (k0_ / (a_ * a_)) * (1.0 - std::exp(-a_ * t));
    case KernelFamily::tabulated: return interp(tab_t_, tab_k2_, t);
  }
  return 0.0;
}

Signal MemoryKernel::sample(const TimeGrid& grid) const {
  Signal out(grid);
  for (int j = 0; j < grid.size(); ++j) out.values[j] = value(grid.node(j));
  return out;
}

Signal MemoryKernel::sample_first(const TimeGrid& grid) const {
  Signal out(grid);
  for (int j = 0; j < grid.size(); ++j) out.values[j] = first(grid.node(j));
  return out;
}

Signal MemoryKernel::sample_second(const TimeGrid& grid) const {
  Signal out(grid);
  for (int j = 0; j < grid.size(); ++j) out.values[j] = second(grid.node(j));
  return out;
}

double MemoryKernel::sup_on(const TimeGrid& grid) const {
  double m = 0.0;
  for (int j = 0; j < grid.size(); ++j) m = std::max(m, std::abs(value(grid.node(j))));
  return m;
}

}  // namespace memctrl::kernels
