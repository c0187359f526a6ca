#include "memctrl/convolution.hpp"

#include <cmath>
#include <utility>

namespace memctrl::kernels {

TimeGrid::TimeGrid(double T, int m) {
  if (!(T > 0.0)) throw InvalidArgument("TimeGrid: horizon must be positive");
  if (m < 16) throw InvalidArgument("TimeGrid: need at least 16 steps");
  horizon = T;
  steps = m;
  dt = T / m;
}

Signal::Signal(const TimeGrid& g, std::vector<Complex> v) : grid(g), values(std::move(v)) {
  if (static_cast<int>(values.size()) != g.size())
    throw InvalidArgument("Signal: value count does not match grid");
}

double Signal::sup_norm() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

double Signal::l2_norm() const {
  double acc = 0.0;
  for (int j = 0; j < size(); ++j) acc += trapezoid_weight(grid, j) * std::norm(values[j]);
  return std::sqrt(acc);
}

Signal Signal::reversed() const {
  Signal out(grid);
  for (int j = 0; j < size(); ++j) out.values[j] = values[size() - 1 - j];
  return out;
}

Signal Signal::real_part() const {
  Signal out(grid);
  for (int j = 0; j < size(); ++j) out.values[j] = values[j].real();
  return out;
}

void require_same_grid(const Signal& a, const Signal& b, const char* where) {
  if (!(a.grid == b.grid)) throw GridMismatch(std::string(where) + ": signals on different grids");
}

void require_grid(const Signal& s, const TimeGrid& grid, const char* where) {
  if (!(s.grid == grid)) throw GridMismatch(std::string(where) + ": signal on a different grid");
}

double trapezoid_weight(const TimeGrid& g, int j) {
  return (j == 0 || j == g.steps) ? 0.5 * g.dt : g.dt;
}

Complex integrate(const Signal& s) {
  Complex acc{};
  for (int j = 0; j < s.size(); ++j) acc += trapezoid_weight(s.grid, j) * s.values[j];
  return acc;
}

Complex inner_product(const Signal& a, const Signal& b) {
  require_same_grid(a, b, "inner_product");
  Complex acc{};
  for (int j = 0; j < a.size(); ++j)
    acc += trapezoid_weight(a.grid, j) * a.values[j] * std::conj(b.values[j]);
  return acc;
}

Signal cumulative_integral(const Signal& s) {
  Signal out(s.grid);
  const double h = s.grid.dt;
  Complex acc{};
  for (int j = 1; j < s.size(); ++j) {
    acc += 0.5 * h * (s.values[j - 1] + s.values[j]);
    out.values[j] = acc;
  }
  return out;
}

Signal operator+(const Signal& a, const Signal& b) {
  require_same_grid(a, b, "operator+");
  Signal out = a;
  for (int j = 0; j < out.size(); ++j) out.values[j] += b.values[j];
  return out;
}

Signal operator-(const Signal& a, const Signal& b) {
  require_same_grid(a, b, "operator-");
  Signal out = a;
  for (int j = 0; j < out.size(); ++j) out.values[j] -= b.values[j];
  return out;
}

Signal operator*(Complex c, const Signal& s) {
  Signal out = s;
  for (auto& v : out.values) v *= c;
  return out;
}

Signal convolve(const Signal& a, const Signal& b) {
  require_same_grid(a, b, "convolve");
  const int m = a.grid.steps;
  const double h = a.grid.dt;
  Signal out(a.grid);
  const Complex* av = a.values.data();
  const Complex* bv = b.values.data();
  Complex* ov = out.values.data();
#pragma omp parallel for schedule(static)
  for (int j = 1; j <= m; ++j) {
    Complex acc = 0.5 * (av[0] * bv[j] + av[j] * bv[0]);
    for (int i = 1; i < j; ++i) acc += av[i] * bv[j - i];
    ov[j] = h * acc;
  }
  return out;
}

Signal conv_power(const Signal& a, int r) {
  if (r < 1) throw InvalidArgument("conv_power: r must be >= 1");
  Signal out = a;
  for (int k = 1; k < r; ++k) out = convolve(a, out);
  return out;
}

TrigSignals trig_signals(Complex lambda, const TimeGrid& grid) {
  TrigSignals out{Signal(grid), Signal(grid), Signal(grid)};
  const Complex i{0.0, 1.0};
  for (int j = 0; j < grid.size(); ++j) {
    const Complex lt = lambda * grid.node(j);
    out.s.values[j] = std::sin(lt);
    out.c.values[j] = std::cos(lt);
    out.e.values[j] = std::exp(i * lt);
  }
  return out;
}

TrigSignals trig_signals(const spectral::Mode& mode, const TimeGrid& grid) {
  return trig_signals(mode.lambda, grid);
}

}  // namespace memctrl::kernels
