#pragma once

#include <complex>
#include <vector>

#include "memctrl/errors.hpp"

namespace memctrl::kernels {

using Complex = std::complex<double>;

/// Uniform grid t_j = j h on [0, T] with h = T / m.  Every Signal inside one
/// experiment shares a single grid; mixing grids raises GridMismatch.
struct TimeGrid {
  double horizon = 0.0;  // T
  int steps = 0;         // m
  double dt = 0.0;       // h

  TimeGrid() = default;
  TimeGrid(double T, int m);

  int size() const { return steps + 1; }
  double node(int j) const { return dt * j; }
  bool operator==(const TimeGrid& other) const {
    return steps == other.steps && horizon == other.horizon;
  }
};

/// Complex-valued samples on a TimeGrid.
struct Signal {
  TimeGrid grid;
  std::vector<Complex> values;

  Signal() = default;
  explicit Signal(const TimeGrid& g) : grid(g), values(g.size(), Complex{}) {}
  Signal(const TimeGrid& g, std::vector<Complex> v);

  int size() const { return static_cast<int>(values.size()); }
  Complex& operator[](int j) { return values[j]; }
  const Complex& operator[](int j) const { return values[j]; }

  double sup_norm() const;
  /// L2(0,T) norm under trapezoid weights.
  double l2_norm() const;
  Signal reversed() const;  // s(T - t), exact index flip on the uniform grid
  Signal real_part() const;
};

void require_same_grid(const Signal& a, const Signal& b, const char* where);
void require_grid(const Signal& s, const TimeGrid& grid, const char* where);

/// Trapezoid quadrature weight of node j (h at interior nodes, h/2 at ends).
double trapezoid_weight(const TimeGrid& g, int j);

/// Trapezoid approximation of the integral over [0, T].
Complex integrate(const Signal& s);

/// Trapezoid inner product <a, b> = int a conj(b).
Complex inner_product(const Signal& a, const Signal& b);

/// Cumulative trapezoid integral: out(t_j) ~ int_0^{t_j} s.
Signal cumulative_integral(const Signal& s);

Signal operator+(const Signal& a, const Signal& b);
Signal operator-(const Signal& a, const Signal& b);
Signal operator*(Complex c, const Signal& s);

}  // namespace memctrl::kernels
