#include "memctrl/moment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "memctrl/convolution.hpp"

namespace memctrl::moment {

namespace {

Signal unit_signal(const TimeGrid& grid) {
  Signal s(grid);
  for (auto& v : s.values) v = 1.0;
  return s;
}

Signal ramp_signal(const TimeGrid& grid) {
  Signal s(grid);
  for (int j = 0; j < s.size(); ++j) s.values[j] = grid.node(j);
  return s;
}

}  // namespace

Signal project_N1(const Signal& s) {
  const Signal one = unit_signal(s.grid);
  const Complex mass = kernels::inner_product(one, one);  // discrete measure of [0,T]
  const Complex mean = kernels::inner_product(s, one) / mass;
  Signal out = s;
  for (auto& v : out.values) v -= mean;
  return out;
}

Signal project_N2(const Signal& s, ProjectionCoeffs* coeffs) {
  const Signal one = unit_signal(s.grid);
  const Signal ramp = ramp_signal(s.grid);
  // 2x2 normal equations in span{1, t} under the trapezoid inner product;
  // Cramer form keeps P2(1) and P2(t) exactly zero.
  const double g00 = kernels::inner_product(one, one).real();
  const double g01 = kernels::inner_product(ramp, one).real();
  const double g11 = kernels::inner_product(ramp, ramp).real();
  const Complex r0 = kernels::inner_product(s, one);
  const Complex r1 = kernels::inner_product(s, ramp);
  const double det = g00 * g11 - g01 * g01;
  const Complex intercept = (r0 * g11 - r1 * g01) / det;
  const Complex slope = (g00 * r1 - g01 * r0) / det;
  if (coeffs) *coeffs = ProjectionCoeffs{slope, intercept};
  Signal out = s;
  for (int j = 0; j < out.size(); ++j)
    out.values[j] -= slope * out.grid.node(j) + intercept;
  return out;
}

const Signal& MomentKernelSet::pairing_kernel(int i) const {
  return order == 0 ? raw[i] : projected[i];
}

MomentKernelSet build_kernel_set(int order, const spectral::ModalBasis& basis,
                                 const std::vector<volterra::ZetaTable>& zetas,
                                 const MemoryKernel& kernel) {
  if (order < 0 || order > 2) throw InvalidArgument("build_kernel_set: order must be 0, 1 or 2");
  if (static_cast<int>(zetas.size()) < basis.size())
    throw MissingMode("build_kernel_set: zeta tables do not cover the basis");
  for (int i = 0; i < basis.size(); ++i) {
    if (zetas[i].mode.index != basis.modes[i].index)
      throw MissingMode("build_kernel_set: zeta table order does not match basis");
    if (!(zetas[i].grid == zetas[0].grid))
      throw GridMismatch("build_kernel_set: zeta tables on different grids");
  }
  const TimeGrid grid = zetas[0].grid;
  MomentKernelSet set;
  set.order = order;
  set.grid = grid;
  set.modes = basis.modes;
  set.raw.assign(basis.size(), Signal{});
  if (order > 0) set.projected.assign(basis.size(), Signal{});

  const Signal k1 = kernel.sample_first(grid);
  const Signal k2 = order == 2 ? kernel.sample_second(grid) : Signal{};
  const Complex i_unit{0.0, 1.0};

#pragma omp parallel for schedule(dynamic)
  for (int n = 0; n < basis.size(); ++n) {
    const auto& mode = basis.modes[n];
    const auto& zt = zetas[n];
    Signal e(grid);
    if (order == 0) {
      for (int j = 0; j < grid.size(); ++j) e.values[j] = mode.psi * zt.z.values[j];
    } else if (order == 1) {
      const Signal k1z = kernels::convolve(k1, zt.zeta);
      for (int j = 0; j < grid.size(); ++j)
        e.values[j] = mode.psi * (zt.dzeta.values[j] - k1z.values[j] +
                                  i_unit * mode.lambda * zt.zeta.values[j]);
    } else {
      const Signal k1z = kernels::convolve(k1, zt.zeta);
      const Signal k2z = kernels::convolve(k2, zt.zeta);
      // Imaginary bracket carries zeta - K2*zeta: the combination that pairs
      // to lambda w' + i lambda^2 w (integration by parts of the H20
      // representation against the zeta equation).
      for (int j = 0; j < grid.size(); ++j)
        e.values[j] = mode.psi * (zt.dzeta.values[j] - k1z.values[j] +
                                  i_unit * mode.lambda *
                                      (zt.zeta.values[j] - k2z.values[j]));
    }
    if (order == 1) set.projected[n] = project_N1(e);
    if (order == 2) set.projected[n] = project_N2(e);
    set.raw[n] = std::move(e);
  }
  return set;
}

std::vector<Complex> pair(const MomentKernelSet& set, const Signal& g) {
  require_same_grid(set.raw.at(0), g, "pair");
  const Signal gr = g.reversed();
  std::vector<Complex> moments(set.size());
#pragma omp parallel for schedule(static)
  for (int n = 0; n < set.size(); ++n) {
    const Signal& kappa = set.pairing_kernel(n);
    Complex acc{};
    for (int j = 0; j < gr.size(); ++j)
      acc += kernels::trapezoid_weight(set.grid, j) * kappa.values[j] * gr.values[j];
    moments[n] = acc;
  }
  return moments;
}

RealifiedFamily realified_family(const MomentKernelSet& set, int n_modes) {
  const int count = n_modes < 0 ? set.size() : std::min(n_modes, set.size());
  RealifiedFamily family;
  for (int n = 0; n < count; ++n) {
    const Signal& kappa = set.pairing_kernel(n);
    if (set.modes[n].lambda_sq > 0.0) {
      Signal conj_kappa(kappa.grid);
      for (int j = 0; j < kappa.size(); ++j) conj_kappa.values[j] = std::conj(kappa.values[j]);
      family.columns.push_back(std::move(conj_kappa));
      family.column_mode.push_back(n);
      family.column_conjugated.push_back(true);
    }
    family.columns.push_back(kappa);
    family.column_mode.push_back(n);
    family.column_conjugated.push_back(false);
  }
  return family;
}

Eigen::MatrixXcd assemble_gram(const RealifiedFamily& family) {
  const int k = static_cast<int>(family.columns.size());
  Eigen::MatrixXcd gram(k, k);
#pragma omp parallel for schedule(dynamic)
  for (int v = 0; v < k; ++v) {
    for (int u = v; u < k; ++u) {
      const Complex entry = kernels::inner_product(family.columns[u], family.columns[v]);
      gram(v, u) = entry;
      gram(u, v) = std::conj(entry);
    }
  }
  return gram;
}

Eigen::MatrixXcd assemble_gram(const MomentKernelSet& set) {
  return assemble_gram(realified_family(set));
}

int order_of(SmoothnessClass cls) {
  switch (cls) {
    case SmoothnessClass::L2xHm1: return 0;
    case SmoothnessClass::H10xL2: return 1;
    case SmoothnessClass::H2xH10: return 2;
  }
  return 0;
}

std::string to_string(SmoothnessClass cls) {
  switch (cls) {
    case SmoothnessClass::L2xHm1: return "L2xHm1";
    case SmoothnessClass::H10xL2: return "H10xL2";
    case SmoothnessClass::H2xH10: return "H2xH10";
  }
  return "?";
}

const MomentConvention& ConventionTable::for_class(SmoothnessClass cls) const {
  switch (cls) {
    case SmoothnessClass::L2xHm1: return order0;
    case SmoothnessClass::H10xL2: return order1;
    case SmoothnessClass::H2xH10: return order2;
  }
  return order0;
}

std::vector<Complex> target_to_moments(const TargetSpec& target, const ConventionTable& table) {
  if (target.xi.size() != target.eta.size())
    throw InvalidArgument("target_to_moments: xi and eta must have equal length");
  const MomentConvention& conv = table.for_class(target.cls);
  std::vector<Complex> c(target.xi.size());
  for (std::size_t n = 0; n < c.size(); ++n)
    c[n] = conv.xi_factor * target.xi[n] + conv.eta_factor * target.eta[n];
  return c;
}

MomentSystem make_system(MomentKernelSet set, std::vector<Complex> c) {
  if (static_cast<int>(c.size()) != set.size())
    throw InvalidArgument("make_system: moment target length does not match kernel count");
  MomentSystem system;
  system.family = realified_family(set);
  system.gram = assemble_gram(system.family);
  system.kernels = std::move(set);
  system.c = std::move(c);
  return system;
}

Signal solve_min_norm(MomentSystem& system, double ridge) {
  if (ridge < 0.0) throw InvalidArgument("solve_min_norm: ridge must be >= 0");
  const int k = static_cast<int>(system.family.columns.size());
  Eigen::MatrixXcd regularized = system.gram;
  for (int c = 0; c < k; ++c) regularized(c, c) += ridge;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(regularized);
  const auto& eigenvalues = eig.eigenvalues();
  const double max_eig = eigenvalues.maxCoeff();
  const double min_eig = eigenvalues.minCoeff();
  system.ridge = ridge;
  system.gram_spectrum.assign(eigenvalues.data(), eigenvalues.data() + k);
  system.condition = min_eig > 0.0 ? max_eig / min_eig
                                   : std::numeric_limits<double>::infinity();
  if (!(system.condition <= 1e12))
    throw IllConditioned("solve_min_norm: Gram condition " + std::to_string(system.condition) +
                         " > 1e12; raise ridge or lower the mode count");

  Eigen::VectorXcd rhs(k);
  for (int col = 0; col < k; ++col) {
    const Complex cn = system.c[system.family.column_mode[col]];
    // Constraint <G, kappa_col> where G(r) = g(T-r): the conjugated copy
    // carries c_n, the plain copy its conjugate.
    rhs(col) = system.family.column_conjugated[col] ? cn : std::conj(cn);
  }
  system.beta = eig.eigenvectors() *
                (eig.eigenvectors().adjoint() * rhs).cwiseQuotient(
                    eigenvalues.cast<Complex>());

  Signal profile(system.kernels.grid);  // G(r) = sum beta_k kappa_k(r)
  for (int col = 0; col < k; ++col) {
    const Complex b = system.beta(col);
    const Signal& kappa = system.family.columns[col];
    for (int j = 0; j < profile.size(); ++j) profile.values[j] += b * kappa.values[j];
  }
  Signal g = profile.reversed();
  // Conjugate symmetry of the constraints makes g real; drop the rounding dust.
  double imag_max = 0.0;
  for (auto& v : g.values) {
    imag_max = std::max(imag_max, std::abs(v.imag()));
    v = Complex{v.real(), 0.0};
  }
  if (imag_max > 1e-8 * (1.0 + g.sup_norm()))
    throw IllConditioned("solve_min_norm: generator has non-negligible imaginary part");

  const auto achieved = pair(system.kernels, g);
  double res = 0.0;
  for (int n = 0; n < system.kernels.size(); ++n) res += std::norm(achieved[n] - system.c[n]);
  system.residual = std::sqrt(res);
  return g;
}

namespace {

RieszReport diagnostics_impl(std::vector<Signal> family, double rel_tol) {
  RieszReport report;
  Eigen::MatrixXcd gram;
  {
    RealifiedFamily wrapper;
    wrapper.columns = family;
    wrapper.column_mode.assign(family.size(), 0);
    wrapper.column_conjugated.assign(family.size(), false);
    gram = assemble_gram(wrapper);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
  report.spectrum.assign(eig.eigenvalues().data(),
                         eig.eigenvalues().data() + eig.eigenvalues().size());
  report.min_eigenvalue = report.spectrum.front();
  report.max_eigenvalue = report.spectrum.back();
  report.condition = report.min_eigenvalue > 0.0
                         ? report.max_eigenvalue / report.min_eigenvalue
                         : std::numeric_limits<double>::infinity();
  const double threshold = rel_tol * report.max_eigenvalue;
  report.defect = static_cast<int>(
      std::count_if(report.spectrum.begin(), report.spectrum.end(),
                    [&](double v) { return v < threshold; }));

  // Greedy shadow of the finite-defect argument: repeatedly drop the column
  // with the largest weight in the current near-null eigenvector.
  std::vector<int> alive(family.size());
  std::iota(alive.begin(), alive.end(), 0);
  Eigen::MatrixXcd g = gram;
  for (int pass = 0; pass < report.defect && g.rows() > 1; ++pass) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> e(g);
    if (e.eigenvalues()(0) >= rel_tol * e.eigenvalues()(g.rows() - 1)) break;
    const Eigen::VectorXcd null_vec = e.eigenvectors().col(0);
    int worst = 0;
    for (int i = 1; i < null_vec.size(); ++i)
      if (std::abs(null_vec(i)) > std::abs(null_vec(worst))) worst = i;
    report.removed_columns.push_back(alive[worst]);
    alive.erase(alive.begin() + worst);
    Eigen::MatrixXcd shrunk(g.rows() - 1, g.cols() - 1);
    for (int r = 0, rr = 0; r < g.rows(); ++r) {
      if (r == worst) continue;
      for (int c = 0, cc = 0; c < g.cols(); ++c) {
        if (c == worst) continue;
        shrunk(rr, cc) = g(r, c);
        ++cc;
      }
      ++rr;
    }
    g = std::move(shrunk);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> post(g);
  report.post_removal_min_eigenvalue = post.eigenvalues()(0);
  const double post_max = post.eigenvalues()(g.rows() - 1);
  report.post_removal_condition = report.post_removal_min_eigenvalue > 0.0
                                      ? post_max / report.post_removal_min_eigenvalue
                                      : std::numeric_limits<double>::infinity();
  report.post_removal_defect = static_cast<int>(std::count_if(
      post.eigenvalues().data(), post.eigenvalues().data() + g.rows(),
      [&](double v) { return v < rel_tol * post_max; }));
  return report;
}

}  // namespace

RieszReport riesz_diagnostics(const std::vector<Signal>& family, double rel_tol) {
  if (family.size() < 2) throw InvalidArgument("riesz_diagnostics: need at least 2 columns");
  return diagnostics_impl(family, rel_tol);
}

RieszReport riesz_diagnostics(const MomentKernelSet& set, int n_modes, double rel_tol) {
  const int count = n_modes < 0 ? set.size() : n_modes;
  if (count < 4) throw InvalidArgument("riesz_diagnostics: need at least 4 modes");
  return diagnostics_impl(realified_family(set, count).columns, rel_tol);
}

}  // namespace memctrl::moment
