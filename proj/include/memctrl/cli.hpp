#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "memctrl/memory_kernel.hpp"
#include "memctrl/synthesis.hpp"

namespace memctrl::cli {

inline constexpr const char* kVersion = "1.0.0";

enum class Experiment { steer, regularity, riesz, zeta_convergence };

Experiment experiment_from_string(const std::string& name);
std::string to_string(Experiment e);

struct TargetConfig {
  std::string generator = "inverse_square";  // inverse_square | zero | random_l2 | explicit
  double scale = 1.0;
  double decay = 2.0;                 // random_l2 only
  std::vector<double> xi, eta;        // explicit only
};

struct GeneratorConfig {
  std::string type = "exp_aligned";  // exp_aligned | projected_sine | explicit
  double cycles = 1.5;               // sine frequency: sin(2 pi cycles t / T)
  std::vector<double> samples;       // explicit only
};

struct ExperimentConfig {
  Experiment experiment = Experiment::steer;
  double b = 0.0;
  kernels::MemoryKernel kernel = kernels::MemoryKernel::zero();
  double T = 2.5;
  int n_modes = 12;
  int grid_m = -1;  // -1 = "auto"
  synthesis::ControlClass control_class = synthesis::ControlClass::L2;
  TargetConfig target;
  GeneratorConfig g1;
  double g0 = 1.0;
  double ridge = 1e-10;
  std::uint64_t seed = 0;
  std::string output_dir = "out";
};

/// Strict parse: unknown fields (except keys starting with '_') are rejected
/// with the offending field named.  Throws ConfigError.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

/// Commented template for one experiment ("_doc" keys carry the comments).
std::string default_config(const std::string& experiment);

/// m = max(512, next power of two above 4 T |lambda_max|).
int auto_grid_steps(double T, double max_abs_lambda);

/// Executes the experiment: writes <output_dir>/results.json plus CSV
/// artifacts, prints a one-screen summary to `log`.
/// Exit codes: 0 success, 2 verdict failure, 1 usage/config error.
int run(const ExperimentConfig& config, std::ostream& log);

/// load_config + run with error-to-exit-code mapping (1 on config errors).
int run_config_file(const std::string& path, std::ostream& log);

}  // namespace memctrl::cli
