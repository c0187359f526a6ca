#include "memctrl/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>

#include <json.hpp>

#include "memctrl/convolution.hpp"
#include "memctrl/csv.hpp"
#include "memctrl/errors.hpp"
#include "memctrl/volterra.hpp"

namespace memctrl::cli {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;
using kernels::MemoryKernel;
using kernels::Signal;
using kernels::TimeGrid;

Experiment experiment_from_string(const std::string& name) {
  if (name == "steer") return Experiment::steer;
  if (name == "regularity") return Experiment::regularity;
  if (name == "riesz") return Experiment::riesz;
  if (name == "zeta-convergence") return Experiment::zeta_convergence;
  throw ConfigError("field 'experiment': unknown experiment '" + name + "'");
}

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::steer: return "steer";
    case Experiment::regularity: return "regularity";
    case Experiment::riesz: return "riesz";
    case Experiment::zeta_convergence: return "zeta-convergence";
  }
  return "?";
}

int auto_grid_steps(double T, double max_abs_lambda) {
  const double needed = 4.0 * T * max_abs_lambda;
  int m = 512;
  while (m < needed && m < (1 << 24)) m *= 2;
  return m;
}

namespace {

constexpr double kPi = std::numbers::pi;

void check_known_keys(const json& obj, const std::string& where,
                      std::initializer_list<const char*> known) {
  for (const auto& item : obj.items()) {
    const std::string& key = item.key();
    if (!key.empty() && key[0] == '_') continue;  // doc keys
    bool ok = false;
    for (const char* k : known)
      if (key == k) ok = true;
    if (!ok) throw ConfigError("unknown field '" + where + key + "'");
  }
}

double require_positive(const json& obj, const std::string& field, double fallback,
                        bool required = false) {
  if (!obj.contains(field)) {
    if (required) throw ConfigError("missing field '" + field + "'");
    return fallback;
  }
  if (!obj[field].is_number()) throw ConfigError("field '" + field + "' must be a number");
  const double v = obj[field].get<double>();
  if (!(v > 0.0)) throw ConfigError("field '" + field + "' must be positive");
  return v;
}

MemoryKernel parse_kernel(const json& spec) {
  if (!spec.is_object()) throw ConfigError("field 'kernel' must be an object");
  check_known_keys(spec, "kernel.", {"family", "k0", "a", "csv"});
  const std::string family = spec.value("family", "zero");
  if (family == "zero") return MemoryKernel::zero();
  if (family == "constant") return MemoryKernel::constant(spec.value("k0", 1.0));
  if (family == "exponential")
    return MemoryKernel::exponential(spec.value("k0", 1.0), spec.value("a", 1.0));
  if (family == "tabulated") {
    if (!spec.contains("csv"))
      throw ConfigError("field 'kernel.csv' required for the tabulated family");
    return MemoryKernel::from_csv(spec["csv"].get<std::string>());
  }
  throw ConfigError("field 'kernel.family': unknown family '" + family + "'");
}

synthesis::ControlClass parse_class(const std::string& name) {
  if (name == "L2") return synthesis::ControlClass::L2;
  if (name == "H10") return synthesis::ControlClass::H10;
  if (name == "H20") return synthesis::ControlClass::H20;
  if (name == "H30") return synthesis::ControlClass::H30;
  throw ConfigError("field 'control_class': unknown class '" + name + "'");
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&tt));
  return buf;
}

json kernel_to_json(const MemoryKernel& k) { return k.describe(); }

/// Target coefficient sequences from the configured generator.
moment::TargetSpec make_target(const ExperimentConfig& config,
                               const spectral::ModalBasis& basis) {
  moment::TargetSpec target;
  target.cls = synthesis::target_class_for(config.control_class);
  const int n = basis.size();
  target.xi.assign(n, 0.0);
  target.eta.assign(n, 0.0);
  const auto& tc = config.target;
  if (tc.generator == "zero") {
    // all zeros
  } else if (tc.generator == "inverse_square") {
    for (int i = 0; i < n; ++i) target.xi[i] = tc.scale / ((i + 1.0) * (i + 1.0));
  } else if (tc.generator == "random_l2") {
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < n; ++i) target.xi[i] = tc.scale * u(rng) / std::pow(i + 1.0, tc.decay);
    for (int i = 0; i < n; ++i) target.eta[i] = tc.scale * u(rng) / std::pow(i + 1.0, tc.decay);
  } else if (tc.generator == "explicit") {
    if (static_cast<int>(tc.xi.size()) != n || static_cast<int>(tc.eta.size()) != n)
      throw ConfigError("field 'target.xi'/'target.eta' must have n_modes entries");
    target.xi = tc.xi;
    target.eta = tc.eta;
  } else {
    throw ConfigError("field 'target.generator': unknown generator '" + tc.generator + "'");
  }
  return target;
}

Signal make_generator_seed(const ExperimentConfig& config, const TimeGrid& grid) {
  if (config.g1.type == "exp_aligned") {
    // Seed along the obstruction representer (the constraints annihilate
    // quadratics, so only the non-polynomial residue of e^t contributes).
    Signal s(grid);
    for (int j = 0; j < s.size(); ++j)
      s.values[j] = std::exp(grid.node(j) - grid.horizon);
    Signal g = synthesis::project_h3_constraints(s);
    const double nrm = g.l2_norm();
    for (auto& v : g.values) v /= nrm;
    return g;
  }
  if (config.g1.type == "projected_sine") {
    Signal s(grid);
    for (int j = 0; j < s.size(); ++j)
      s.values[j] = std::sin(2.0 * kPi * config.g1.cycles * grid.node(j) / grid.horizon);
    return synthesis::project_h3_constraints(s);
  }
  if (config.g1.type == "explicit") {
    if (static_cast<int>(config.g1.samples.size()) != grid.size())
      throw ConfigError("field 'g1.samples' must have m+1 entries");
    Signal s(grid);
    for (int j = 0; j < s.size(); ++j) s.values[j] = config.g1.samples[j];
    return s;
  }
  throw ConfigError("field 'g1.type': unknown generator type '" + config.g1.type + "'");
}

void write_control_csv(const synthesis::ControlSignal& control, const fs::path& path) {
  csv::Writer out(path.string(), {"t", "g", "f"});
  for (int j = 0; j < control.g.size(); ++j)
    out.row({control.g.grid.node(j), control.g.values[j].real(), control.f.values[j].real()});
}

void write_spectrum_csv(const std::vector<double>& spectrum, const fs::path& path) {
  csv::Writer out(path.string(), {"index", "eigenvalue"});
  for (std::size_t i = 0; i < spectrum.size(); ++i)
    out.row({static_cast<double>(i), spectrum[i]});
}

void write_state_csv(const spectral::ModalBasis& basis, const spectral::CoeffState& achieved,
                     const spectral::CoeffState& target, const fs::path& path) {
  csv::Writer out(path.string(), {"n", "lambda_sq", "re_w", "im_w", "re_v", "im_v",
                                  "re_w_target", "im_w_target", "re_v_target", "im_v_target"});
  for (int n = 0; n < achieved.size(); ++n)
    out.row({static_cast<double>(basis.modes[n].index), basis.modes[n].lambda_sq,
             achieved.position[n].real(), achieved.position[n].imag(),
             achieved.velocity[n].real(), achieved.velocity[n].imag(),
             target.position[n].real(), target.position[n].imag(),
             target.velocity[n].real(), target.velocity[n].imag()});
}

void write_tails_csv(const synthesis::RegularityRun& run, const fs::path& path) {
  csv::Writer out(path.string(), {"N", "S1", "S2", "S3", "S4"});
  for (std::size_t i = 0; i < run.partial_sums[0].size(); ++i)
    out.row({static_cast<double>(i + 1), run.partial_sums[0][i], run.partial_sums[1][i],
             run.partial_sums[2][i], run.partial_sums[3][i]});
}

json regularity_run_to_json(const synthesis::RegularityRun& run) {
  json j;
  j["kernel"] = run.kernel_description;
  for (int k = 1; k <= 4; ++k) {
    json entry;
    entry["slope"] = run.slopes[k - 1];
    entry["verdict"] = spectral::to_string(run.verdicts[k - 1]);
    j["k" + std::to_string(k)] = entry;
  }
  return j;
}

json common_header(const ExperimentConfig& config, const TimeGrid& grid) {
  json j;
  j["program"] = "memctrl";
  j["version"] = kVersion;
  j["experiment"] = to_string(config.experiment);
  j["timestamp"] = iso_timestamp();
  json params;
  params["b"] = config.b;
  params["kernel"] = kernel_to_json(config.kernel);
  params["T"] = config.T;
  params["n_modes"] = config.n_modes;
  params["m"] = grid.steps;
  params["ridge"] = config.ridge;
  params["seed"] = config.seed;
  j["parameters"] = params;
  json tol;
  tol["reach_threshold"] = synthesis::kReachThreshold;
  tol["slope_summable"] = 0.05;
  tol["slope_divergent"] = 0.5;
  tol["gram_defect_rel"] = 1e-8;
  j["tolerances"] = tol;
  return j;
}

void write_results(const json& results, const fs::path& dir) {
  std::ofstream out(dir / "results.json");
  out << results.dump(2) << '\n';
}

int run_steer(const ExperimentConfig& config, std::ostream& log) {
  const auto basis = spectral::build_interval_basis(config.b, config.n_modes);
  const int m = config.grid_m > 0 ? config.grid_m
                                  : auto_grid_steps(config.T, basis.max_abs_lambda());
  const TimeGrid grid(config.T, m);
  const auto target = make_target(config, basis);
  json results = common_header(config, grid);
  results["parameters"]["control_class"] = synthesis::to_string(config.control_class);
  results["parameters"]["target_generator"] = config.target.generator;
  const fs::path dir(config.output_dir);
  fs::create_directories(dir);
  try {
    const auto steer = synthesis::steer(target, basis, config.kernel, grid,
                                        config.control_class, config.ridge);
    const auto tail = spectral::weighted_tail(
        steer.report.achieved, basis, moment::order_of(target.cls));
    json r;
    r["reach_error"] = steer.report.relative_error;
    r["moment_residual"] = steer.moment_residual;
    r["gram_condition"] = steer.gram_condition;
    std::string slope_note = "n/a (needs >= 8 modes)";
    if (config.n_modes >= 8) {
      const double slope = spectral::fit_decay_exponent(tail.partial_sums);
      r["achieved_tail_slope"] = slope;
      r["achieved_tail_verdict"] = spectral::to_string(spectral::classify_slope(slope));
      slope_note = std::to_string(slope) + " -> " +
                   spectral::to_string(spectral::classify_slope(slope));
    }
    r["verdict"] = "reached";
    results["results"] = r;
    write_results(results, dir);
    write_control_csv(steer.control, dir / "control.csv");
    write_spectrum_csv(steer.gram_spectrum, dir / "gram_spectrum.csv");
    write_state_csv(basis, steer.report.achieved,
                    synthesis::target_coeff_state(target, basis), dir / "state.csv");
    {
      csv::Writer out((dir / "tails.csv").string(), {"N", "S"});
      for (std::size_t i = 0; i < tail.partial_sums.size(); ++i)
        out.row({static_cast<double>(i + 1), tail.partial_sums[i]});
    }
    log << "steer: class " << synthesis::to_string(config.control_class) << ", N = "
        << config.n_modes << ", m = " << m << ", kernel " << config.kernel.describe() << "\n"
        << "  reach error " << steer.report.relative_error << " (threshold "
        << synthesis::kReachThreshold << "), Gram condition " << steer.gram_condition << "\n"
        << "  achieved-tail slope " << slope_note << "\n"
        << "  verdict: reached\n";
    return 0;
  } catch (const ReachFailed& failure) {
    json r;
    r["reach_error"] = failure.reach_error;
    r["verdict"] = "reach_failed";
    r["message"] = failure.what();
    results["results"] = r;
    write_results(results, dir);
    log << "steer: FAILED - " << failure.what() << "\n";
    return 2;
  }
}

int run_regularity(const ExperimentConfig& config, std::ostream& log) {
  const auto basis = spectral::build_interval_basis(config.b, config.n_modes);
  const int m = config.grid_m > 0 ? config.grid_m
                                  : auto_grid_steps(config.T, basis.max_abs_lambda());
  const TimeGrid grid(config.T, m);
  json results = common_header(config, grid);
  results["parameters"]["g0"] = config.g0;
  results["parameters"]["g1"] = config.g1.type;
  const fs::path dir(config.output_dir);
  fs::create_directories(dir);
  const Signal g1 = make_generator_seed(config, grid);
  try {
    const auto report =
        synthesis::regularity_experiment(config.kernel, config.g0, g1, basis, grid);
    json r;
    r["obstruction"] = report.obstruction;
    r["with_kernel"] = regularity_run_to_json(report.with_kernel);
    if (report.zero_twin) r["zero_twin"] = regularity_run_to_json(*report.zero_twin);
    r["verdict_k3"] = spectral::to_string(report.with_kernel.verdicts[2]);
    results["results"] = r;
    write_results(results, dir);
    write_control_csv(report.control, dir / "control.csv");
    write_tails_csv(report.with_kernel, dir / "tails.csv");
    if (report.zero_twin) write_tails_csv(*report.zero_twin, dir / "tails_zero_twin.csv");
    log << "regularity: N = " << config.n_modes << ", m = " << m << ", kernel "
        << config.kernel.describe() << "\n"
        << "  obstruction = " << report.obstruction << "\n";
    for (int k = 1; k <= 4; ++k)
      log << "  k = " << k << ": slope " << report.with_kernel.slopes[k - 1] << " -> "
          << spectral::to_string(report.with_kernel.verdicts[k - 1])
          << (report.zero_twin
                  ? " (K=0 twin: " +
                        spectral::to_string(report.zero_twin->verdicts[k - 1]) + ")"
                  : std::string())
          << "\n";
    return 0;
  } catch (const ObstructionVanishes& warning) {
    json r;
    r["verdict"] = "obstruction_vanishes";
    r["message"] = warning.what();
    results["results"] = r;
    write_results(results, dir);
    log << "regularity: INCONCLUSIVE - " << warning.what() << "\n";
    return 2;
  }
}

int run_riesz(const ExperimentConfig& config, std::ostream& log) {
  const auto basis = spectral::build_interval_basis(config.b, config.n_modes);
  const int m = config.grid_m > 0 ? config.grid_m
                                  : auto_grid_steps(config.T, basis.max_abs_lambda());
  const TimeGrid grid(config.T, m);
  const auto zetas = volterra::solve_zeta_batch(basis, config.kernel, grid);
  const int order = moment::order_of(synthesis::target_class_for(config.control_class));
  const auto set = moment::build_kernel_set(order, basis, zetas, config.kernel);
  const auto report = moment::riesz_diagnostics(set);

  json results = common_header(config, grid);
  results["parameters"]["kernel_order"] = order;
  json r;
  r["min_eigenvalue"] = report.min_eigenvalue;
  r["max_eigenvalue"] = report.max_eigenvalue;
  r["condition"] = report.condition;
  r["defect"] = report.defect;
  r["removed_columns"] = report.removed_columns;
  r["post_removal_condition"] = report.post_removal_condition;
  r["post_removal_defect"] = report.post_removal_defect;
  results["results"] = r;
  const fs::path dir(config.output_dir);
  fs::create_directories(dir);
  write_results(results, dir);
  write_spectrum_csv(report.spectrum, dir / "gram_spectrum.csv");
  {
    std::vector<std::string> header{"t"};
    for (int n = 0; n < set.size(); ++n) {
      header.push_back("re_e" + std::to_string(n + 1));
      header.push_back("im_e" + std::to_string(n + 1));
    }
    csv::Writer out((dir / "kernels.csv").string(), header);
    for (int j = 0; j < grid.size(); ++j) {
      std::vector<double> row{grid.node(j)};
      for (int n = 0; n < set.size(); ++n) {
        row.push_back(set.pairing_kernel(n).values[j].real());
        row.push_back(set.pairing_kernel(n).values[j].imag());
      }
      out.row(row);
    }
  }
  log << "riesz: N = " << config.n_modes << ", T = " << config.T << ", order " << order
      << ", kernel " << config.kernel.describe() << "\n"
      << "  eigenvalues in [" << report.min_eigenvalue << ", " << report.max_eigenvalue
      << "], condition " << report.condition << "\n"
      << "  defect " << report.defect;
  if (report.defect > 0)
    log << " -> removed " << report.removed_columns.size() << " columns, post condition "
        << report.post_removal_condition << ", post defect " << report.post_removal_defect;
  log << "\n";
  return 0;
}

int run_zeta_convergence(const ExperimentConfig& config, std::ostream& log) {
  const auto basis = spectral::build_interval_basis(config.b, config.n_modes);
  const int m_base = config.grid_m > 0 ? config.grid_m
                                       : auto_grid_steps(config.T, basis.max_abs_lambda());
  json results = common_header(config, TimeGrid(config.T, m_base));
  json modes_json = json::array();
  const fs::path dir(config.output_dir);
  fs::create_directories(dir);

  for (const auto& mode : basis.modes) {
    std::array<int, 3> ms{m_base, 2 * m_base, 4 * m_base};
    std::array<Signal, 3> zs_ts, zs_pi;
    for (int i = 0; i < 3; ++i) {
      const TimeGrid grid(config.T, ms[i]);
      zs_ts[i] = volterra::solve_zeta_timestep(mode, config.kernel, grid).zeta;
      zs_pi[i] = volterra::solve_zeta_picard(mode, config.kernel, grid, 60, 1e-12).zeta;
    }
    auto sup_err = [&](const Signal& coarse, const Signal& fine, int ratio) {
      double e = 0.0;
      for (int j = 0; j < coarse.size(); ++j)
        e = std::max(e, std::abs(coarse.values[j] - fine.values[j * ratio]));
      return e;
    };
    auto against_closed_form = [&](const Signal& z) {
      double e = 0.0;
      for (int j = 0; j < z.size(); ++j) {
        const kernels::Complex exact =
            std::sin(mode.lambda * z.grid.node(j)) / mode.lambda;
        e = std::max(e, std::abs(z.values[j] - exact));
      }
      return e;
    };
    json mj;
    mj["n"] = mode.index;
    mj["lambda_sq"] = mode.lambda_sq;
    double e1, e2;
    double e1_pi, e2_pi;
    if (config.kernel.is_zero()) {
      e1 = against_closed_form(zs_ts[0]);
      e2 = against_closed_form(zs_ts[1]);
      e1_pi = against_closed_form(zs_pi[0]);
      e2_pi = against_closed_form(zs_pi[1]);
      mj["error_mode"] = "closed_form";
    } else {
      e1 = sup_err(zs_ts[0], zs_ts[2], 4);
      e2 = sup_err(zs_ts[1], zs_ts[2], 2);
      e1_pi = sup_err(zs_pi[0], zs_pi[2], 4);
      e2_pi = sup_err(zs_pi[1], zs_pi[2], 2);
      mj["error_mode"] = "self_finest";
    }
    mj["timestep_errors"] = {e1, e2};
    mj["picard_errors"] = {e1_pi, e2_pi};
    // Orders are meaningless once errors sit at roundoff.
    const double floor = 1e-12;
    mj["timestep_order"] =
        (e1 > floor && e2 > floor) ? json(std::log2(e1 / e2)) : json("exact");
    mj["picard_order"] =
        (e1_pi > floor && e2_pi > floor) ? json(std::log2(e1_pi / e2_pi)) : json("exact");
    modes_json.push_back(mj);

    volterra::write_csv(volterra::solve_zeta_timestep(mode, config.kernel,
                                                      TimeGrid(config.T, m_base)),
                        (dir / ("zeta_n" + std::to_string(mode.index) + ".csv")).string());
  }
  results["results"]["modes"] = modes_json;
  write_results(results, dir);
  log << "zeta-convergence: N = " << config.n_modes << ", base m = " << m_base << ", kernel "
      << config.kernel.describe() << "\n";
  for (const auto& mj : modes_json)
    log << "  n = " << mj["n"] << ": timestep order " << mj["timestep_order"].dump()
        << ", picard order " << mj["picard_order"].dump() << "\n";
  return 0;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json obj;
  try {
    obj = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!obj.is_object()) throw ConfigError("config root must be an object");
  check_known_keys(obj, "", {"experiment", "b", "kernel", "T", "n_modes", "grid_m",
                             "control_class", "target", "g0", "g1", "ridge", "seed",
                             "output_dir"});
  ExperimentConfig config;
  if (!obj.contains("experiment")) throw ConfigError("missing field 'experiment'");
  config.experiment = experiment_from_string(obj["experiment"].get<std::string>());
  config.b = obj.value("b", 0.0);
  if (obj.contains("kernel")) config.kernel = parse_kernel(obj["kernel"]);
  config.T = require_positive(obj, "T", 2.5);
  if (obj.contains("n_modes")) {
    if (!obj["n_modes"].is_number_integer() || obj["n_modes"].get<int>() < 1)
      throw ConfigError("field 'n_modes' must be a positive integer");
    config.n_modes = obj["n_modes"].get<int>();
  }
  if (obj.contains("grid_m")) {
    if (obj["grid_m"].is_string()) {
      if (obj["grid_m"].get<std::string>() != "auto")
        throw ConfigError("field 'grid_m' must be an integer or \"auto\"");
      config.grid_m = -1;
    } else if (obj["grid_m"].is_number_integer()) {
      config.grid_m = obj["grid_m"].get<int>();
      if (config.grid_m < 16) throw ConfigError("field 'grid_m' must be >= 16");
    } else {
      throw ConfigError("field 'grid_m' must be an integer or \"auto\"");
    }
  }
  if (obj.contains("control_class"))
    config.control_class = parse_class(obj["control_class"].get<std::string>());
  if (obj.contains("target")) {
    const json& t = obj["target"];
    check_known_keys(t, "target.", {"generator", "scale", "decay", "xi", "eta"});
    config.target.generator = t.value("generator", "inverse_square");
    config.target.scale = t.value("scale", 1.0);
    config.target.decay = t.value("decay", 2.0);
    if (t.contains("xi")) config.target.xi = t["xi"].get<std::vector<double>>();
    if (t.contains("eta")) config.target.eta = t["eta"].get<std::vector<double>>();
  }
  config.g0 = obj.value("g0", 1.0);
  if (obj.contains("g1")) {
    const json& g = obj["g1"];
    check_known_keys(g, "g1.", {"type", "cycles", "samples"});
    config.g1.type = g.value("type", "projected_sine");
    config.g1.cycles = g.value("cycles", 1.5);
    if (g.contains("samples")) config.g1.samples = g["samples"].get<std::vector<double>>();
  }
  config.ridge = obj.value("ridge", 1e-10);
  if (config.ridge < 0.0) throw ConfigError("field 'ridge' must be >= 0");
  config.seed = obj.value("seed", std::uint64_t{0});
  config.output_dir = obj.value("output_dir", std::string("out"));
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_config(text);
}

std::string default_config(const std::string& experiment) {
  const Experiment e = experiment_from_string(experiment);
  json j;
  j["_doc"] = "memctrl experiment configuration; fields prefixed with '_' are ignored";
  j["experiment"] = experiment;
  j["b"] = 0.0;
  j["_kernel"] = "families: zero | constant(k0) | exponential(k0,a) | tabulated(csv)";
  j["kernel"] = {{"family", "exponential"}, {"k0", 1.0}, {"a", 1.0}};
  j["T"] = 2.5;
  j["n_modes"] = 12;
  j["_grid_m"] = "\"auto\" applies m = max(512, next_pow2(4 T |lambda_N|))";
  j["grid_m"] = "auto";
  switch (e) {
    case Experiment::steer:
      j["control_class"] = "H10";
      j["_target"] = "generators: inverse_square | zero | random_l2 | explicit";
      j["target"] = {{"generator", "inverse_square"}, {"scale", 1.0}};
      j["ridge"] = 1e-10;
      break;
    case Experiment::regularity:
      j["n_modes"] = 48;
      j["T"] = 4.0;
      j["g0"] = 1.0;
      j["_g1"] = "H30 generator seed: exp_aligned | projected_sine | explicit";
      j["g1"] = {{"type", "exp_aligned"}};
      break;
    case Experiment::riesz:
      j["control_class"] = "L2";
      j["T"] = 2.0;
      j["n_modes"] = 16;
      break;
    case Experiment::zeta_convergence:
      j["n_modes"] = 4;
      j["T"] = 2.0;
      j["grid_m"] = 512;
      break;
  }
  j["seed"] = 0;
  j["output_dir"] = "out";
  return j.dump(2) + "\n";
}

int run(const ExperimentConfig& config, std::ostream& log) {
  switch (config.experiment) {
    case Experiment::steer: return run_steer(config, log);
    case Experiment::regularity: return run_regularity(config, log);
    case Experiment::riesz: return run_riesz(config, log);
    case Experiment::zeta_convergence: return run_zeta_convergence(config, log);
  }
  return 1;
}

int run_config_file(const std::string& path, std::ostream& log) {
  try {
    const ExperimentConfig config = load_config(path);
    return run(config, log);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return 1;
  } catch (const UnderResolved& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  } catch (const InvalidArgument& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace memctrl::cli
