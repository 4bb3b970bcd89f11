// isingbath: decoherence, quantumness and non-Markovianity of a qubit in a
// thermal transverse-field Ising bath.
//
//   isingbath trajectory --n-spins 1200 --h 1 --epsilon 0.05 --temperature 0.5 ...
//   isingbath sweep CONFIG | --preset NAME [--out PATH] [--format csv|json]
//   isingbath oracle-check
//
// Exit codes: 0 success, 2 configuration error, 3 computational error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "isingbath/errors.hpp"
#include "isingbath/oracles.hpp"
#include "isingbath/parallel.hpp"
#include "isingbath/sweep.hpp"

namespace {

using namespace isingbath;

constexpr int kExitConfig = 2;
constexpr int kExitCompute = 3;

struct CommonOptions {
  std::string out;
  std::string format = "csv";
  int threads = 0;
  std::optional<double> t_max;
  std::optional<int> points;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--out", o.out, "Output file (stdout when omitted)");
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", o.threads, "Worker threads (0 = OpenMP default)");
  cmd->add_option("--t-max", o.t_max, "Time horizon in units of 1/J");
  cmd->add_option("--points", o.points, "Number of time samples");
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot open output file " + path);
  out << content;
  if (!out) throw OutputError("failed writing output file " + path);
}

struct TrajectoryOptions {
  BathSettings bath;
  std::optional<double> c1, c2, c3;
  std::optional<double> pulse_period;
  std::string thermal_field = "original";
  bool sudden_changes = false;
  bool allow_nonpositive = false;
};

int run_trajectory(const TrajectoryOptions& o, const CommonOptions& common) {
  PointConfig point;
  point.bath = o.bath;
  point.grid = {common.t_max, common.points};
  if (o.c1 || o.c2 || o.c3) {
    if (!(o.c1 && o.c2 && o.c3)) throw ConfigError("give all of --c1, --c2, --c3");
    point.state = o.allow_nonpositive ? BellDiagonalState::coefficients(*o.c1, *o.c2, *o.c3)
                                      : BellDiagonalState::make(*o.c1, *o.c2, *o.c3);
  }
  if (o.pulse_period) {
    point.pulses = PulseConfig::with_period(*o.pulse_period);
    point.pulses.thermal_field =
        o.thermal_field == "h_bar" ? ThermalField::h_bar : ThermalField::original;
  }
  const BathParams params = point.bath.to_params();
  const TimeGrid grid = point.grid.resolve(point.bath);
  const auto traj = trajectory(params, grid, point.pulses);
  std::vector<double> q;
  if (point.state) q = quantumness_series(*point.state, traj.magnitude);

  std::string content;
  if (common.format == "csv") {
    content = q.empty() ? "t,re_f,im_f,abs_f,echo\n" : "t,re_f,im_f,abs_f,echo,quantumness\n";
    for (std::size_t i = 0; i < grid.samples().size(); ++i) {
      content += format_double(grid[i]) + ',' + format_double(traj.values[i].real()) + ',' +
                 format_double(traj.values[i].imag()) + ',' + format_double(traj.magnitude[i]) +
                 ',' + format_double(traj.echo[i]);
      if (!q.empty()) content += ',' + format_double(q[i]);
      content += '\n';
    }
  } else {
    nlohmann::json doc;
    doc["t"] = grid.samples();
    std::vector<double> re, im;
    for (const auto& v : traj.values) {
      re.push_back(v.real());
      im.push_back(v.imag());
    }
    doc["re_f"] = re;
    doc["im_f"] = im;
    doc["abs_f"] = traj.magnitude;
    doc["echo"] = traj.echo;
    if (!q.empty()) doc["quantumness"] = q;
    content = doc.dump(1) + "\n";
  }
  write_output(common.out, content);

  if (o.sudden_changes) {
    if (!point.state) throw ConfigError("--sudden-changes needs --c1, --c2, --c3");
    for (const auto& c : detect_sudden_changes(*point.state, params, point.pulses, traj))
      std::cerr << "sudden change at t = " << format_double(c.time)
                << ", |F| = " << format_double(c.coherence) << "\n";
  }
  return 0;
}

struct SweepOptions {
  std::string config;
  std::string preset;
  std::optional<double> threshold;
  bool list_presets = false;
};

int run_sweep_command(const SweepOptions& o, const CommonOptions& common) {
  if (o.list_presets) {
    for (const auto& name : preset_names()) std::cout << name << "\n";
    return 0;
  }
  if (o.config.empty() == o.preset.empty())
    throw ConfigError("give exactly one of a CONFIG file or --preset NAME");
  SweepSpec spec;
  if (!o.preset.empty()) {
    spec = preset(o.preset);
  } else {
    std::ifstream in(o.config);
    if (!in) throw ConfigError("cannot read config file " + o.config);
    std::stringstream buffer;
    buffer << in.rdbuf();
    spec = parse_config(buffer.str());
  }
  if (common.t_max || common.points) {
    auto override_grid = [&](PointConfig& p) {
      if (common.t_max) p.grid.t_max = common.t_max;
      if (common.points) p.grid.n_points = common.points;
    };
    override_grid(spec.base);
    for (auto& s : spec.series) override_grid(s.config);
  }
  if (o.threshold) spec.threshold = *o.threshold;
  validate(spec);

  const ResultTable table = run_sweep(spec);
  const auto format = common.format == "json" ? OutputFormat::json : OutputFormat::csv;
  if (common.out.empty())
    std::cout << (format == OutputFormat::csv ? to_csv(table) : to_json(table));
  else
    emit(table, spec, format, common.out);
  if (table.has_errors()) {
    std::cerr << "isingbath: some sweep points failed; see the error column\n";
    return kExitCompute;
  }
  return 0;
}

int run_oracle_check(std::uint64_t seed, int states) {
  const auto dense = oracle::run_dense_mode_suite(seed);
  const auto trace = oracle::run_trace_norm_suite(seed + 1, states);
  bool ok = true;
  for (const auto& r : {dense, trace}) {
    std::printf("%-40s %s  cases=%d  max_error=%.3e  tolerance=%.1e\n", r.name.c_str(),
                r.passed() ? "PASS" : "FAIL", r.cases, r.max_error, r.tolerance);
    ok = ok && r.passed();
  }
  return ok ? 0 : kExitCompute;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Qubit dephasing in a thermal transverse-field Ising bath"};
  app.set_version_flag("--version", ISINGBATH_VERSION);
  app.require_subcommand(1);

  CommonOptions traj_common, sweep_common;
  TrajectoryOptions traj;
  auto* traj_cmd = app.add_subcommand("trajectory", "Decoherence factor and Q_S(t) for one bath");
  traj_cmd->set_help_flag("--help", "Print this help message and exit");
  traj_cmd->add_option("--n-spins", traj.bath.n_spins, "Bath size N (even)")->required();
  traj_cmd->add_option("--h", traj.bath.h, "Transverse field")->required();
  traj_cmd->add_option("--j", traj.bath.j, "Bath coupling J");
  traj_cmd->add_option("--epsilon", traj.bath.epsilon, "Qubit-bath coupling")->required();
  traj_cmd->add_option("--f", traj.bath.f, "Qubit splitting");
  traj_cmd->add_option("--temperature", traj.bath.temperature, "Temperature T > 0")->required();
  traj_cmd->add_option("--kappa-b", traj.bath.kappa_b, "Boltzmann constant");
  traj_cmd->add_option("--c1", traj.c1, "Initial Bell coefficient c1");
  traj_cmd->add_option("--c2", traj.c2, "Initial Bell coefficient c2");
  traj_cmd->add_option("--c3", traj.c3, "Initial Bell coefficient c3");
  traj_cmd->add_option("--pulse-period", traj.pulse_period, "Enable bang-bang control with this cycle period");
  traj_cmd->add_option("--thermal-field", traj.thermal_field, "Field for thermal weights under pulses")
      ->check(CLI::IsMember({"original", "h_bar"}));
  traj_cmd->add_flag("--allow-nonpositive", traj.allow_nonpositive,
                     "Accept Bell coefficients outside the positive tetrahedron");
  traj_cmd->add_flag("--sudden-changes", traj.sudden_changes, "Report sudden-change times on stderr");
  add_common(traj_cmd, traj_common);

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweep from a config file or preset");
  sweep_cmd->add_option("config", sweep.config, "Sweep configuration file");
  sweep_cmd->add_option("--preset", sweep.preset, "Shipped preset (fig2a, fig2b, fig3a-c, fig5a-b)");
  sweep_cmd->add_option("--threshold", sweep.threshold, "Extremum detection threshold");
  sweep_cmd->add_flag("--list-presets", sweep.list_presets, "List shipped presets");
  add_common(sweep_cmd, sweep_common);

  std::uint64_t seed = 20140101;
  int states = 100;
  int oracle_threads = 0;
  auto* oracle_cmd = app.add_subcommand("oracle-check", "Run the dense-mode and trace-norm oracle suites");
  oracle_cmd->add_option("--seed", seed, "Random seed");
  oracle_cmd->add_option("--states", states, "Number of random states for the trace-norm suite");
  oracle_cmd->add_option("--threads", oracle_threads, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*traj_cmd) {
      set_threads(traj_common.threads);
      return run_trajectory(traj, traj_common);
    }
    if (*sweep_cmd) {
      set_threads(sweep_common.threads);
      return run_sweep_command(sweep, sweep_common);
    }
    set_threads(oracle_threads);
    return run_oracle_check(seed, states);
  } catch (const ConfigError& e) {
    std::cerr << "isingbath: configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const OutputError& e) {
    std::cerr << "isingbath: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ComputationError& e) {
    std::cerr << "isingbath: computational error: " << e.what() << "\n";
    return kExitCompute;
  } catch (const StructuralError& e) {
    std::cerr << "isingbath: computational error: " << e.what() << "\n";
    return kExitCompute;
  }
}
