// ddsim: command-line front end for the driven-lattice transport simulator.
//
//   ddsim run           --config FILE [--seed N] [--workers N] [--out DIR] [--set k=v]...
//   ddsim sweep-phi     --grid start:stop:count ...
//   ddsim sweep-b       --grid start:stop:count [--phi PHASE] ...
//   ddsim oracle-mixing ...
//   ddsim check-symmetry ...
//
// Any config key can also be overridden as --key=value.
// Exit codes: 0 success, 2 validation or usage error, 3 runtime failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dd/analysis.hpp"
#include "dd/config.hpp"
#include "dd/drive.hpp"
#include "dd/ensemble.hpp"
#include "dd/oracle.hpp"
#include "dd/report.hpp"

#ifndef DD_VERSION
#define DD_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  unsigned workers = 0;
  std::string out_dir = ".";
  std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "Config file (key = value lines)");
  cmd->add_option("--seed", opts.seed, "Master RNG seed");
  cmd->add_option("--workers", opts.workers, "Worker threads (0 = all cores)");
  cmd->add_option("--out", opts.out_dir, "Output directory");
  cmd->add_option("--set", opts.sets, "Override a config key: --set key=value");
  cmd->allow_extras();
}

dd::SimParams load_params(const CommonOptions& opts, const std::vector<std::string>& extras) {
  dd::ConfigMap config;
  if (!opts.config_path.empty()) config = dd::load_config_file(opts.config_path);
  for (const auto& s : opts.sets) {
    auto [key, value] = dd::parse_override(s);
    config.insert_or_assign(std::move(key), std::move(value));
  }
  for (const auto& e : extras) {
    if (e.rfind("--", 0) != 0) throw UsageError("unexpected argument '" + e + "'");
    auto [key, value] = dd::parse_override(std::string_view(e).substr(2));
    config.insert_or_assign(std::move(key), std::move(value));
  }
  if (opts.seed) config.insert_or_assign("seed", std::to_string(*opts.seed));
  return dd::resolve_config(config);
}

std::vector<double> parse_grid(const std::string& text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
  if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos)
    throw UsageError("grid '" + text + "' is not start:stop:count");
  double start = 0.0, stop = 0.0;
  long count = 0;
  try {
    start = dd::parse_real(text.substr(0, c1));
    stop = dd::parse_real(text.substr(c1 + 1, c2 - c1 - 1));
    std::size_t used = 0;
    const std::string count_text = text.substr(c2 + 1);
    count = std::stol(count_text, &used);
    if (used != count_text.size()) throw std::invalid_argument("count");
  } catch (const std::exception&) {
    throw UsageError("grid '" + text + "' is not start:stop:count");
  }
  if (count < 2) throw UsageError("grid '" + text + "' needs count >= 2");
  std::vector<double> grid;
  for (long i = 0; i < count; ++i)
    grid.push_back(start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1));
  return grid;
}

// Tracks written files so a failed command leaves nothing half-written behind.
class OutputSet {
 public:
  explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {}
  ~OutputSet() {
    if (committed_) return;
    std::error_code ec;
    for (const auto& p : written_) fs::remove(p, ec);
  }

  template <class Writer>
  fs::path write(const std::string& name, Writer&& writer) {
    fs::create_directories(dir_);
    const fs::path path = dir_ / name;
    written_.push_back(path);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw dd::RuntimeFailure("cannot write '" + path.string() + "'");
    writer(out);
    out.flush();
    if (!out) throw dd::RuntimeFailure("write failed for '" + path.string() + "'");
    return path;
  }

  const std::vector<fs::path>& paths() const { return written_; }
  const fs::path& dir() const { return dir_; }
  void commit() { committed_ = true; }

 private:
  fs::path dir_;
  std::vector<fs::path> written_;
  bool committed_ = false;
};

void write_manifest(OutputSet& outputs, const dd::SimParams& params, const std::string& command,
                    std::chrono::steady_clock::time_point started) {
  dd::RunManifest m;
  m.params = params;
  m.command = command;
  m.version = DD_VERSION;
  m.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  m.outputs = outputs.paths();
  m.outputs.push_back(outputs.dir() / "manifest.json");
  outputs.write("manifest.json", [&](std::ostream& os) { os << dd::manifest_json(m); });
}

int cmd_run(const CommonOptions& opts, const std::vector<std::string>& extras) {
  const auto started = std::chrono::steady_clock::now();
  const dd::SimParams params = load_params(opts, extras);
  const dd::EnsembleResult res = dd::run_ensemble(params, opts.workers);
  const dd::VelocityFit fit = dd::fit_velocity(res, dd::analysis_window(params));

  OutputSet outputs(opts.out_dir);
  outputs.write("cm.csv", [&](std::ostream& os) { dd::write_cm_table(os, res, params); });
  outputs.write("params.cfg", [&](std::ostream& os) { os << dd::to_config_text(params); });
  write_manifest(outputs, params, "run", started);
  outputs.commit();
  std::cout << "v = " << dd::format_number(fit.v) << " v_r, v_err = "
            << dd::format_number(fit.v_err) << " v_r, status = "
            << dd::current_status(fit.v, fit.v_err) << '\n';
  return 0;
}

int cmd_sweep(const CommonOptions& opts, const std::vector<std::string>& extras,
              const std::string& which, const std::string& grid_text,
              const std::string& phi_text) {
  const auto started = std::chrono::steady_clock::now();
  const std::vector<double> grid = parse_grid(grid_text);
  dd::SimParams params = load_params(opts, extras);
  const dd::SweepOptions sweep_options{opts.workers};

  dd::SweepResult sweep;
  if (which == "phi") {
    sweep = dd::phase_sweep(params, grid, sweep_options);
  } else {
    double phi = 0.0;
    try {
      phi = dd::parse_real(phi_text);
    } catch (const std::invalid_argument&) {
      throw UsageError("--phi '" + phi_text + "' is not a number");
    }
    params.drive.phi = phi;
    sweep = dd::b_sweep(params, grid, phi, sweep_options);
  }

  OutputSet outputs(opts.out_dir);
  const std::string stem = "sweep_" + which;
  outputs.write(stem + ".csv",
                [&](std::ostream& os) { dd::write_sweep_table(os, sweep, params); });
  outputs.write(stem + ".dat", [&](std::ostream& os) { dd::write_curve(os, sweep); });
  outputs.write("params.cfg", [&](std::ostream& os) { os << dd::to_config_text(params); });
  write_manifest(outputs, params, "sweep-" + which, started);
  outputs.commit();
  for (std::size_t i = 0; i < sweep.values.size(); ++i)
    std::cout << which << " = " << dd::format_number(sweep.values[i])
              << "  v = " << dd::format_number(sweep.v[i])
              << "  v_err = " << dd::format_number(sweep.v_err[i]) << "  "
              << dd::current_status(sweep.v[i], sweep.v_err[i]) << '\n';
  std::cout << "sigma_v = " << dd::format_number(sweep.sigma_v) << '\n';
  return 0;
}

struct MixingOptions {
  double gamma_damp = 5.0;
  double fixed = 0.05;
  double lo = 0.01;
  double hi = 0.1;
  int points = 6;
};

int cmd_oracle_mixing(const CommonOptions& opts, const std::vector<std::string>& extras,
                      const MixingOptions& mix) {
  const auto started = std::chrono::steady_clock::now();
  const dd::SimParams params = load_params(opts, extras);
  if (mix.points < 2 || !(mix.lo > 0.0) || !(mix.hi > mix.lo))
    throw UsageError("oracle-mixing needs --points >= 2 and 0 < --min < --max");
  if (!(params.drive.alpha0 > 0.0)) throw UsageError("oracle-mixing needs alpha0 > 0");

  std::vector<double> amps;
  for (int i = 0; i < mix.points; ++i)
    amps.push_back(mix.lo * std::pow(mix.hi / mix.lo, static_cast<double>(i) / (mix.points - 1)));

  std::vector<dd::oracle::MixingResult> a_series, b_series;
  for (double a : amps) {
    dd::DriveParams d = params.drive;
    d.a_amp = a;
    d.b_amp = mix.fixed;
    a_series.push_back(dd::oracle::mixing_displacement(params.lattice.u0, mix.gamma_damp, d));
  }
  for (double b : amps) {
    dd::DriveParams d = params.drive;
    d.a_amp = mix.fixed;
    d.b_amp = b;
    b_series.push_back(dd::oracle::mixing_displacement(params.lattice.u0, mix.gamma_damp, d));
  }
  auto slope = [&amps](const std::vector<dd::oracle::MixingResult>& series) {
    std::vector<double> dz;
    for (const auto& r : series) dz.push_back(r.dz);
    return dd::oracle::loglog_slope(amps, dz);
  };
  const double slope_a = slope(a_series);
  const double slope_b = slope(b_series);

  OutputSet outputs(opts.out_dir);
  outputs.write("mixing.csv", [&](std::ostream& os) {
    dd::write_comment_block(os, params);
    os << "# gamma_damp = " << dd::format_number(mix.gamma_damp) << '\n';
    os << "series,a,b,dz\n";
    for (const auto& r : a_series)
      os << "a," << dd::format_number(r.a_amp) << ',' << dd::format_number(r.b_amp) << ','
         << dd::format_number(r.dz) << '\n';
    for (const auto& r : b_series)
      os << "b," << dd::format_number(r.a_amp) << ',' << dd::format_number(r.b_amp) << ','
         << dd::format_number(r.dz) << '\n';
    os << "# slope_a = " << dd::format_number(slope_a) << '\n';
    os << "# slope_b = " << dd::format_number(slope_b) << '\n';
  });
  write_manifest(outputs, params, "oracle-mixing", started);
  outputs.commit();
  std::cout << "slope_a = " << dd::format_number(slope_a)
            << "\nslope_b = " << dd::format_number(slope_b) << '\n';
  return 0;
}

int cmd_check_symmetry(const CommonOptions& opts, const std::vector<std::string>& extras,
                       std::size_t samples) {
  const dd::SimParams params = load_params(opts, extras);
  const dd::DriveParams& d = params.drive;
  const auto force = [&d](double t) { return dd::inertial_force(t, d); };
  const double period = dd::fundamental_period(d);
  const double shift =
      dd::oracle::sample_symmetry(force, period, dd::oracle::SymmetryKind::Shift, samples);
  const double reversal =
      dd::oracle::sample_symmetry(force, period, dd::oracle::SymmetryKind::Reversal, samples);
  std::cout << "shift_symmetry_holds = " << (dd::shift_symmetry_holds(d) ? "true" : "false")
            << "\nshift_max_violation = " << dd::format_number(shift)
            << "\ntime_reversal_symmetry_holds = "
            << (dd::time_reversal_symmetry_holds(d) ? "true" : "false")
            << "\nreversal_max_violation = " << dd::format_number(reversal) << '\n';
  return 0;
}

void report_error(const char* kind, const std::string& message) {
  std::string line = message;
  for (char& c : line)
    if (c == '\n') c = ' ';
  std::cerr << "ddsim: error[" << kind << "]: " << line << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Directed diffusion of cold atoms in a phase-modulated optical lattice"};
  app.set_version_flag("--version", DD_VERSION);
  app.require_subcommand(1);

  CommonOptions common;
  auto* run = app.add_subcommand("run", "Run one ensemble and write the CM series");
  add_common(run, common);

  std::string grid_text;
  std::string phi_text = "pi/2";
  auto* sweep_phi = app.add_subcommand("sweep-phi", "Drift velocity versus phase phi");
  add_common(sweep_phi, common);
  sweep_phi->add_option("--grid", grid_text, "start:stop:count")->required();
  auto* sweep_b = app.add_subcommand("sweep-b", "Drift velocity versus B with A = 1 - B");
  add_common(sweep_b, common);
  sweep_b->add_option("--grid", grid_text, "start:stop:count")->required();
  sweep_b->add_option("--phi", phi_text, "Fixed phase (default pi/2)");

  MixingOptions mix;
  auto* mixing = app.add_subcommand("oracle-mixing", "Deterministic mixing displacement scaling");
  add_common(mixing, common);
  mixing->add_option("--gamma-damp", mix.gamma_damp, "Viscous damping rate");
  mixing->add_option("--fixed", mix.fixed, "Amplitude held fixed while the other is scanned");
  mixing->add_option("--min", mix.lo, "Smallest scanned amplitude");
  mixing->add_option("--max", mix.hi, "Largest scanned amplitude");
  mixing->add_option("--points", mix.points, "Points per scan (log-spaced)");

  std::size_t samples = 1000;
  auto* symmetry = app.add_subcommand("check-symmetry", "Drive symmetry predicates and sampling");
  add_common(symmetry, common);
  symmetry->add_option("--samples", samples, "Grid points per period");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("usage", e.what());
    return kExitValidation;
  }

  try {
    if (run->parsed()) return cmd_run(common, run->remaining());
    if (sweep_phi->parsed())
      return cmd_sweep(common, sweep_phi->remaining(), "phi", grid_text, phi_text);
    if (sweep_b->parsed()) return cmd_sweep(common, sweep_b->remaining(), "b", grid_text, phi_text);
    if (mixing->parsed()) return cmd_oracle_mixing(common, mixing->remaining(), mix);
    if (symmetry->parsed()) return cmd_check_symmetry(common, symmetry->remaining(), samples);
  } catch (const UsageError& e) {
    report_error("usage", e.what());
    return kExitValidation;
  } catch (const dd::ValidationError& e) {
    report_error("validation", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    report_error("runtime", e.what());
    return kExitRuntime;
  }
  return kExitValidation;
}
