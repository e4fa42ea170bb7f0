#include "dd/report.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "dd/config.hpp"

namespace dd {

std::string format_number(double x) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 9);
  return std::string(buf.data(), ptr);
}

std::string current_status(double v, double v_err) {
  return std::abs(v) < 3.0 * v_err ? "symmetric" : "directed";
}

void write_comment_block(std::ostream& os, const SimParams& params) {
  std::istringstream lines(to_config_text(params));
  for (std::string line; std::getline(lines, line);) os << "# " << line << '\n';
}

void write_cm_table(std::ostream& os, const EnsembleResult& res, const SimParams& params) {
  write_comment_block(os, params);
  os << "t,cm,stderr\n";
  for (std::size_t j = 0; j < res.n_samples(); ++j)
    os << format_number(res.cm_times[j]) << ',' << format_number(res.cm_positions[j]) << ','
       << format_number(res.cm_stderr[j]) << '\n';
}

void write_sweep_table(std::ostream& os, const SweepResult& sweep, const SimParams& params) {
  write_comment_block(os, params);
  os << sweep.parameter << ",v,v_err,status\n";
  for (std::size_t i = 0; i < sweep.values.size(); ++i)
    os << format_number(sweep.values[i]) << ',' << format_number(sweep.v[i]) << ','
       << format_number(sweep.v_err[i]) << ',' << current_status(sweep.v[i], sweep.v_err[i])
       << '\n';
  os << "# sigma_v = " << format_number(sweep.sigma_v) << '\n';
}

void write_curve(std::ostream& os, const SweepResult& sweep) {
  os << "# " << sweep.parameter << " v\n";
  for (std::size_t i = 0; i < sweep.values.size(); ++i)
    os << format_number(sweep.values[i]) << ' ' << format_number(sweep.v[i]) << '\n';
}

std::string manifest_json(const RunManifest& m) {
  const auto& p = m.params;
  nlohmann::ordered_json j;
  j["command"] = m.command;
  j["version"] = m.version;
  j["seed"] = p.seed;
  j["wall_seconds"] = m.wall_seconds;
  j["params"] = {
      {"u0", p.lattice.u0},
      {"gamma0", p.lattice.gamma0},
      {"recoil_kick", p.lattice.recoil_kick},
      {"alpha0", p.drive.alpha0},
      {"a_amp", p.drive.a_amp},
      {"b_amp", p.drive.b_amp},
      {"omega", p.drive.omega},
      {"phi", p.drive.phi},
      {"dt", p.dt},
      {"t_total", p.t_total},
      {"t_transient", p.t_transient},
      {"n_traj", p.n_traj},
      {"seed", p.seed},
      {"initial_spread_z", p.initial_spread.z},
      {"initial_spread_p", p.initial_spread.p},
      {"sample_stride", p.sample_stride},
      {"parity", p.parity},
  };
  j["config"] = to_config_text(p);
  auto outputs = nlohmann::ordered_json::array();
  for (const auto& path : m.outputs) outputs.push_back(path.string());
  j["outputs"] = outputs;
  return j.dump(2) + "\n";
}

}  // namespace dd
