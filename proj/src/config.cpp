#include "dd/config.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

namespace dd {

namespace {

constexpr std::array kBaseKeys = {
    "u0",          "gamma0",        "recoil_kick",      "alpha0",           "a_amp",
    "b_amp",       "omega",         "phi",              "dt",               "t_total",
    "t_transient", "n_traj",        "seed",             "initial_spread_z", "initial_spread_p",
    "sample_stride", "parity"};
constexpr std::array kHelperKeys = {"light_shift", "detuning", "omega_ratio", "periods",
                                    "transient_fraction"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool is_known(std::string_view key) {
  for (auto k : kBaseKeys)
    if (key == k) return true;
  for (auto k : kHelperKeys)
    if (key == k) return true;
  return false;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, const char* expected) {
  throw ValidationError("config key '" + std::string(key) + "': cannot parse '" +
                        std::string(value) + "' as " + expected);
}

double plain_real(std::string_view s) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw std::invalid_argument("not a number");
  return x;
}

std::string format_exact(double x) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

class Reader {
 public:
  explicit Reader(const ConfigMap& config) : config_(config) {}

  bool has(std::string_view key) const { return config_.find(key) != config_.end(); }

  double real(std::string_view key, double fallback) const {
    const auto it = config_.find(key);
    if (it == config_.end()) return fallback;
    try {
      return parse_real(it->second);
    } catch (const std::invalid_argument&) {
      bad_value(key, it->second, "a real number");
    }
  }

  std::uint64_t unsigned_int(std::string_view key, std::uint64_t fallback) const {
    const auto it = config_.find(key);
    if (it == config_.end()) return fallback;
    const std::string_view s = it->second;
    std::uint64_t x = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
      bad_value(key, s, "an unsigned integer");
    return x;
  }

  bool boolean(std::string_view key, bool fallback) const {
    const auto it = config_.find(key);
    if (it == config_.end()) return fallback;
    const std::string_view s = it->second;
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    bad_value(key, s, "a boolean");
  }

 private:
  const ConfigMap& config_;
};

}  // namespace

double parse_real(std::string_view text) {
  std::string compact;
  for (char c : text)
    if (c != ' ' && c != '\t') compact.push_back(c);
  const std::string_view s = compact;
  const auto pi_pos = s.find("pi");
  if (pi_pos == std::string_view::npos) return plain_real(s);

  std::string_view prefix = s.substr(0, pi_pos);
  if (!prefix.empty() && prefix.back() == '*') prefix.remove_suffix(1);
  double coefficient = 1.0;
  if (prefix == "-")
    coefficient = -1.0;
  else if (!prefix.empty() && prefix != "+")
    coefficient = plain_real(prefix);

  std::string_view suffix = s.substr(pi_pos + 2);
  double divisor = 1.0;
  if (!suffix.empty()) {
    if (suffix.front() != '/') throw std::invalid_argument("not a number");
    divisor = plain_real(suffix.substr(1));
  }
  return coefficient * kPi / divisor;
}

ConfigMap parse_config_text(std::string_view text) {
  ConfigMap out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ValidationError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty() || value.empty())
      throw ValidationError("config line " + std::to_string(line_no) + ": empty key or value");
    out[key] = value;
  }
  return out;
}

ConfigMap load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::pair<std::string, std::string> parse_override(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw ValidationError("override '" + std::string(assignment) + "' is not key=value");
  std::string key(trim(assignment.substr(0, eq)));
  std::string value(trim(assignment.substr(eq + 1)));
  if (key.empty() || value.empty())
    throw ValidationError("override '" + std::string(assignment) + "' is not key=value");
  return {std::move(key), std::move(value)};
}

SimParams resolve_config(const ConfigMap& config) {
  for (const auto& [key, value] : config)
    if (!is_known(key)) throw ValidationError("unknown config key '" + key + "'");

  const Reader r(config);
  SimParams p;

  if (r.has("light_shift") && r.has("u0"))
    throw ValidationError("config sets both u0 and light_shift");
  if (r.has("detuning") && r.has("gamma0"))
    throw ValidationError("config sets both gamma0 and detuning");
  if (r.has("detuning") && !r.has("light_shift"))
    throw ValidationError("config key 'detuning' requires light_shift");
  if (r.has("omega_ratio") && r.has("omega"))
    throw ValidationError("config sets both omega and omega_ratio");
  if (r.has("periods") && r.has("t_total"))
    throw ValidationError("config sets both t_total and periods");
  if (r.has("transient_fraction") && r.has("t_transient"))
    throw ValidationError("config sets both t_transient and transient_fraction");

  p.lattice.u0 = r.has("light_shift") ? depth_from_light_shift(r.real("light_shift", 0.0))
                                       : r.real("u0", p.lattice.u0);
  p.lattice.gamma0 = r.has("detuning") ? pumping_from_light_shift(r.real("light_shift", 0.0),
                                                                  r.real("detuning", 0.0))
                                       : r.real("gamma0", p.lattice.gamma0);
  p.lattice.recoil_kick = r.boolean("recoil_kick", p.lattice.recoil_kick);

  p.drive.alpha0 = r.real("alpha0", 0.0);
  p.drive.a_amp = r.real("a_amp", 1.0);
  p.drive.b_amp = r.real("b_amp", 0.0);
  p.drive.phi = r.real("phi", 0.0);
  p.drive.omega = r.has("omega")
                      ? r.real("omega", 0.0)
                      : r.real("omega_ratio", 0.87) * vibrational_frequency(p.lattice);
  if (!(p.drive.omega > 0.0)) throw ValidationError("omega must be positive");

  p.dt = r.has("dt") ? r.real("dt", 0.0) : auto_time_step(p.lattice, p.drive);
  p.t_total = r.has("t_total") ? r.real("t_total", 0.0)
                               : r.real("periods", 500.0) * p.drive.period();
  p.t_transient = r.has("t_transient") ? r.real("t_transient", 0.0)
                                       : r.real("transient_fraction", 0.2) * p.t_total;

  p.n_traj = r.unsigned_int("n_traj", 1000);
  p.seed = r.unsigned_int("seed", 1);
  p.initial_spread.z = r.real("initial_spread_z", p.initial_spread.z);
  p.initial_spread.p = r.real("initial_spread_p", p.initial_spread.p);
  p.sample_stride = r.unsigned_int("sample_stride", 0);
  p.parity = r.boolean("parity", false);
  return validate(p);
}

std::string to_config_text(const SimParams& p) {
  std::ostringstream os;
  auto line = [&os](const char* key, const std::string& value) {
    os << key << " = " << value << '\n';
  };
  auto real = [&line](const char* key, double v) { line(key, format_exact(v)); };
  real("u0", p.lattice.u0);
  real("gamma0", p.lattice.gamma0);
  line("recoil_kick", p.lattice.recoil_kick ? "true" : "false");
  real("alpha0", p.drive.alpha0);
  real("a_amp", p.drive.a_amp);
  real("b_amp", p.drive.b_amp);
  real("omega", p.drive.omega);
  real("phi", p.drive.phi);
  real("dt", p.dt);
  real("t_total", p.t_total);
  real("t_transient", p.t_transient);
  line("n_traj", std::to_string(p.n_traj));
  line("seed", std::to_string(p.seed));
  real("initial_spread_z", p.initial_spread.z);
  real("initial_spread_p", p.initial_spread.p);
  line("sample_stride", std::to_string(p.sample_stride));
  line("parity", p.parity ? "true" : "false");
  return os.str();
}

}  // namespace dd
