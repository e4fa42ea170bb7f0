#pragma once

// Flat "key = value" configuration files.
//
// Lines are "key = value"; '#' starts a comment. Keys are the SimParams field
// names (u0, gamma0, recoil_kick, alpha0, a_amp, b_amp, omega, phi, dt,
// t_total, t_transient, n_traj, seed, initial_spread_z, initial_spread_p,
// sample_stride, parity) plus derived helpers:
//
//   light_shift          sets u0 = (2/3)|light_shift|
//   detuning             with light_shift, sets gamma0 = (4/9)|light_shift/detuning|
//   omega_ratio          sets omega = omega_ratio * Omega_v   (default 0.87)
//   periods              sets t_total = periods * 2pi/omega   (default 500)
//   transient_fraction   sets t_transient = fraction * t_total (default 0.2)
//
// dt defaults to auto_time_step(). Real values accept multiples of pi
// ("pi/2", "3pi/2", "1.5*pi").

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "dd/units.hpp"

namespace dd {

using ConfigMap = std::map<std::string, std::string, std::less<>>;

/// Parses config text. Throws ValidationError on malformed lines.
ConfigMap parse_config_text(std::string_view text);

/// Reads and parses a file. Throws ValidationError naming the path if unreadable.
ConfigMap load_config_file(const std::filesystem::path& path);

/// Parses a "key=value" override.
std::pair<std::string, std::string> parse_override(std::string_view assignment);

/// Resolves keys, helpers and defaults into SimParams, then validates.
SimParams resolve_config(const ConfigMap& config);

/// Canonical config text for `params`; resolve_config(parse_config_text(...)) round-trips exactly.
std::string to_config_text(const SimParams& params);

/// Real number with optional pi multiples.
double parse_real(std::string_view text);

}  // namespace dd
