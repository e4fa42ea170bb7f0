#include "dd/units.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dd {

namespace {

// Each characteristic rate must satisfy rate * dt <= kResolution.
constexpr double kResolution = 0.1;

[[noreturn]] void fail(const std::string& what) { throw ValidationError(what); }

bool finite(double x) { return std::isfinite(x); }

}  // namespace

double vibrational_frequency(const LatticeParams& lattice) {
  return 2.0 * kWaveNumber * std::sqrt(lattice.u0 / kMass);
}

double depth_from_light_shift(double light_shift) { return 2.0 / 3.0 * std::abs(light_shift); }

double pumping_from_light_shift(double light_shift, double detuning) {
  return 4.0 / 9.0 * std::abs(light_shift) / std::abs(detuning);
}

double auto_time_step(const LatticeParams& lattice, const DriveParams& drive) {
  const double fastest =
      std::max({vibrational_frequency(lattice), drive.omega, lattice.gamma0});
  const double period = drive.period();
  const double steps = std::ceil(period * fastest / kResolution);
  return period / std::max(steps, 1.0);
}

std::size_t effective_sample_stride(const SimParams& params) {
  if (params.sample_stride > 0) return params.sample_stride;
  const double per_period = std::round(params.drive.period() / params.dt);
  return per_period < 1.0 ? std::size_t{1} : static_cast<std::size_t>(per_period);
}

std::size_t step_count(const SimParams& params) {
  if (params.t_total <= 0.0 || params.dt <= 0.0) return 0;
  return static_cast<std::size_t>(std::llround(params.t_total / params.dt));
}

SimParams validate(const SimParams& params) {
  const auto& lat = params.lattice;
  const auto& drv = params.drive;

  if (!finite(lat.u0) || lat.u0 <= 0.0) fail("u0 must be positive");
  if (!finite(lat.gamma0) || lat.gamma0 <= 0.0) fail("gamma0 must be positive");
  if (!finite(drv.alpha0) || drv.alpha0 < 0.0) fail("alpha0 must be non-negative");
  if (!finite(drv.a_amp) || !finite(drv.b_amp) || !finite(drv.phi))
    fail("drive amplitudes and phase must be finite");
  if (!finite(drv.omega) || drv.omega <= 0.0) fail("omega must be positive");
  if (!finite(params.dt) || params.dt <= 0.0) fail("dt must be positive");
  if (!finite(params.t_total) || params.t_total <= 0.0) fail("t_total must be positive");
  if (!finite(params.t_transient) || params.t_transient < 0.0 ||
      params.t_transient >= params.t_total)
    fail("t_transient must satisfy 0 <= t_transient < t_total");
  if (params.n_traj < 1) fail("n_traj must be at least 1");
  if (!finite(params.initial_spread.z) || params.initial_spread.z < 0.0 ||
      !finite(params.initial_spread.p) || params.initial_spread.p < 0.0)
    fail("initial_spread widths must be non-negative");

  const double fastest = std::max(vibrational_frequency(lat), drv.omega);
  if (params.dt * fastest > kResolution * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "dt resolution violated: dt * max(Omega_v, omega) = " << params.dt * fastest
       << " exceeds " << kResolution;
    fail(os.str());
  }
  if (params.dt * lat.gamma0 > kResolution * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "jump thinning invalid: dt * gamma0 = " << params.dt * lat.gamma0 << " exceeds "
       << kResolution;
    fail(os.str());
  }
  return params;
}

}  // namespace dd
