#pragma once

// Recoil-unit conventions and simulation parameter types.
//
// Units: hbar = 1, k = 1, M = 1/2. Lengths are in 1/k, momenta in hbar*k,
// energies in E_r = hbar^2 k^2 / 2M, times in 1/omega_r. With these choices
// dz/dt = 2p, the kinetic energy is p^2, and the recoil velocity
// v_r = hbar*k/M equals 2.

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dd {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline constexpr double kMass = 0.5;
inline constexpr double kWaveNumber = 1.0;
inline constexpr double kRecoilVelocity = 2.0;

/// Thrown when parameters violate a documented constraint.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a run cannot complete (allocation failure, non-convergence).
class RuntimeFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LatticeParams {
  double u0 = 100.0;           // well depth scale, E_r
  double gamma0 = 40.0 / 3.0;  // optical-pumping rate scale, omega_r
  bool recoil_kick = true;
};

struct DriveParams {
  double alpha0 = 0.0;  // modulation depth, rad
  double a_amp = 0.0;
  double b_amp = 0.0;
  double omega = 1.0;   // angular frequency, omega_r
  double phi = 0.0;     // relative phase of the 2*omega harmonic, rad

  double period() const noexcept { return kTwoPi / omega; }
};

struct InitialSpread {
  double z = kPi;  // positions uniform on [0, z)
  double p = 2.0;  // Gaussian momentum width, hbar*k
};

struct SimParams {
  LatticeParams lattice;
  DriveParams drive;
  double dt = 1e-3;
  double t_total = 1.0;
  double t_transient = 0.0;
  std::size_t n_traj = 1000;
  std::uint64_t seed = 1;
  InitialSpread initial_spread;
  // Integrator steps between recorded samples; 0 selects one drive period.
  std::size_t sample_stride = 0;
  // Mirror initial conditions and recoil kicks through z -> -z.
  bool parity = false;
};

/// Omega_v = 2 k sqrt(U0 / M), the small-oscillation frequency at a well bottom.
double vibrational_frequency(const LatticeParams& lattice);

/// Well depth U0 = (2/3)|light shift per beam| for a J=1/2 -> 3/2 lin-perp-lin lattice.
double depth_from_light_shift(double light_shift);

/// Pumping scale gamma0 = (4/9) Gamma'_0, where the per-beam scattering rate
/// Gamma'_0 = |light shift| / |detuning| and `detuning` is Delta in units of Gamma.
double pumping_from_light_shift(double light_shift, double detuning);

/// Largest step that divides the drive period and meets the resolution bounds.
double auto_time_step(const LatticeParams& lattice, const DriveParams& drive);

/// Number of integrator steps per recorded sample.
std::size_t effective_sample_stride(const SimParams& params);

std::size_t step_count(const SimParams& params);

/// Returns `params` unchanged or throws ValidationError naming the violated constraint.
SimParams validate(const SimParams& params);

}  // namespace dd
