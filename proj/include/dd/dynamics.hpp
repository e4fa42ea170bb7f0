#pragma once

// Single-trajectory jump-diffusion integrator in the accelerated frame.
//
// Each step is a velocity-Verlet update (half kick, drift, half kick) under
// the lattice force of the current sublevel plus the inertial drive force,
// followed by a Bernoulli pumping draw with probability rate * dt at the new
// position. A pumping event toggles the sublevel and, when recoil is on,
// adds two independent uniform kicks on [-1, 1] (units hbar*k).

#include <cstddef>
#include <span>
#include <vector>

#include "dd/lattice.hpp"
#include "dd/rng.hpp"
#include "dd/units.hpp"

namespace dd {

struct AtomState {
  double z = 0.0;  // position, 1/k (accelerated frame)
  double p = 0.0;  // momentum, hbar*k
  InternalState s = InternalState::Plus;
  double t = 0.0;  // time, 1/omega_r
};

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<double> z;
  std::size_t jumps = 0;
  AtomState final_state;
};

double kinetic_energy(const AtomState& a) noexcept;

/// Kinetic plus lattice potential energy; excludes the drive.
double mechanical_energy(const AtomState& a, const LatticeParams& lattice) noexcept;

/// Advances one dt. Returns the new state; `jumped` (if non-null) reports a pumping event.
AtomState step(const AtomState& state, const SimParams& params, RandomStream& rng,
               bool* jumped = nullptr);

/// Initial state drawn from the configured spread; mirrored when params.parity is set.
AtomState initial_state(const SimParams& params, RandomStream& rng);

/// Inertial force at t_n = n * dt for n = 0 .. step_count(params).
std::vector<double> drive_force_table(const SimParams& params);

/// Runs to t_total, recording z every effective_sample_stride(params) steps.
/// Time restarts at t_0 = 0 and advances as t_n = n * dt.
TrajectoryRecord run_trajectory(const AtomState& init, const SimParams& params,
                                RandomStream& rng);

/// Same, reusing a precomputed drive_force_table(params).
TrajectoryRecord run_trajectory(const AtomState& init, const SimParams& params,
                                RandomStream& rng, std::span<const double> force_table);

}  // namespace dd
