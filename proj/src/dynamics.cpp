#include "dd/dynamics.hpp"

#include <cmath>

#include "dd/drive.hpp"

namespace dd {

namespace {

// Step constants hoisted out of the inner loop.
struct StepKernel {
  double dt;
  double half_dt;
  double lattice_amp;  // 2k U0
  double jump_scale;   // gamma0 dt / 2
  bool recoil;
  double kick_sign;

  StepKernel(const SimParams& params)
      : dt(params.dt),
        half_dt(0.5 * params.dt),
        lattice_amp(2.0 * kWaveNumber * params.lattice.u0),
        jump_scale(0.5 * params.lattice.gamma0 * params.dt),
        recoil(params.lattice.recoil_kick),
        kick_sign(params.parity ? -1.0 : 1.0) {}
};

// Advances (z, p, s) by one step. sin_xi / cos_xi hold sin(2kz), cos(2kz) for the
// current z on entry and for the new z on exit.
inline bool advance(double& z, double& p, InternalState& s, double& sin_xi, double& cos_xi,
                    double f_begin, double f_end, const StepKernel& k, RandomStream& rng) {
  const double sg = sign_of(s);
  p += k.half_dt * (sg * k.lattice_amp * sin_xi + f_begin);
  z += (p / kMass) * k.dt;
  const double xi = 2.0 * kWaveNumber * z;
  sin_xi = std::sin(xi);
  cos_xi = std::cos(xi);
  p += k.half_dt * (sg * k.lattice_amp * sin_xi + f_end);

  const double jump_probability = k.jump_scale * (1.0 + sg * cos_xi);
  if (rng.uniform() >= jump_probability) return false;
  s = toggle(s);
  if (k.recoil) {
    const double q1 = 2.0 * rng.uniform() - 1.0;
    const double q2 = 2.0 * rng.uniform() - 1.0;
    p += k.kick_sign * (q1 + q2);
  }
  return true;
}

}  // namespace

double kinetic_energy(const AtomState& a) noexcept { return a.p * a.p / (2.0 * kMass); }

double mechanical_energy(const AtomState& a, const LatticeParams& lattice) noexcept {
  return kinetic_energy(a) + potential(2.0 * kWaveNumber * a.z, a.s, lattice);
}

AtomState step(const AtomState& state, const SimParams& params, RandomStream& rng,
               bool* jumped) {
  const StepKernel kernel(params);
  AtomState next = state;
  const double xi = 2.0 * kWaveNumber * state.z;
  double sin_xi = std::sin(xi);
  double cos_xi = std::cos(xi);
  const double f_begin = inertial_force(state.t, params.drive);
  const double f_end = inertial_force(state.t + params.dt, params.drive);
  const bool j = advance(next.z, next.p, next.s, sin_xi, cos_xi, f_begin, f_end, kernel, rng);
  next.t = state.t + params.dt;
  if (jumped) *jumped = j;
  return next;
}

AtomState initial_state(const SimParams& params, RandomStream& rng) {
  const double mirror = params.parity ? -1.0 : 1.0;
  AtomState a;
  a.z = mirror * params.initial_spread.z * rng.uniform();
  a.p = mirror * params.initial_spread.p * rng.normal();
  a.s = rng.uniform() < 0.5 ? InternalState::Plus : InternalState::Minus;
  a.t = 0.0;
  return a;
}

std::vector<double> drive_force_table(const SimParams& params) {
  const std::size_t n = step_count(params);
  std::vector<double> table(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    table[i] = inertial_force(static_cast<double>(i) * params.dt, params.drive);
  return table;
}

TrajectoryRecord run_trajectory(const AtomState& init, const SimParams& params,
                                RandomStream& rng) {
  const auto table = drive_force_table(params);
  return run_trajectory(init, params, rng, table);
}

TrajectoryRecord run_trajectory(const AtomState& init, const SimParams& params,
                                RandomStream& rng, std::span<const double> force_table) {
  const std::size_t n_steps = step_count(params);
  const std::size_t stride = effective_sample_stride(params);
  if (force_table.size() < n_steps + 1)
    throw std::invalid_argument("run_trajectory: force table shorter than step count");

  TrajectoryRecord rec;
  rec.times.reserve(n_steps / stride + 1);
  rec.z.reserve(n_steps / stride + 1);
  rec.times.push_back(0.0);
  rec.z.push_back(init.z);

  const StepKernel kernel(params);
  double z = init.z;
  double p = init.p;
  InternalState s = init.s;
  double sin_xi = std::sin(2.0 * kWaveNumber * z);
  double cos_xi = std::cos(2.0 * kWaveNumber * z);
  std::size_t jumps = 0;

  for (std::size_t n = 0; n < n_steps; ++n) {
    if (advance(z, p, s, sin_xi, cos_xi, force_table[n], force_table[n + 1], kernel, rng))
      ++jumps;
    if ((n + 1) % stride == 0) {
      rec.times.push_back(static_cast<double>(n + 1) * params.dt);
      rec.z.push_back(z);
    }
  }

  rec.jumps = jumps;
  rec.final_state = {z, p, s, static_cast<double>(n_steps) * params.dt};
  return rec;
}

}  // namespace dd
