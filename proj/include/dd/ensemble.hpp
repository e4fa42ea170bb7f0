#pragma once

#include <cstddef>
#include <vector>

#include "dd/dynamics.hpp"
#include "dd/units.hpp"

namespace dd {

struct EnsembleResult {
  std::vector<double> cm_times;
  std::vector<double> cm_positions;  // ensemble mean of z at each sample
  std::vector<double> cm_stderr;     // standard error of that mean
  std::size_t n_traj = 0;
  // Row-major n_traj x cm_times.size() matrix of per-trajectory samples.
  std::vector<double> trajectory_z;
  std::vector<AtomState> final_states;
  std::size_t total_jumps = 0;

  std::size_t n_samples() const noexcept { return cm_times.size(); }
  const double* trajectory(std::size_t i) const noexcept {
    return trajectory_z.data() + i * n_samples();
  }
};

/// Worker count used when 0 is requested.
unsigned default_workers() noexcept;

/// Runs params.n_traj independent trajectories. Trajectory i draws from stream
/// (params.seed, i), so results do not depend on `workers` or scheduling.
/// Throws ValidationError for invalid params, RuntimeFailure on allocation failure.
EnsembleResult run_ensemble(const SimParams& params, unsigned workers = 0);

}  // namespace dd
