#include "dd/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <new>
#include <sstream>
#include <thread>

#include "dd/rng.hpp"

namespace dd {

namespace {

[[noreturn]] void out_of_memory(const SimParams& params) {
  std::ostringstream os;
  os << "insufficient memory for ensemble with n_traj=" << params.n_traj
     << " t_total=" << params.t_total;
  throw RuntimeFailure(os.str());
}

}  // namespace

unsigned default_workers() noexcept { return std::max(1u, std::thread::hardware_concurrency()); }

EnsembleResult run_ensemble(const SimParams& raw_params, unsigned workers) {
  const SimParams params = validate(raw_params);
  const std::size_t n_traj = params.n_traj;
  const std::size_t n_steps = step_count(params);
  const std::size_t n_samples = n_steps / effective_sample_stride(params) + 1;

  EnsembleResult res;
  std::vector<double> force_table;
  try {
    force_table = drive_force_table(params);
    res.trajectory_z.resize(n_traj * n_samples);
    res.final_states.resize(n_traj);
    res.cm_positions.assign(n_samples, 0.0);
    res.cm_stderr.assign(n_samples, 0.0);
  } catch (const std::bad_alloc&) {
    out_of_memory(params);
  }
  res.n_traj = n_traj;
  std::vector<std::size_t> jumps(n_traj, 0);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    try {
      for (std::size_t i = next.fetch_add(1); i < n_traj; i = next.fetch_add(1)) {
        RandomStream rng(params.seed, i);
        const AtomState init = initial_state(params, rng);
        TrajectoryRecord rec = run_trajectory(init, params, rng, force_table);
        std::copy(rec.z.begin(), rec.z.end(), res.trajectory_z.begin() + i * n_samples);
        res.final_states[i] = rec.final_state;
        jumps[i] = rec.jumps;
        if (i == 0) res.cm_times = std::move(rec.times);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(n_traj);
    }
  };

  const unsigned n_workers =
      static_cast<unsigned>(std::min<std::size_t>(workers == 0 ? default_workers() : workers,
                                                  n_traj));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }
  if (failure) {
    try {
      std::rethrow_exception(failure);
    } catch (const std::bad_alloc&) {
      out_of_memory(params);
    }
  }

  // Fixed-order reduction over trajectory index.
  for (std::size_t i = 0; i < n_traj; ++i) {
    const double* row = res.trajectory(i);
    for (std::size_t j = 0; j < n_samples; ++j) res.cm_positions[j] += row[j];
    res.total_jumps += jumps[i];
  }
  const double inv_n = 1.0 / static_cast<double>(n_traj);
  for (double& m : res.cm_positions) m *= inv_n;
  if (n_traj > 1) {
    for (std::size_t i = 0; i < n_traj; ++i) {
      const double* row = res.trajectory(i);
      for (std::size_t j = 0; j < n_samples; ++j) {
        const double d = row[j] - res.cm_positions[j];
        res.cm_stderr[j] += d * d;
      }
    }
    const double norm = 1.0 / (static_cast<double>(n_traj - 1) * static_cast<double>(n_traj));
    for (double& e : res.cm_stderr) e = std::sqrt(e * norm);
  }
  return res;
}

}  // namespace dd
