#include <doctest.h>

#include <cmath>

#include "dd/analysis.hpp"
#include "dd/ensemble.hpp"

using namespace dd;

namespace {

SimParams small_run(std::size_t n_traj, double alpha0 = 8.0) {
  SimParams p;
  p.lattice = {100.0, 40.0 / 3.0, true};
  p.drive = {alpha0, 0.5, 0.5, 0.87 * vibrational_frequency(p.lattice), kPi / 2};
  p.dt = auto_time_step(p.lattice, p.drive);
  p.t_total = 40.0 * p.drive.period();
  p.t_transient = 8.0 * p.drive.period();
  p.n_traj = n_traj;
  p.seed = 5;
  return p;
}

}  // namespace

TEST_CASE("single trajectory ensemble equals the trajectory") {
  const SimParams p = small_run(1);
  const EnsembleResult res = run_ensemble(p, 1);
  RandomStream rng(p.seed, 0);
  const AtomState init = initial_state(p, rng);
  const TrajectoryRecord rec = run_trajectory(init, p, rng);
  CHECK(res.cm_positions == rec.z);
  CHECK(res.cm_times == rec.times);
  for (double e : res.cm_stderr) CHECK(e == 0.0);
  CHECK(res.total_jumps == rec.jumps);
}

TEST_CASE("results do not depend on worker count") {
  const SimParams p = small_run(40);
  const EnsembleResult a = run_ensemble(p, 1);
  const EnsembleResult b = run_ensemble(p, 8);
  CHECK(a.cm_positions == b.cm_positions);
  CHECK(a.cm_stderr == b.cm_stderr);
  CHECK(a.trajectory_z == b.trajectory_z);
  CHECK(a.total_jumps == b.total_jumps);
}

TEST_CASE("adding a trajectory leaves the existing ones unchanged") {
  const EnsembleResult a = run_ensemble(small_run(20), 2);
  const EnsembleResult b = run_ensemble(small_run(21), 3);
  const std::size_t n = a.n_samples();
  REQUIRE(b.n_samples() == n);
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t k = 0; k < n; ++k) REQUIRE(a.trajectory(i)[k] == b.trajectory(i)[k]);
}

TEST_CASE("CM is the mean of the stored trajectories") {
  const EnsembleResult r = run_ensemble(small_run(30), 2);
  for (std::size_t k = 0; k < r.n_samples(); ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.n_traj; ++i) s += r.trajectory(i)[k];
    CHECK(r.cm_positions[k] == doctest::Approx(s / 30.0).epsilon(1e-12));
  }
}

TEST_CASE("standard error shrinks as 1/sqrt(n)") {
  const EnsembleResult small = run_ensemble(small_run(100), 0);
  SimParams big_p = small_run(400);
  big_p.seed = 6;
  const EnsembleResult big = run_ensemble(big_p, 0);
  double s1 = 0.0, s2 = 0.0;
  const std::size_t n = small.n_samples();
  for (std::size_t k = n / 2; k < n; ++k) s1 += small.cm_stderr[k], s2 += big.cm_stderr[k];
  CHECK(s1 / s2 == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("directed drive gives a linear CM drift") {
  SimParams p = small_run(300);
  p.t_total = 150.0 * p.drive.period();
  p.t_transient = 30.0 * p.drive.period();
  const EnsembleResult r = run_ensemble(p, 0);
  const VelocityFit fit = fit_velocity(r, analysis_window(p));
  CHECK(fit.v > 5.0 * fit.v_err);
  // Residuals of the linear fit stay small next to the distance travelled.
  const double travelled = fit.slope * (fit.window.end - fit.window.begin);
  CHECK(fit.residual_rms < 0.05 * travelled);
}

TEST_CASE("invalid parameters are rejected before running") {
  SimParams p = small_run(10);
  p.dt = -1.0;
  CHECK_THROWS_AS(run_ensemble(p), ValidationError);
}
