#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "dd/analysis.hpp"
#include "dd/rng.hpp"

using namespace dd;

namespace {

SimParams sweep_base(double alpha0) {
  SimParams p;
  p.lattice = {100.0, 40.0 / 3.0, true};
  p.drive = {alpha0, 0.5, 0.5, 0.87 * vibrational_frequency(p.lattice), 0.0};
  p.dt = auto_time_step(p.lattice, p.drive);
  p.t_total = 60.0 * p.drive.period();
  p.t_transient = 12.0 * p.drive.period();
  p.n_traj = 100;
  p.seed = 17;
  return p;
}

}  // namespace

TEST_CASE("exact line") {
  std::vector<double> t, z;
  for (int j = 0; j <= 100; ++j) {
    t.push_back(0.1 * j);
    z.push_back(3.0 * t.back() + 1.0);
  }
  const VelocityFit fit = fit_velocity(t, z, {0.0, 10.0});
  CHECK(fit.slope == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit.v == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.v_err < 1e-12);
  CHECK(fit.n_samples == 101);
}

TEST_CASE("window selects samples and rejects short fits") {
  std::vector<double> t, z;
  for (int j = 0; j < 100; ++j) {
    t.push_back(j);
    z.push_back(j < 50 ? 0.0 : 2.0 * j);
  }
  const VelocityFit late = fit_velocity(t, z, {50.0, 99.0});
  CHECK(late.slope == doctest::Approx(2.0));
  CHECK(late.n_samples == 50);
  CHECK_THROWS_AS(fit_velocity(t, z, {10.0, 18.0}), std::invalid_argument);
  CHECK_THROWS_WITH_AS(fit_velocity(t, z, {200.0, 300.0}),
                       doctest::Contains("fit window too short"), std::invalid_argument);
}

TEST_CASE("OLS error bars cover the true slope for independent noise") {
  RandomStream rng(31, 0);
  int covered = 0;
  const int reps = 1000;
  for (int r = 0; r < reps; ++r) {
    std::vector<double> t, z;
    for (int j = 0; j < 60; ++j) {
      t.push_back(0.5 * j);
      z.push_back(-2.0 + 0.8 * t.back() + 0.7 * rng.normal());
    }
    const VelocityFit fit = fit_velocity(t, z, {0.0, 30.0});
    covered += std::abs(fit.v - 0.4) <= 3.0 * fit.v_err;
  }
  CHECK(covered >= 990);
}

TEST_CASE("sigma_v") {
  const std::vector<double> same(7, 2.5);
  CHECK(sigma_v(same) == 0.0);
  const std::vector<double> pm{1.3, -1.3, 1.3, -1.3};
  CHECK(sigma_v(pm) == doctest::Approx(1.3));

  std::vector<double> sine;
  for (int i = 0; i < 16; ++i) sine.push_back(2.0 * std::sin(kTwoPi * i / 16.0));
  CHECK(sigma_v(sine) == doctest::Approx(2.0 / std::sqrt(2.0)).epsilon(1e-12));

  std::vector<double> perm = sine;
  std::reverse(perm.begin(), perm.end());
  std::rotate(perm.begin(), perm.begin() + 5, perm.end());
  CHECK(sigma_v(perm) == doctest::Approx(sigma_v(sine)).epsilon(1e-14));

  std::vector<double> scaled;
  for (double v : sine) scaled.push_back(-3.0 * v + 10.0);
  CHECK(sigma_v(scaled) == doctest::Approx(3.0 * sigma_v(sine)).epsilon(1e-12));

  const std::vector<double> one{1.0};
  CHECK_THROWS_AS(sigma_v(one), std::invalid_argument);
}

TEST_CASE("undriven ensemble shows no current") {
  SimParams p = sweep_base(0.0);
  p.n_traj = 200;
  const EnsembleResult res = run_ensemble(p);
  const VelocityFit fit = fit_velocity(res, analysis_window(p));
  CHECK(std::abs(fit.v) < 3.0 * fit.v_err);
  CHECK(fit.v_err > 0.0);
}

TEST_CASE("per-trajectory error agrees with a bootstrap over trajectories") {
  SimParams p = sweep_base(8.0);
  p.drive.phi = kPi / 2;
  const EnsembleResult res = run_ensemble(p);
  const TimeWindow w = analysis_window(p);
  const VelocityFit fit = fit_velocity(res, w);

  RandomStream rng(99, 0);
  const std::size_t n = res.n_traj, m = res.n_samples();
  std::vector<double> boot;
  for (int b = 0; b < 200; ++b) {
    std::vector<double> cm(m, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto pick = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
      for (std::size_t k = 0; k < m; ++k) cm[k] += res.trajectory(pick)[k] / static_cast<double>(n);
    }
    boot.push_back(fit_velocity(res.cm_times, cm, w).v);
  }
  const double mean = std::accumulate(boot.begin(), boot.end(), 0.0) / boot.size();
  double ss = 0.0;
  for (double v : boot) ss += (v - mean) * (v - mean);
  const double boot_err = std::sqrt(ss / (boot.size() - 1));
  CHECK(fit.v_err == doctest::Approx(boot_err).epsilon(0.25));
  // The residual-based estimate ignores the random-walk correlation and is far too small.
  CHECK(fit.v_err_ols < 0.5 * fit.v_err);
}

TEST_CASE("phase sweep: phi and phi + 2pi give identical ensembles") {
  SimParams p = sweep_base(8.0);
  p.n_traj = 20;
  p.t_total = 20.0 * p.drive.period();
  p.t_transient = 4.0 * p.drive.period();
  const std::vector<double> phis{0.3, 2.0};
  const std::vector<double> shifted{0.3 + kTwoPi, 2.0 + kTwoPi};
  const SweepResult a = phase_sweep(p, phis);
  const SweepResult b = phase_sweep(p, shifted);
  CHECK(a.v == b.v);
  CHECK(a.v_err == b.v_err);
  CHECK(a.parameter == "phi");
  CHECK(a.sigma_v == sigma_v(a.v));
}

TEST_CASE("B sweep rejects amplitudes outside [0, 1]") {
  const SimParams p = sweep_base(8.0);
  const std::vector<double> bad{0.0, 1.2};
  CHECK_THROWS_AS(b_sweep(p, bad), ValidationError);
  const std::vector<double> neg{-0.1};
  CHECK_THROWS_AS(b_sweep(p, neg), ValidationError);
}

TEST_CASE("analysis window") {
  const SimParams p = sweep_base(1.0);
  const TimeWindow w = analysis_window(p);
  CHECK(w.begin == p.t_transient);
  CHECK(w.end == doctest::Approx(p.t_total).epsilon(1e-12));
}
