#pragma once

// Drift-velocity extraction and parameter sweeps over the drive.

#include <span>
#include <string>
#include <vector>

#include "dd/ensemble.hpp"
#include "dd/units.hpp"

namespace dd {

struct TimeWindow {
  double begin = 0.0;
  double end = 0.0;
};

struct VelocityFit {
  double slope = 0.0;      // dz/dt in 1/k per 1/omega_r
  double v = 0.0;          // slope in units of v_r
  double v_err = 0.0;      // 1 sigma on v
  double v_err_ols = 0.0;  // residual-based 1 sigma on v, assuming independent residuals
  double intercept = 0.0;
  TimeWindow window;
  std::size_t n_samples = 0;
  double residual_rms = 0.0;
};

/// [t_transient, t_total].
TimeWindow analysis_window(const SimParams& params);

/// Ordinary least squares of z against t over the samples inside `window`.
/// Throws std::invalid_argument when fewer than 10 samples fall inside.
VelocityFit fit_velocity(std::span<const double> times, std::span<const double> z,
                         TimeWindow window);

/// Fits the CM series. When per-trajectory samples are present (n_traj >= 2),
/// v_err is the standard error of the per-trajectory OLS slopes, whose mean is
/// the CM slope; this stays valid for the strongly autocorrelated CM walk.
/// Otherwise v_err = v_err_ols.
VelocityFit fit_velocity(const EnsembleResult& res, TimeWindow window);

/// Root-mean-square deviation of `vs` from their mean. Requires at least 2 values.
double sigma_v(std::span<const double> vs);

struct SweepResult {
  std::string parameter;  // "phi" or "b"
  std::vector<double> values;
  std::vector<VelocityFit> fits;
  std::vector<double> v;
  std::vector<double> v_err;
  double sigma_v = 0.0;
};

struct SweepOptions {
  unsigned workers = 0;
};

/// One ensemble per phase; point i uses seed derive_seed(base.seed, i).
SweepResult phase_sweep(const SimParams& base, std::span<const double> phis,
                        const SweepOptions& options = {});

/// One ensemble per B with A = 1 - B at fixed phase; B outside [0, 1] is rejected.
SweepResult b_sweep(const SimParams& base, std::span<const double> bs, double phi = kPi / 2,
                    const SweepOptions& options = {});

}  // namespace dd
