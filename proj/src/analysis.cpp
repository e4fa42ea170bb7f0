#include "dd/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dd/rng.hpp"

namespace dd {

namespace {

constexpr std::size_t kMinFitSamples = 10;

struct WindowRange {
  std::size_t first = 0;
  std::size_t last = 0;  // one past
};

WindowRange window_range(std::span<const double> times, TimeWindow window) {
  // Slack so that sample times computed as n*dt land inside a window given in the same units.
  const double slack = 1e-9 * std::max(std::abs(window.begin), std::abs(window.end));
  WindowRange r{times.size(), 0};
  for (std::size_t j = 0; j < times.size(); ++j) {
    if (times[j] >= window.begin - slack && times[j] <= window.end + slack) {
      r.first = std::min(r.first, j);
      r.last = j + 1;
    }
  }
  if (r.last <= r.first || r.last - r.first < kMinFitSamples)
    throw std::invalid_argument("fit window too short: need at least 10 samples in [" +
                                std::to_string(window.begin) + ", " +
                                std::to_string(window.end) + "]");
  return r;
}

// OLS slope weights w_j such that slope = sum_j w_j z_j.
struct OlsDesign {
  std::vector<double> weights;
  double t_mean = 0.0;
  double sxx = 0.0;
};

OlsDesign ols_design(std::span<const double> t) {
  OlsDesign d;
  const double n = static_cast<double>(t.size());
  d.t_mean = std::accumulate(t.begin(), t.end(), 0.0) / n;
  for (double x : t) d.sxx += (x - d.t_mean) * (x - d.t_mean);
  d.weights.reserve(t.size());
  for (double x : t) d.weights.push_back((x - d.t_mean) / d.sxx);
  return d;
}

VelocityFit ols_fit(std::span<const double> t, std::span<const double> z, TimeWindow window) {
  const OlsDesign design = ols_design(t);
  const std::size_t n = t.size();
  const double z_mean = std::accumulate(z.begin(), z.end(), 0.0) / static_cast<double>(n);
  double slope = 0.0;
  for (std::size_t j = 0; j < n; ++j) slope += design.weights[j] * z[j];
  const double intercept = z_mean - slope * design.t_mean;

  double ssr = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double r = z[j] - (intercept + slope * t[j]);
    ssr += r * r;
  }
  const double slope_err = std::sqrt(ssr / static_cast<double>(n - 2) / design.sxx);

  VelocityFit fit;
  fit.slope = slope;
  fit.v = slope / kRecoilVelocity;
  fit.v_err_ols = slope_err / kRecoilVelocity;
  fit.v_err = fit.v_err_ols;
  fit.intercept = intercept;
  fit.window = window;
  fit.n_samples = n;
  fit.residual_rms = std::sqrt(ssr / static_cast<double>(n));
  return fit;
}

}  // namespace

TimeWindow analysis_window(const SimParams& params) {
  return {params.t_transient, static_cast<double>(step_count(params)) * params.dt};
}

VelocityFit fit_velocity(std::span<const double> times, std::span<const double> z,
                         TimeWindow window) {
  if (times.size() != z.size())
    throw std::invalid_argument("fit_velocity: times and positions differ in length");
  const WindowRange r = window_range(times, window);
  return ols_fit(times.subspan(r.first, r.last - r.first), z.subspan(r.first, r.last - r.first),
                 window);
}

VelocityFit fit_velocity(const EnsembleResult& res, TimeWindow window) {
  const std::span<const double> times(res.cm_times);
  const WindowRange r = window_range(times, window);
  const std::size_t len = r.last - r.first;
  VelocityFit fit = ols_fit(times.subspan(r.first, len),
                            std::span<const double>(res.cm_positions).subspan(r.first, len),
                            window);

  const std::size_t n_traj = res.n_traj;
  if (n_traj >= 2 && res.trajectory_z.size() == n_traj * res.n_samples()) {
    const OlsDesign design = ols_design(times.subspan(r.first, len));
    std::vector<double> slopes(n_traj, 0.0);
    for (std::size_t i = 0; i < n_traj; ++i) {
      const double* row = res.trajectory(i) + r.first;
      for (std::size_t j = 0; j < len; ++j) slopes[i] += design.weights[j] * row[j];
    }
    const double mean = std::accumulate(slopes.begin(), slopes.end(), 0.0) /
                        static_cast<double>(n_traj);
    double ss = 0.0;
    for (double s : slopes) ss += (s - mean) * (s - mean);
    const double stderr_slope =
        std::sqrt(ss / static_cast<double>(n_traj - 1) / static_cast<double>(n_traj));
    fit.v_err = stderr_slope / kRecoilVelocity;
  }
  return fit;
}

double sigma_v(std::span<const double> vs) {
  if (vs.size() < 2) throw std::invalid_argument("sigma_v requires at least 2 velocities");
  const double n = static_cast<double>(vs.size());
  const double mean = std::accumulate(vs.begin(), vs.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : vs) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / n);
}

namespace {

template <class Configure>
SweepResult run_sweep(const SimParams& base, std::string name, std::span<const double> values,
                      const SweepOptions& options, Configure configure) {
  validate(base);
  if (values.empty()) throw std::invalid_argument(name + " sweep needs at least one value");

  SweepResult out;
  out.parameter = std::move(name);
  out.values.assign(values.begin(), values.end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    SimParams point = base;
    configure(point, values[i]);
    point.seed = derive_seed(base.seed, i);
    const EnsembleResult res = run_ensemble(point, options.workers);
    const VelocityFit fit = fit_velocity(res, analysis_window(point));
    out.fits.push_back(fit);
    out.v.push_back(fit.v);
    out.v_err.push_back(fit.v_err);
  }
  out.sigma_v = out.v.size() >= 2 ? sigma_v(out.v) : 0.0;
  return out;
}

}  // namespace

SweepResult phase_sweep(const SimParams& base, std::span<const double> phis,
                        const SweepOptions& options) {
  return run_sweep(base, "phi", phis, options,
                   [](SimParams& p, double phi) { p.drive.phi = phi; });
}

SweepResult b_sweep(const SimParams& base, std::span<const double> bs, double phi,
                    const SweepOptions& options) {
  for (double b : bs)
    if (!(b >= 0.0 && b <= 1.0))
      throw ValidationError("b_sweep: B=" + std::to_string(b) + " outside [0, 1]");
  return run_sweep(base, "b", bs, options, [phi](SimParams& p, double b) {
    p.drive.b_amp = b;
    p.drive.a_amp = 1.0 - b;
    p.drive.phi = phi;
  });
}

}  // namespace dd
