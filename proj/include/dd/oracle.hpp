#pragma once

// Independent reference computations used to check the simulator:
// a deterministic harmonic-mixing integrator, an exact thinning sampler for
// inhomogeneous jump processes, grid sampling of drive symmetries, and a few
// distribution tests.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "dd/rng.hpp"
#include "dd/units.hpp"

namespace dd::oracle {

struct MixingResult {
  double a_amp = 0.0;
  double b_amp = 0.0;
  double phi = 0.0;
  double dz = 0.0;  // period-averaged z minus the well bottom
};

struct MixingOptions {
  std::size_t periods = 200;
  std::size_t steps_per_period = 2000;
  double tolerance = 1e-9;  // stroboscopic distance for convergence
  double z0 = 0.0;
  double p0 = 0.0;
};

/// Damped motion in U_-(2kz) under the inertial drive force, integrated (RK4)
/// to its periodic attractor. Throws RuntimeFailure when the stroboscopic map
/// has not converged after `periods` drive periods.
MixingResult mixing_displacement(double u0, double gamma_damp, const DriveParams& drive,
                                 const MixingOptions& options = {});

/// Rate as a function of time and the number of jumps so far.
using JumpRate = std::function<double(double t, std::size_t jumps)>;

/// Exact thinning: candidates from a Poisson process at rate_max, each kept
/// with probability rate(t, n)/rate_max. Throws ValidationError when rate_max
/// is not finite or a rate exceeds it.
std::vector<double> gillespie_jumps(const JumpRate& rate, double rate_max, double t_total,
                                    RandomStream& rng);

std::vector<double> gillespie_jumps(const std::function<double(double)>& rate, double rate_max,
                                    double t_total, RandomStream& rng);

enum class SymmetryKind { Shift, Reversal };

/// max over t_j = j T / n of |F(t + T/2) + F(t)| (Shift) or |F(t) - F(-t)| (Reversal).
double sample_symmetry(const std::function<double(double)>& f, double period, SymmetryKind kind,
                       std::size_t n);

/// Least-squares slope of log|y| against log x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Kolmogorov-Smirnov statistic of `samples` against Exponential(rate).
double ks_exponential(std::vector<double> samples, double rate);

/// Two-sample Kolmogorov-Smirnov statistic.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Asymptotic p-value of the KS statistic for effective sample size n_eff.
double ks_p_value(double statistic, double n_eff);

}  // namespace dd::oracle
