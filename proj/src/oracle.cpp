#include "dd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "dd/drive.hpp"

namespace dd::oracle {

namespace {

struct PhasePoint {
  double z;
  double p;
};

struct DampedWell {
  double u0;
  double gamma;
  DriveParams drive;

  PhasePoint rhs(double t, PhasePoint y) const {
    const double lattice = -2.0 * kWaveNumber * u0 * std::sin(2.0 * kWaveNumber * y.z);
    return {y.p / kMass, lattice - gamma * y.p + inertial_force(t, drive)};
  }

  PhasePoint rk4(double t, PhasePoint y, double h) const {
    const PhasePoint k1 = rhs(t, y);
    const PhasePoint k2 = rhs(t + h / 2, {y.z + h / 2 * k1.z, y.p + h / 2 * k1.p});
    const PhasePoint k3 = rhs(t + h / 2, {y.z + h / 2 * k2.z, y.p + h / 2 * k2.p});
    const PhasePoint k4 = rhs(t + h, {y.z + h * k3.z, y.p + h * k3.p});
    return {y.z + h / 6 * (k1.z + 2 * k2.z + 2 * k3.z + k4.z),
            y.p + h / 6 * (k1.p + 2 * k2.p + 2 * k3.p + k4.p)};
  }
};

}  // namespace

MixingResult mixing_displacement(double u0, double gamma_damp, const DriveParams& drive,
                                 const MixingOptions& options) {
  if (!(u0 > 0.0) || !(gamma_damp > 0.0))
    throw ValidationError("mixing_displacement: u0 and gamma_damp must be positive");
  if (options.periods < 2 || options.steps_per_period < 4)
    throw ValidationError("mixing_displacement: need >= 2 periods and >= 4 steps per period");

  const DampedWell well{u0, gamma_damp, drive};
  const double period = drive.period();
  const double h = period / static_cast<double>(options.steps_per_period);

  PhasePoint y{options.z0, options.p0};
  PhasePoint previous = y;
  std::size_t n = 0;
  for (std::size_t k = 0; k < options.periods; ++k) {
    previous = y;
    for (std::size_t j = 0; j < options.steps_per_period; ++j, ++n)
      y = well.rk4(static_cast<double>(n) * h, y, h);
  }
  const double distance = std::hypot(y.z - previous.z, y.p - previous.p);
  if (!(distance < options.tolerance)) {
    std::ostringstream os;
    os << "mixing_displacement: no periodic attractor after " << options.periods
       << " periods (stroboscopic distance " << distance << ")";
    throw RuntimeFailure(os.str());
  }

  // Rectangle rule over one full period of a smooth periodic signal.
  double sum = 0.0;
  for (std::size_t j = 0; j < options.steps_per_period; ++j, ++n) {
    sum += y.z;
    y = well.rk4(static_cast<double>(n) * h, y, h);
  }
  const double mean = sum / static_cast<double>(options.steps_per_period);
  // U_- has its minima at z = m * pi / 2k.
  const double bottom = kPi / (2.0 * kWaveNumber) * std::round(mean * 2.0 * kWaveNumber / kPi);
  return {drive.a_amp, drive.b_amp, drive.phi, mean - bottom};
}

std::vector<double> gillespie_jumps(const JumpRate& rate, double rate_max, double t_total,
                                    RandomStream& rng) {
  if (!std::isfinite(rate_max) || rate_max < 0.0)
    throw ValidationError("gillespie_jumps: rate bound must be finite and non-negative");
  std::vector<double> jumps;
  if (rate_max == 0.0) return jumps;
  double t = 0.0;
  while (true) {
    t -= std::log(rng.uniform_open0()) / rate_max;
    if (t > t_total) break;
    const double r = rate(t, jumps.size());
    if (r > rate_max * (1.0 + 1e-12) || r < 0.0) {
      std::ostringstream os;
      os << "gillespie_jumps: rate " << r << " at t=" << t << " outside [0, " << rate_max << "]";
      throw ValidationError(os.str());
    }
    if (rng.uniform() * rate_max < r) jumps.push_back(t);
  }
  return jumps;
}

std::vector<double> gillespie_jumps(const std::function<double(double)>& rate, double rate_max,
                                    double t_total, RandomStream& rng) {
  return gillespie_jumps([&rate](double t, std::size_t) { return rate(t); }, rate_max, t_total,
                         rng);
}

double sample_symmetry(const std::function<double(double)>& f, double period, SymmetryKind kind,
                       std::size_t n) {
  if (n < 2) throw std::invalid_argument("sample_symmetry: grid needs at least 2 points");
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double t = period * static_cast<double>(j) / static_cast<double>(n);
    const double v = kind == SymmetryKind::Shift ? std::abs(f(t + period / 2) + f(t))
                                                 : std::abs(f(t) - f(-t));
    worst = std::max(worst, v);
  }
  return worst;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("loglog_slope: need matching inputs with >= 2 points");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(std::abs(y[i])));
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

double ks_exponential(std::vector<double> samples, double rate) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double cdf = 1.0 - std::exp(-rate * samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - cdf, cdf - static_cast<double>(i) / n});
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_p_value(double statistic, double n_eff) {
  // Stephens' small-sample correction to the Kolmogorov distribution.
  const double sq = std::sqrt(n_eff);
  const double lambda = (sq + 0.12 + 0.11 / sq) * statistic;
  if (lambda < 1e-3) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

}  // namespace dd::oracle
