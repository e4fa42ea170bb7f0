#include "dd/drive.hpp"

#include <cmath>

namespace dd {

namespace {

constexpr double kPhaseGrid = 0x1p44;

double force_scale(const DriveParams& d, double mass) {
  return mass * d.omega * d.omega * d.alpha0 / (2.0 * kWaveNumber);
}

}  // namespace

double wrapped_phase(double phi) noexcept {
  double r = std::fmod(phi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  r = std::round(r * kPhaseGrid) / kPhaseGrid;
  return r >= kTwoPi ? 0.0 : r;
}

double alpha(double t, const DriveParams& d) noexcept {
  const double phi = wrapped_phase(d.phi);
  return d.alpha0 *
         (d.a_amp * std::cos(d.omega * t) + 0.25 * d.b_amp * std::cos(2.0 * d.omega * t - phi));
}

double inertial_force(double t, const DriveParams& d, double mass) noexcept {
  const double phi = wrapped_phase(d.phi);
  return force_scale(d, mass) *
         (d.a_amp * std::cos(d.omega * t) + d.b_amp * std::cos(2.0 * d.omega * t - phi));
}

double frame_displacement(double t, const DriveParams& d) noexcept {
  return alpha(t, d) / (2.0 * kWaveNumber);
}

std::vector<ForceSample> sample_force(const DriveParams& d, std::span<const double> times,
                                      double mass) {
  std::vector<ForceSample> out;
  out.reserve(times.size());
  for (double t : times) out.push_back({t, inertial_force(t, d, mass)});
  return out;
}

double fundamental_period(const DriveParams& d) noexcept {
  return d.a_amp == 0.0 && d.b_amp != 0.0 ? d.period() / 2.0 : d.period();
}

bool shift_symmetry_holds(const DriveParams& d) noexcept {
  return d.a_amp * d.b_amp * d.alpha0 == 0.0;
}

bool time_reversal_symmetry_holds(const DriveParams& d) noexcept {
  if (d.b_amp * d.alpha0 == 0.0) return true;
  return std::abs(std::sin(wrapped_phase(d.phi))) <= 1e-12;
}

}  // namespace dd
