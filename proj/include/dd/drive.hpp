#pragma once

// Biharmonic phase modulation and the inertial force it produces in the
// co-moving (accelerated) frame of the lattice.
//
//   alpha(t) = alpha0 [A cos(wt) + (B/4) cos(2wt - phi)]
//   F(t)     = -(M / 2k) alpha''(t) = (M w^2 alpha0 / 2k) [A cos(wt) + B cos(2wt - phi)]

#include <span>
#include <vector>

#include "dd/units.hpp"

namespace dd {

struct ForceSample {
  double t = 0.0;
  double f = 0.0;
};

/// phi reduced to [0, 2pi) and snapped to a 2^-44 rad grid, so phi and
/// phi + 2pi drive bit-identical dynamics.
double wrapped_phase(double phi) noexcept;

double alpha(double t, const DriveParams& d) noexcept;

double inertial_force(double t, const DriveParams& d, double mass = kMass) noexcept;

/// Offset alpha(t)/2k between the lab frame and the accelerated frame.
double frame_displacement(double t, const DriveParams& d) noexcept;

std::vector<ForceSample> sample_force(const DriveParams& d, std::span<const double> times,
                                      double mass = kMass);

/// Shortest period of the force: 2pi/w, or pi/w when only the 2w harmonic is present.
double fundamental_period(const DriveParams& d) noexcept;

/// F(t + T/2) = -F(t) over the fundamental period T; holds iff one harmonic is absent.
bool shift_symmetry_holds(const DriveParams& d) noexcept;

/// F(-t) = F(t); holds iff sin(phi) = 0 or the 2w harmonic is absent.
bool time_reversal_symmetry_holds(const DriveParams& d) noexcept;

}  // namespace dd
