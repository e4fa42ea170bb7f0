#pragma once

// Two-state lin-perp-lin bipotential in the phase coordinate xi = 2kz.
//
// U_+(xi) = U0 (-2 + cos xi), U_-(xi) = U0 (-2 - cos xi). The Plus well bottom
// sits at xi = pi, the Minus well bottom at xi = 0. Pumping out of a state is
// fastest on that state's potential hill and vanishes at its well bottom.

#include <cmath>

#include "dd/units.hpp"

namespace dd {

enum class InternalState : unsigned char { Plus, Minus };

constexpr InternalState toggle(InternalState s) noexcept {
  return s == InternalState::Plus ? InternalState::Minus : InternalState::Plus;
}

/// +1 for Plus, -1 for Minus.
constexpr double sign_of(InternalState s) noexcept {
  return s == InternalState::Plus ? 1.0 : -1.0;
}

inline double potential(double xi, InternalState s, const LatticeParams& lattice) noexcept {
  return lattice.u0 * (-2.0 + sign_of(s) * std::cos(xi));
}

/// -dU_s/dz = -2k dU_s/dxi.
inline double lattice_force(double xi, InternalState s, const LatticeParams& lattice) noexcept {
  return 2.0 * kWaveNumber * sign_of(s) * lattice.u0 * std::sin(xi);
}

/// Rate of leaving state `s`: gamma0 cos^2(xi/2) for Plus, gamma0 sin^2(xi/2) for Minus.
inline double pumping_rate(double xi, InternalState s, const LatticeParams& lattice) noexcept {
  return 0.5 * lattice.gamma0 * (1.0 + sign_of(s) * std::cos(xi));
}

}  // namespace dd
