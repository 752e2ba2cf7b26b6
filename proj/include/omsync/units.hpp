#pragma once

#include <cmath>

#include "omsync/errors.hpp"

namespace omsync {

// Canonical unit system: time in ns, every rate in rad/ns, mechanical
// displacement dimensionless (u = x / x_zpf), cavity amplitudes dimensionless.
// Experimental rates are quoted as ordinary frequencies f ("X/2pi = f"), so the
// conversion to an angular rate is omega = 2*pi*f; with f in Hz and time in ns
// there is an additional 1e-9.

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;
inline constexpr double hbar = 1.054571817e-34; // J*s (CODATA)

// Ordinary frequency in Hz -> angular rate in rad/ns.
inline double angular_rate_from_hz(double f_hz) { return two_pi * f_hz * 1e-9; }

// Inverse of angular_rate_from_hz, for serialization round-trips.
inline double hz_from_angular_rate(double rate) { return rate / (two_pi * 1e-9); }

// Convenience for the GHz-quoted figure parameters.
inline double angular_rate_from_ghz(double f_ghz) { return two_pi * f_ghz; }

// Zero-point positional spread sqrt(hbar / (2 m Omega)) in meters.
// mass in kg, omega in rad/s. Only used to connect quoted effective masses to
// the dimensionless displacement; the dynamics never needs it.
inline double derive_zpf(double mass_kg, double omega_rad_s) {
    if (!(mass_kg > 0.0)) fail(errc::non_positive_input, "mass must be > 0");
    if (!(omega_rad_s > 0.0)) fail(errc::non_positive_input, "omega must be > 0");
    return std::sqrt(hbar / (2.0 * mass_kg * omega_rad_s));
}

} // namespace omsync
