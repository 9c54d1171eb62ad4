#pragma once

// SQUID pick-up loop readout of the precessing needle.

#include <cmath>

#include "needle/constants.hpp"

namespace needle {

// Angle at which the loop rim is seen from the dipole for maximum flux
// capture: cos^2 = 1/3.
inline double magic_angle() { return std::acos(1.0 / std::sqrt(3.0)); }

// Order-unity geometry factor between the on-axis flux and the measured
// S_y projection.
inline constexpr double kPickupCoupling = 1.0;

struct PickupLoop {
    double radius;            // cm
    double standoff;          // cm, needle tip to loop plane
    double flux_sensitivity;  // G cm^2 / sqrt(Hz)

    void validate() const;

    // Loop rim at distance `needle_length` from the needle centre along the
    // magic angle: radius l sin(theta_m), centre-to-plane distance
    // l cos(theta_m). This is the flux optimum for that distance.
    static PickupLoop for_needle(double needle_length, double flux_sensitivity = 1e-13);

    friend bool operator==(const PickupLoop&, const PickupLoop&) = default;
};

// Distance from the dipole (needle centre) to the loop plane.
inline double dipole_distance(const PickupLoop& loop, double needle_length)
{
    return loop.standoff + 0.5 * needle_length;
}

// On-axis point-dipole flux 2 pi m a^2 / (a^2 + d^2)^{3/2}.
double dipole_flux(double moment, const PickupLoop& loop, double needle_length);

// delta_Phi / Phi in rad/sqrt(Hz).
double angle_resolution(const PickupLoop& loop, double flux_amplitude);

// (hbar / g mu_B) delta_phi t^{-3/2}.
double detection_limit(double delta_phi, double g_factor, double t,
                       const PhysicalConstants& k = PhysicalConstants::cgs());

}  // namespace needle
