#include "needle/pickup.hpp"

#include <cmath>
#include <numbers>

#include "needle/errors.hpp"

namespace needle {

void PickupLoop::validate() const
{
    require(radius > 0, "pick-up loop radius must be positive");
    require(standoff > 0, "pick-up loop standoff must be positive");
    require(flux_sensitivity >= 0, "flux sensitivity must be non-negative");
}

PickupLoop PickupLoop::for_needle(double needle_length, double flux_sensitivity)
{
    require(needle_length > 0, "needle length must be positive");
    const double theta = magic_angle();
    return {needle_length * std::sin(theta),
            needle_length * (std::cos(theta) - 0.5),
            flux_sensitivity};
}

double dipole_flux(double moment, const PickupLoop& loop, double needle_length)
{
    require(moment >= 0, "magnetic moment must be non-negative");
    require(needle_length > 0, "needle length must be positive");
    const double a2 = loop.radius * loop.radius;
    const double d = dipole_distance(loop, needle_length);
    return kPickupCoupling * 2.0 * std::numbers::pi * moment * a2 / std::pow(a2 + d * d, 1.5);
}

double angle_resolution(const PickupLoop& loop, double flux_amplitude)
{
    require(flux_amplitude > 0, "flux amplitude must be positive");
    return loop.flux_sensitivity / flux_amplitude;
}

double detection_limit(double delta_phi, double g_factor, double t, const PhysicalConstants& k)
{
    require(t > 0, "measurement time must be positive");
    return k.hbar / (g_factor * k.mu_B) * delta_phi * std::pow(t, -1.5);
}

}  // namespace needle
