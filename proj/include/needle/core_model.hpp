#pragma once

// Material and geometry inputs of the needle plus every static quantity
// derived from them (spin count, inertia, gyroscopic thresholds).

#include <string>
#include <vector>

#include <json.hpp>

#include "needle/constants.hpp"

namespace needle {

struct Material {
    std::string name;
    double density;         // g/cm^3
    double atomic_mass;     // g
    double g_factor;
    double gilbert_alpha;
    double fmr_frequency;   // rad/s
    double resistivity;     // s (Gaussian)
    double spins_per_atom;

    void validate() const;

    // Bulk cobalt with the values the reference needle is built on:
    // alpha = 0.01, omega0 = 1e11 rad/s, rho = 1e-7 Ohm cm, g = 1.
    static Material cobalt(const PhysicalConstants& k = PhysicalConstants::cgs());

    // Keys: name, density_g_cm3, atomic_mass_amu, g_factor, gilbert_alpha,
    // fmr_frequency_rad_s, resistivity_ohm_cm, spins_per_atom.
    static Material from_json(const nlohmann::json& j,
                              const PhysicalConstants& k = PhysicalConstants::cgs());
    nlohmann::json to_json(const PhysicalConstants& k = PhysicalConstants::cgs()) const;

    friend bool operator==(const Material&, const Material&) = default;
};

struct NeedleGeometry {
    double length;  // cm
    double radius;  // cm

    double aspect_ratio() const { return length / radius; }
    void validate() const;

    // 10 um x 1 um, the reference needle.
    static constexpr NeedleGeometry reference() { return {10e-4, 1e-4}; }

    friend bool operator==(const NeedleGeometry&, const NeedleGeometry&) = default;
};

struct NeedleDerived {
    NeedleGeometry geometry;
    double g_factor;
    double volume;             // cm^3
    double mass;               // g
    double moment_of_inertia;  // g cm^2, thin rod about a transverse axis
    double spin_count;         // N
    double total_spin;         // erg s, N hbar
    double magnetic_moment;    // erg/G, N g mu_B
    double gyromagnetic_ratio; // rad/(s G), g mu_B / hbar
    double omega_star;         // rad/s
    double b_star;             // G
    double gamma_g;            // 1/s, alpha omega0
    std::vector<std::string> warnings;
};

struct Thresholds {
    double omega_star;  // rad/s
    double b_star;      // G
};

// Aspect ratios outside this band may not stay single-domain.
inline constexpr double kSingleDomainAspectMin = 5.0;
inline constexpr double kSingleDomainAspectMax = 50.0;

NeedleDerived derive_needle(const NeedleGeometry& geometry, const Material& material,
                            const PhysicalConstants& k = PhysicalConstants::cgs());

Thresholds critical_thresholds(const NeedleDerived& derived,
                               const PhysicalConstants& k = PhysicalConstants::cgs());

// Maxwell mean speed sqrt(8 k T / (pi m)).
double mean_thermal_speed(double temperature, double gas_mass,
                          const PhysicalConstants& k = PhysicalConstants::cgs());

// He-4 atomic mass in grams.
double helium_mass(const PhysicalConstants& k = PhysicalConstants::cgs());

}  // namespace needle
