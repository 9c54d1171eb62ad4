#pragma once

// Closed-form noise and limit estimates. Every function returns a
// non-negative value and vanishes when its driving parameter (temperature,
// gas density, emissivity, flux noise) is zero.

#include "needle/constants.hpp"
#include "needle/core_model.hpp"

namespace needle {

struct EnvironmentConditions {
    double temperature;      // K
    double gas_density;      // cm^-3
    double gas_mass;         // g
    double emissivity;       // [0, 1]
    double relaxation_rate;  // 1/s

    void validate() const;

    // 0.1 K cryogenic vacuum, He at 1e3 cm^-3, black-body emissivity 1.
    static EnvironmentConditions reference(const PhysicalConstants& k = PhysicalConstants::cgs());

    friend bool operator==(const EnvironmentConditions&, const EnvironmentConditions&) = default;
};

struct PerturbationKick {
    double dL;    // erg s, mean transverse angular-momentum kick
    double rate;  // 1/s
};

// Converts an accumulated phase uncertainty after time t into a field
// uncertainty: (hbar / g mu_B) phi / t.
double phase_to_field(double phase, double g_factor, double t,
                      const PhysicalConstants& k = PhysicalConstants::cgs());

// Standard quantum limit for N independent spins. Uses sqrt(Gamma/(N t))
// when Gamma t > 1, otherwise Gamma is replaced by 1/t.
double sql_limit(double spin_count, double t, double relaxation_rate, double g_factor,
                 const PhysicalConstants& k = PhysicalConstants::cgs());

// Imaginary susceptibility of the linearised LLG response,
// N hbar alpha (g^2 mu_B^2 / V) (omega / omega0^2).
double chi_imaginary(double omega, const NeedleDerived& needle, double alpha, double omega0,
                     const PhysicalConstants& k = PhysicalConstants::cgs());

// Low-frequency FDT: (V / g^2 mu_B^2) (2 k T / omega) chi''(omega).
double transverse_spin_psd(double omega, double chi_im, const NeedleDerived& needle,
                           double temperature,
                           const PhysicalConstants& k = PhysicalConstants::cgs());

// sqrt(N hbar 2 alpha k T / omega0^2), erg s per sqrt(Hz).
double quantum_spin_noise(const NeedleDerived& needle, double temperature, double alpha,
                          double omega0, const PhysicalConstants& k = PhysicalConstants::cgs());

// Band-averaged precession-angle uncertainty, delta S_y / (N hbar sqrt(t)).
double quantum_phase_noise(const NeedleDerived& needle, double temperature, double alpha,
                           double omega0, double t,
                           const PhysicalConstants& k = PhysicalConstants::cgs());

double quantum_limit(const NeedleDerived& needle, const Material& material, double temperature,
                     double t, const PhysicalConstants& k = PhysicalConstants::cgs());

// Instantaneous spin-projection spread 1/sqrt(N) of an isolated spin.
double spin_projection_phase_noise(double spin_count);

// Gas collisions: dL = m v l / 16, rate = n (r l) v / 4.
PerturbationKick collision_kick(const EnvironmentConditions& env, const NeedleDerived& needle,
                                const PhysicalConstants& k = PhysicalConstants::cgs());

// (dL / N hbar) sqrt(rate t).
double perturbation_phase_noise(const PerturbationKick& kick, double spin_count, double t,
                                const PhysicalConstants& k = PhysicalConstants::cgs());

// (m / 32 N hbar) sqrt(n r l^3 v^3 t).
double collision_phase_noise(const EnvironmentConditions& env, const NeedleDerived& needle,
                             double t, const PhysicalConstants& k = PhysicalConstants::cgs());

// (hbar / g mu_B) (m / 32 N hbar) sqrt(n r l^3 v^3 / t).
double collision_field_noise(const EnvironmentConditions& env, const NeedleDerived& needle,
                             double t, const PhysicalConstants& k = PhysicalConstants::cgs());

// Thermal photons emitted per second by a surface 2 pi r l.
double blackbody_rate(const EnvironmentConditions& env, const NeedleDerived& needle,
                      const PhysicalConstants& k = PhysicalConstants::cgs());

// One hbar per photon at blackbody_rate.
PerturbationKick blackbody_kick(const EnvironmentConditions& env, const NeedleDerived& needle,
                                const PhysicalConstants& k = PhysicalConstants::cgs());

double blackbody_field_noise(const EnvironmentConditions& env, const NeedleDerived& needle,
                             double t, const PhysicalConstants& k = PhysicalConstants::cgs());

// Upper bound from a conducting slab of thickness l:
// sqrt((pi/4) k T / (c^2 rho l)) in G/sqrt(Hz).
double thermal_current_noise(const Material& material, const NeedleDerived& needle,
                             double temperature,
                             const PhysicalConstants& k = PhysicalConstants::cgs());

// Largest |dB_x/dx| that keeps a free needle within one radius over time t.
double gradient_limit(const NeedleDerived& needle, const Material& material, double t,
                      const PhysicalConstants& k = PhysicalConstants::cgs());

}  // namespace needle
