#include "needle/noise.hpp"

#include <cmath>
#include <numbers>

#include "needle/errors.hpp"

namespace needle {

void EnvironmentConditions::validate() const
{
    require(temperature >= 0, "temperature must be non-negative");
    require(gas_density >= 0, "gas density must be non-negative");
    require(gas_mass > 0, "gas mass must be positive");
    require(emissivity >= 0 && emissivity <= 1, "emissivity must lie in [0, 1]");
    require(relaxation_rate >= 0, "relaxation rate must be non-negative");
}

EnvironmentConditions EnvironmentConditions::reference(const PhysicalConstants& k)
{
    return {0.1, 1e3, helium_mass(k), 1.0, 0.0};
}

double phase_to_field(double phase, double g_factor, double t, const PhysicalConstants& k)
{
    require(t > 0, "measurement time must be positive");
    return k.hbar / (g_factor * k.mu_B) * phase / t;
}

double sql_limit(double spin_count, double t, double relaxation_rate, double g_factor,
                 const PhysicalConstants& k)
{
    require(t > 0, "measurement time must be positive");
    require(spin_count >= 1, "spin count must be at least 1");
    require(relaxation_rate >= 0, "relaxation rate must be non-negative");
    const double d_omega = relaxation_rate * t > 1.0
                               ? std::sqrt(relaxation_rate / (spin_count * t))
                               : 1.0 / (t * std::sqrt(spin_count));
    return k.hbar / (g_factor * k.mu_B) * d_omega;
}

double chi_imaginary(double omega, const NeedleDerived& needle, double alpha, double omega0,
                     const PhysicalConstants& k)
{
    const double gmu = needle.g_factor * k.mu_B;
    return needle.total_spin * alpha * gmu * gmu / needle.volume * omega / (omega0 * omega0);
}

double transverse_spin_psd(double omega, double chi_im, const NeedleDerived& needle,
                           double temperature, const PhysicalConstants& k)
{
    require(omega > 0, "frequency must be positive");
    const double gmu = needle.g_factor * k.mu_B;
    return needle.volume / (gmu * gmu) * 2.0 * k.k_B * temperature / omega * chi_im;
}

double quantum_spin_noise(const NeedleDerived& needle, double temperature, double alpha,
                          double omega0, const PhysicalConstants& k)
{
    require(temperature >= 0, "temperature must be non-negative");
    return std::sqrt(needle.total_spin * 2.0 * alpha * k.k_B * temperature / (omega0 * omega0));
}

double quantum_phase_noise(const NeedleDerived& needle, double temperature, double alpha,
                           double omega0, double t, const PhysicalConstants& k)
{
    require(t > 0, "measurement time must be positive");
    return quantum_spin_noise(needle, temperature, alpha, omega0, k) / needle.total_spin /
           std::sqrt(t);
}

double quantum_limit(const NeedleDerived& needle, const Material& material, double temperature,
                     double t, const PhysicalConstants& k)
{
    require(t > 0, "measurement time must be positive");
    require(temperature >= 0, "temperature must be non-negative");
    const double w0 = material.fmr_frequency;
    return k.hbar / (needle.g_factor * k.mu_B) *
           std::sqrt(2.0 * material.gilbert_alpha * k.k_B * temperature / (k.hbar * w0 * w0)) /
           std::sqrt(needle.spin_count * t * t * t);
}

double spin_projection_phase_noise(double spin_count)
{
    require(spin_count > 0, "spin count must be positive");
    return 1.0 / std::sqrt(spin_count);
}

PerturbationKick collision_kick(const EnvironmentConditions& env, const NeedleDerived& needle,
                                const PhysicalConstants& k)
{
    env.validate();
    const double v = mean_thermal_speed(env.temperature, env.gas_mass, k);
    const double l = needle.geometry.length;
    const double r = needle.geometry.radius;
    return {env.gas_mass * v * l / 16.0, env.gas_density * r * l * v / 4.0};
}

double perturbation_phase_noise(const PerturbationKick& kick, double spin_count, double t,
                                const PhysicalConstants& k)
{
    require(t >= 0, "time must be non-negative");
    require(spin_count > 0, "spin count must be positive");
    return kick.dL / (spin_count * k.hbar) * std::sqrt(kick.rate * t);
}

double collision_phase_noise(const EnvironmentConditions& env, const NeedleDerived& needle,
                             double t, const PhysicalConstants& k)
{
    require(t >= 0, "time must be non-negative");
    env.validate();
    const double v = mean_thermal_speed(env.temperature, env.gas_mass, k);
    const double l = needle.geometry.length;
    const double r = needle.geometry.radius;
    return env.gas_mass / (32.0 * needle.total_spin) *
           std::sqrt(env.gas_density * r * l * l * l * v * v * v * t);
}

double collision_field_noise(const EnvironmentConditions& env, const NeedleDerived& needle,
                             double t, const PhysicalConstants& k)
{
    require(t > 0, "measurement time must be positive");
    return phase_to_field(collision_phase_noise(env, needle, t, k), needle.g_factor, t, k);
}

double blackbody_rate(const EnvironmentConditions& env, const NeedleDerived& needle,
                      const PhysicalConstants& k)
{
    env.validate();
    const double kt = k.k_B * env.temperature;
    const double area = 2.0 * std::numbers::pi * needle.geometry.radius * needle.geometry.length;
    return 4.0 * k.zeta3 * env.emissivity / (k.c * k.c * k.h * k.h * k.h) * kt * kt * kt * area;
}

PerturbationKick blackbody_kick(const EnvironmentConditions& env, const NeedleDerived& needle,
                                const PhysicalConstants& k)
{
    return {k.hbar, blackbody_rate(env, needle, k)};
}

double blackbody_field_noise(const EnvironmentConditions& env, const NeedleDerived& needle,
                             double t, const PhysicalConstants& k)
{
    const double phase =
        perturbation_phase_noise(blackbody_kick(env, needle, k), needle.spin_count, t, k);
    return phase_to_field(phase, needle.g_factor, t, k);
}

double thermal_current_noise(const Material& material, const NeedleDerived& needle,
                             double temperature, const PhysicalConstants& k)
{
    require(temperature >= 0, "temperature must be non-negative");
    return std::sqrt(std::numbers::pi / 4.0 * k.k_B * temperature /
                     (k.c * k.c * material.resistivity * needle.geometry.length));
}

double gradient_limit(const NeedleDerived& needle, const Material& material, double t,
                      const PhysicalConstants& k)
{
    require(t > 0, "measurement time must be positive");
    return 2.0 * needle.geometry.radius * material.atomic_mass / (k.mu_B * t * t);
}

}  // namespace needle
