#include "needle/core_model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "needle/errors.hpp"

namespace needle {

void Material::validate() const
{
    require(density > 0, "material density must be positive");
    require(atomic_mass > 0, "material atomic mass must be positive");
    require(g_factor > 0, "material g-factor must be positive");
    require(gilbert_alpha > 0 && gilbert_alpha < 1, "Gilbert alpha must lie in (0, 1)");
    require(fmr_frequency > 0, "FMR frequency must be positive");
    require(resistivity > 0, "resistivity must be positive");
    require(spins_per_atom > 0, "spins per atom must be positive");
}

Material Material::cobalt(const PhysicalConstants& k)
{
    return {"cobalt", 8.86, 58.933194 * k.amu, 1.0, 0.01, 1e11,
            resistivity_from_ohm_cm(1e-7, k), 1.0};
}

Material Material::from_json(const nlohmann::json& j, const PhysicalConstants& k)
{
    Material m{};
    m.name = j.value("name", std::string{"custom"});
    m.density = j.at("density_g_cm3").get<double>();
    m.atomic_mass = j.at("atomic_mass_amu").get<double>() * k.amu;
    m.g_factor = j.at("g_factor").get<double>();
    m.gilbert_alpha = j.at("gilbert_alpha").get<double>();
    m.fmr_frequency = j.at("fmr_frequency_rad_s").get<double>();
    m.resistivity = resistivity_from_ohm_cm(j.at("resistivity_ohm_cm").get<double>(), k);
    m.spins_per_atom = j.at("spins_per_atom").get<double>();
    m.validate();
    return m;
}

nlohmann::json Material::to_json(const PhysicalConstants& k) const
{
    return {{"name", name},
            {"density_g_cm3", density},
            {"atomic_mass_amu", atomic_mass / k.amu},
            {"g_factor", g_factor},
            {"gilbert_alpha", gilbert_alpha},
            {"fmr_frequency_rad_s", fmr_frequency},
            {"resistivity_ohm_cm", resistivity_to_ohm_cm(resistivity, k)},
            {"spins_per_atom", spins_per_atom}};
}

void NeedleGeometry::validate() const
{
    require(length > 0, "needle length must be positive");
    require(radius > 0, "needle radius must be positive");
}

NeedleDerived derive_needle(const NeedleGeometry& geometry, const Material& material,
                            const PhysicalConstants& k)
{
    geometry.validate();
    material.validate();

    NeedleDerived d{};
    d.geometry = geometry;
    d.g_factor = material.g_factor;
    d.volume = std::numbers::pi * geometry.radius * geometry.radius * geometry.length;
    d.mass = material.density * d.volume;
    d.moment_of_inertia = d.mass * geometry.length * geometry.length / 12.0;
    d.spin_count = material.spins_per_atom * d.mass / material.atomic_mass;
    d.total_spin = d.spin_count * k.hbar;
    d.magnetic_moment = d.spin_count * material.g_factor * k.mu_B;
    d.gyromagnetic_ratio = material.g_factor * k.mu_B / k.hbar;
    d.omega_star = d.total_spin / d.moment_of_inertia;
    d.b_star = k.hbar * d.omega_star / (material.g_factor * k.mu_B);
    d.gamma_g = material.gilbert_alpha * material.fmr_frequency;

    const double ar = geometry.aspect_ratio();
    if (ar < 1.0) {
        std::ostringstream os;
        os << "aspect ratio " << ar << " < 1: needle is wider than it is long";
        d.warnings.push_back(os.str());
    }
    if (ar < kSingleDomainAspectMin || ar > kSingleDomainAspectMax) {
        std::ostringstream os;
        os << "aspect ratio " << ar << " outside [" << kSingleDomainAspectMin << ", "
           << kSingleDomainAspectMax << "]: needle may not be single-domain";
        d.warnings.push_back(os.str());
    }
    return d;
}

Thresholds critical_thresholds(const NeedleDerived& derived, const PhysicalConstants& k)
{
    const double omega_star = derived.total_spin / derived.moment_of_inertia;
    return {omega_star, k.hbar * omega_star / (derived.g_factor * k.mu_B)};
}

double mean_thermal_speed(double temperature, double gas_mass, const PhysicalConstants& k)
{
    require(temperature >= 0, "temperature must be non-negative");
    require(gas_mass > 0, "gas mass must be positive");
    return std::sqrt(8.0 * k.k_B * temperature / (std::numbers::pi * gas_mass));
}

double helium_mass(const PhysicalConstants& k) { return 4.002602 * k.amu; }

}  // namespace needle
