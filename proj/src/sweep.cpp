#include "needle/sweep.hpp"

#include "needle/budget.hpp"
#include "needle/errors.hpp"

namespace needle {

SweepParameter parse_sweep_parameter(const std::string& name)
{
    if (name == "length") return SweepParameter::Length;
    if (name == "radius") return SweepParameter::Radius;
    if (name == "temperature") return SweepParameter::Temperature;
    if (name == "gas_density") return SweepParameter::GasDensity;
    if (name == "flux_sensitivity") return SweepParameter::FluxSensitivity;
    throw InvalidParameter("unknown sweep parameter '" + name +
                           "' (expected length, radius, temperature, gas_density, "
                           "flux_sensitivity)");
}

std::string to_string(SweepParameter p)
{
    switch (p) {
    case SweepParameter::Length: return "length";
    case SweepParameter::Radius: return "radius";
    case SweepParameter::Temperature: return "temperature";
    case SweepParameter::GasDensity: return "gas_density";
    case SweepParameter::FluxSensitivity: return "flux_sensitivity";
    }
    return "unknown";
}

std::vector<SweepRow> run_sweep(const SweepInputs& inputs, SweepParameter parameter,
                                const std::vector<double>& values, const PhysicalConstants& k)
{
    require(!values.empty(), "sweep needs at least one value");
    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (double v : values) {
        NeedleGeometry geom = inputs.geometry;
        EnvironmentConditions env = inputs.environment;
        PickupLoop loop = inputs.pickup;
        switch (parameter) {
        case SweepParameter::Length:
            geom.length = v;
            if (inputs.fixed_aspect_ratio) geom.radius = v / *inputs.fixed_aspect_ratio;
            break;
        case SweepParameter::Radius: geom.radius = v; break;
        case SweepParameter::Temperature: env.temperature = v; break;
        case SweepParameter::GasDensity: env.gas_density = v; break;
        case SweepParameter::FluxSensitivity: loop.flux_sensitivity = v; break;
        }
        if (inputs.scale_pickup && parameter == SweepParameter::Length)
            loop = PickupLoop::for_needle(geom.length, loop.flux_sensitivity);

        const NeedleDerived needle = derive_needle(geom, inputs.material, k);
        const double dphi = needle_angle_resolution(needle, loop);
        rows.push_back({v, needle.omega_star, needle.b_star,
                        detection_limit(dphi, needle.g_factor, 1.0, k),
                        quantum_limit(needle, inputs.material, env.temperature, 1.0, k),
                        collision_field_noise(env, needle, 1.0, k),
                        required_vacuum(needle, env, loop, 1.0, k), needle.spin_count});
    }
    return rows;
}

}  // namespace needle
