#pragma once

// One-parameter sweeps of the reference figures of merit.

#include <optional>
#include <string>
#include <vector>

#include "needle/core_model.hpp"
#include "needle/noise.hpp"
#include "needle/pickup.hpp"

namespace needle {

enum class SweepParameter { Length, Radius, Temperature, GasDensity, FluxSensitivity };

// Throws InvalidParameter for names outside
// {length, radius, temperature, gas_density, flux_sensitivity}.
SweepParameter parse_sweep_parameter(const std::string& name);
std::string to_string(SweepParameter p);

struct SweepInputs {
    Material material;
    NeedleGeometry geometry;
    EnvironmentConditions environment;
    PickupLoop pickup;
    // When set, a length sweep keeps radius = length / aspect_ratio.
    std::optional<double> fixed_aspect_ratio;
    // When true the pick-up loop is rescaled with the needle length.
    bool scale_pickup = true;
};

struct SweepRow {
    double value;
    double omega_star;
    double b_star;
    double dB_det_1s;
    double dB_Q_1s;
    double dB_col_1s;
    double required_n;
    double spin_count;
};

std::vector<SweepRow> run_sweep(const SweepInputs& inputs, SweepParameter parameter,
                                const std::vector<double>& values,
                                const PhysicalConstants& k = PhysicalConstants::cgs());

}  // namespace needle
