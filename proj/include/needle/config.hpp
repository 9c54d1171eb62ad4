#pragma once

// Run configuration for the command-line front end. JSON only; every
// dimensional key carries its unit as a suffix (_cm, _K, _G, ...).

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "needle/core_model.hpp"
#include "needle/noise.hpp"
#include "needle/pickup.hpp"
#include "needle/vec3.hpp"

namespace needle {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// The config file could not be read at all.
class ConfigIoError : public std::runtime_error {
public:
    explicit ConfigIoError(const std::string& what) : std::runtime_error(what) {}
};

inline const std::string kReferencePreset = "cobalt-reference";

struct DynamicsSettings {
    std::string initial = "misaligned";  // misaligned | locked | rest
    double misalignment_rad = 0.1;
    double fast_dt_s = 0.0;              // 0: 0.01 / omega0
    double lock_tolerance = 1e-3;
    std::size_t max_steps = 1'000'000;
    std::size_t decimation = 100;
    double duration_s = 1e-8;

    friend bool operator==(const DynamicsSettings&, const DynamicsSettings&) = default;
};

struct McSettings {
    std::string process = "collision";   // collision | blackbody | fixed
    std::string sampler = "fixed";       // fixed | geometry
    double kick_hbar = 1e3;              // fixed process only
    double rate_s = 1.0;                 // fixed process only
    std::size_t trials = 1000;
    std::vector<double> durations_s = {1e2, 1e3, 1e4, 1e5};

    friend bool operator==(const McSettings&, const McSettings&) = default;
};

struct BudgetSettings {
    double t_min_s = 1e-2;
    double t_max_s = 1e3;
    std::size_t points = 200;
    bool include_thermal_current = false;

    friend bool operator==(const BudgetSettings&, const BudgetSettings&) = default;
};

struct OutputSettings {
    std::string path;
    std::string format = "csv";  // csv | json

    friend bool operator==(const OutputSettings&, const OutputSettings&) = default;
};

struct RunConfig {
    Material material;
    NeedleGeometry geometry;
    EnvironmentConditions environment;
    PickupLoop pickup;
    Vec3 field;  // G
    DynamicsSettings dynamics;
    McSettings mc;
    BudgetSettings budget;
    OutputSettings output;

    // The reference needle: cobalt, 10 um x 1 um, 0.1 K, He at 1e3 cm^-3.
    static RunConfig reference();

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Unknown keys and missing required fields raise ConfigError naming the key.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const RunConfig& cfg);

}  // namespace needle
