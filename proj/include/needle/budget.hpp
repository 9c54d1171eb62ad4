#pragma once

// Field-uncertainty budget dB(t) over a log-spaced time grid.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "needle/constants.hpp"
#include "needle/core_model.hpp"
#include "needle/montecarlo.hpp"
#include "needle/noise.hpp"
#include "needle/pickup.hpp"

namespace needle {

namespace source {
inline const std::string detection = "detection";
inline const std::string quantum = "quantum";
inline const std::string collisions = "collisions";
inline const std::string blackbody = "blackbody";
inline const std::string sql = "sql";
inline const std::string thermal_current = "thermal_current";
}  // namespace source

struct BudgetOptions {
    // The thermal-current estimate is an upper bound; by default it is
    // reported but kept out of the total.
    bool include_thermal_current = false;
    Execution exec = Execution::Parallel;
};

struct NoiseBudget {
    std::vector<double> time_grid;                             // s
    std::map<std::string, std::vector<double>> per_source;     // G
    std::vector<std::string> included;                         // sources in the total
    std::vector<double> total;                                 // G, root-sum-square
    std::vector<std::string> dominant;
    double g_factor = 1.0;

    const std::vector<double>& curve(const std::string& label) const;
};

std::vector<double> log_grid(double t_min, double t_max, std::size_t points);

NoiseBudget assemble_budget(const NeedleDerived& needle, const Material& material,
                            const EnvironmentConditions& env, const PickupLoop& pickup,
                            double t_min = 1e-2, double t_max = 1e3, std::size_t points = 200,
                            const BudgetOptions& options = {},
                            const PhysicalConstants& k = PhysicalConstants::cgs());

// Time at which curve a crosses curve b, interpolated linearly in
// (log t, log a - log b). nullopt when they do not cross inside the grid.
std::optional<double> crossover_time(const NoiseBudget& budget, const std::string& a,
                                     const std::string& b);

// Gas density at which collision noise equals detection noise at t_ref.
// Only the gas species/temperature of `env` are used.
double required_vacuum(const NeedleDerived& needle, const EnvironmentConditions& env,
                       const PickupLoop& pickup, double t_ref,
                       const PhysicalConstants& k = PhysicalConstants::cgs());

// g mu_B dB in eV.
double field_to_energy_ev(double field, double g_factor,
                          const PhysicalConstants& k = PhysicalConstants::cgs());

// Energy scale of the total budget at time t (log-log interpolated).
double exotic_coupling_reach(const NoiseBudget& budget, double t,
                             const PhysicalConstants& k = PhysicalConstants::cgs());

// Log-log interpolation of a curve on the budget grid.
double interpolate_curve(const NoiseBudget& budget, const std::vector<double>& curve, double t);

// Detection-limited angular resolution for a needle seen by `pickup`.
double needle_angle_resolution(const NeedleDerived& needle, const PickupLoop& pickup,
                               double extra_flux_noise = 0.0);

}  // namespace needle
