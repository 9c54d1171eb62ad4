#include "needle/budget.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "needle/errors.hpp"

namespace needle {

const std::vector<double>& NoiseBudget::curve(const std::string& label) const
{
    const auto it = per_source.find(label);
    require(it != per_source.end(), "unknown noise source '" + label + "'");
    return it->second;
}

std::vector<double> log_grid(double t_min, double t_max, std::size_t points)
{
    require(t_min > 0, "t_min must be positive");
    require(t_max > t_min, "t_max must exceed t_min");
    require(points >= 2, "time grid needs at least two points");
    std::vector<double> grid(points);
    const double lo = std::log(t_min);
    const double step = (std::log(t_max) - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) grid[i] = std::exp(lo + step * static_cast<double>(i));
    grid.front() = t_min;
    grid.back() = t_max;
    return grid;
}

double needle_angle_resolution(const NeedleDerived& needle, const PickupLoop& pickup,
                               double extra_flux_noise)
{
    pickup.validate();
    const double flux = dipole_flux(needle.magnetic_moment, pickup, needle.geometry.length);
    return angle_resolution({pickup.radius, pickup.standoff,
                             std::hypot(pickup.flux_sensitivity, extra_flux_noise)},
                            flux);
}

NoiseBudget assemble_budget(const NeedleDerived& needle, const Material& material,
                            const EnvironmentConditions& env, const PickupLoop& pickup,
                            double t_min, double t_max, std::size_t points,
                            const BudgetOptions& options, const PhysicalConstants& k)
{
    env.validate();
    pickup.validate();

    NoiseBudget b;
    b.time_grid = log_grid(t_min, t_max, points);
    b.g_factor = needle.g_factor;
    b.included = {source::detection, source::quantum, source::collisions, source::blackbody};
    if (options.include_thermal_current) b.included.push_back(source::thermal_current);

    const double dphi_det = needle_angle_resolution(needle, pickup);
    // Thermal currents act on the readout: their flux through the loop is
    // an additional white flux noise seen by the SQUID.
    const double tc_flux = thermal_current_noise(material, needle, env.temperature, k) *
                           std::numbers::pi * pickup.radius * pickup.radius;
    const double dphi_tc =
        tc_flux / dipole_flux(needle.magnetic_moment, pickup, needle.geometry.length);

    const std::vector<std::string> labels = {source::detection, source::quantum,
                                             source::collisions, source::blackbody,
                                             source::sql, source::thermal_current};
    for (const auto& l : labels) b.per_source[l].assign(points, 0.0);
    auto& det = b.per_source[source::detection];
    auto& q = b.per_source[source::quantum];
    auto& col = b.per_source[source::collisions];
    auto& bb = b.per_source[source::blackbody];
    auto& sql = b.per_source[source::sql];
    auto& tc = b.per_source[source::thermal_current];

    auto eval = [&](std::size_t i) {
        const double t = b.time_grid[i];
        det[i] = detection_limit(dphi_det, needle.g_factor, t, k);
        q[i] = quantum_limit(needle, material, env.temperature, t, k);
        col[i] = collision_field_noise(env, needle, t, k);
        bb[i] = blackbody_field_noise(env, needle, t, k);
        sql[i] = sql_limit(needle.spin_count, t, env.relaxation_rate, needle.g_factor, k);
        tc[i] = detection_limit(dphi_tc, needle.g_factor, t, k);
    };
    const auto n = static_cast<std::int64_t>(points);
    if (options.exec == Execution::Serial) {
        for (std::int64_t i = 0; i < n; ++i) eval(static_cast<std::size_t>(i));
    } else {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) eval(static_cast<std::size_t>(i));
    }

    b.total.assign(points, 0.0);
    b.dominant.assign(points, std::string{});
    for (std::size_t i = 0; i < points; ++i) {
        double sum2 = 0.0, best = -1.0;
        for (const auto& l : b.included) {
            const double v = b.per_source[l][i];
            sum2 += v * v;
            if (v > best) {
                best = v;
                b.dominant[i] = l;
            }
        }
        b.total[i] = std::sqrt(sum2);
    }
    return b;
}

std::optional<double> crossover_time(const NoiseBudget& budget, const std::string& a,
                                     const std::string& b)
{
    require(a != b, "crossover of a source with itself is undefined");
    const auto& ca = budget.curve(a);
    const auto& cb = budget.curve(b);
    const auto& t = budget.time_grid;

    auto diff = [&](std::size_t i) {
        if (ca[i] > 0 && cb[i] > 0) return std::log(ca[i]) - std::log(cb[i]);
        if (ca[i] == cb[i]) return 0.0;
        return ca[i] > cb[i] ? std::numeric_limits<double>::infinity()
                             : -std::numeric_limits<double>::infinity();
    };

    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const double d0 = diff(i);
        const double d1 = diff(i + 1);
        if (d0 == 0.0) return t[i];
        if ((d0 < 0) == (d1 < 0) && d1 != 0.0) continue;
        if (!std::isfinite(d0) || !std::isfinite(d1)) return t[i + 1];
        const double f = d0 / (d0 - d1);
        return std::exp(std::log(t[i]) + f * (std::log(t[i + 1]) - std::log(t[i])));
    }
    return std::nullopt;
}

double required_vacuum(const NeedleDerived& needle, const EnvironmentConditions& env,
                       const PickupLoop& pickup, double t_ref, const PhysicalConstants& k)
{
    require(t_ref > 0, "reference time must be positive");
    const double det = detection_limit(needle_angle_resolution(needle, pickup), needle.g_factor,
                                       t_ref, k);
    EnvironmentConditions unit = env;
    unit.gas_density = 1.0;
    const double col_unit = collision_field_noise(unit, needle, t_ref, k);
    if (col_unit == 0.0) return std::numeric_limits<double>::infinity();
    // dB_col scales as sqrt(n).
    const double ratio = det / col_unit;
    return ratio * ratio;
}

double field_to_energy_ev(double field, double g_factor, const PhysicalConstants& k)
{
    return g_factor * k.mu_B * field / k.eV;
}

double interpolate_curve(const NoiseBudget& budget, const std::vector<double>& curve, double t)
{
    const auto& grid = budget.time_grid;
    require(curve.size() == grid.size(), "curve does not match the budget grid");
    require(t >= grid.front() && t <= grid.back(), "time outside the budget grid");
    const auto it = std::upper_bound(grid.begin(), grid.end(), t);
    std::size_t hi = static_cast<std::size_t>(it - grid.begin());
    if (hi == grid.size()) return curve.back();
    const std::size_t lo = hi - 1;
    const double f = std::log(t / grid[lo]) / std::log(grid[hi] / grid[lo]);
    if (curve[lo] > 0 && curve[hi] > 0)
        return std::exp(std::log(curve[lo]) + f * (std::log(curve[hi]) - std::log(curve[lo])));
    return curve[lo] + f * (curve[hi] - curve[lo]);
}

double exotic_coupling_reach(const NoiseBudget& budget, double t, const PhysicalConstants& k)
{
    return field_to_energy_ev(interpolate_curve(budget, budget.total, t), budget.g_factor, k);
}

}  // namespace needle
