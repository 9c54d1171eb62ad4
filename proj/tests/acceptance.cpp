// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (0 when all pass).
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "needle/budget.hpp"
#include "needle/dynamics.hpp"
#include "needle/montecarlo.hpp"
#include "needle/sweep.hpp"

using namespace needle;

namespace {

// Tolerances and runtime budgets.
constexpr double kOmegaStarLo = 80.0, kOmegaStarHi = 150.0;
constexpr double kBStarLo = 0.8e-5, kBStarHi = 1.5e-5;
constexpr double kDetLo = 0.5e-16, kDetHi = 2e-16;
constexpr double kSlopeExact = 1e-9;
constexpr double kSqlLo = 5e-14, kSqlHi = 9e-14;
constexpr double kQLo = 0.3e-20, kQHi = 3e-20;
constexpr double kFdtRel = 1e-12;
constexpr double kKickLo = 0.5e3, kKickHi = 2e3;
constexpr double kVacuumTarget = 1e3, kVacuumFactor = 30.0;
constexpr double kCrossLo = 0.5, kCrossHi = 5.0;
constexpr double kSlopeTol = 0.1;
constexpr double kJRel = 1e-8, kSRel = 1e-6, kLockFactor = 2.0, kPrecRel = 0.01;
constexpr double kMcSigmas = 3.0, kExpTol = 0.05, kGeomFactor = 2.0;
constexpr double kThermalFactor = 2.0, kFluxFloor = 1e-13;
constexpr double kBbLo = 10.0, kBbHi = 300.0;
constexpr double kGradTarget = 2e-6, kGradTol = 0.3;
constexpr double kScalingTol = 0.02;

constexpr double kMs1 = 1.0, kMs6 = 1000.0, kMs7 = 30000.0, kMs8 = 60000.0;

const PhysicalConstants k = PhysicalConstants::cgs();
const Material co = Material::cobalt();
const NeedleGeometry geo = NeedleGeometry::reference();
const EnvironmentConditions env = EnvironmentConditions::reference();
const PickupLoop loop = PickupLoop::for_needle(geo.length);

struct Outcome {
    bool pass;
    std::string detail;
};

double elapsed_ms(const std::function<void()>& f)
{
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

bool within(double v, double lo, double hi) { return v >= lo && v <= hi; }

Outcome criterion1()
{
    NeedleDerived n;
    const double ms = elapsed_ms([&] { n = derive_needle(geo, co); });
    const auto th = critical_thresholds(n);
    const bool ok = within(th.omega_star, kOmegaStarLo, kOmegaStarHi) && within(th.b_star, kBStarLo, kBStarHi) &&
                    ms < kMs1;
    return {ok, "Omega*=" + sci(th.omega_star) + " 1/s, B*=" + sci(th.b_star) + " G, " + sci(ms) + " ms"};
}

Outcome criterion2()
{
    const auto n = derive_needle(geo, co);
    double b1 = 0, slope = 0;
    const double ms = elapsed_ms([&] {
        const double dphi = needle_angle_resolution(n, loop);
        b1 = detection_limit(dphi, n.g_factor, 1.0);
        slope = std::log(detection_limit(dphi, n.g_factor, 1e3) / detection_limit(dphi, n.g_factor, 1e-2)) /
                std::log(1e5);
    });
    const bool ok = within(b1, kDetLo, kDetHi) && std::abs(slope + 1.5) < kSlopeExact && ms < kMs1;
    return {ok, "dB_det(1 s)=" + sci(b1) + " G, slope=" + sci(slope) + ", " + sci(ms) + " ms"};
}

Outcome criterion3()
{
    const double b = sql_limit(3e12, 1.0, 0.0, 1.0);
    return {within(b, kSqlLo, kSqlHi), "dB_SQL(1 s)=" + sci(b) + " G"};
}

Outcome criterion4()
{
    const auto n = derive_needle(geo, co);
    const double b = quantum_limit(n, co, env.temperature, 1.0);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        auto mat = co;
        mat.gilbert_alpha = std::pow(10.0, -4.0 + 3.5 * u(rng));
        mat.fmr_frequency = std::pow(10.0, 9.0 + 3.0 * u(rng));
        mat.g_factor = 0.5 + 2.0 * u(rng);
        const auto nd = derive_needle({std::pow(10.0, -4.0 + 2.0 * u(rng)), std::pow(10.0, -5.0 + u(rng))}, mat);
        const double temp = std::pow(10.0, -3.0 + 4.0 * u(rng));
        const double omega = std::pow(10.0, -2.0 + 6.0 * u(rng));
        const double psd = transverse_spin_psd(
            omega, chi_imaginary(omega, nd, mat.gilbert_alpha, mat.fmr_frequency), nd, temp);
        const double ds = quantum_spin_noise(nd, temp, mat.gilbert_alpha, mat.fmr_frequency);
        worst = std::max(worst, std::abs(psd / (ds * ds) - 1.0));
    }
    return {within(b, kQLo, kQHi) && worst < kFdtRel,
            "dB_Q(1 s)=" + sci(b) + " G, worst FDT rel. error=" + sci(worst)};
}

Outcome criterion5()
{
    const auto n = derive_needle(geo, co);
    const double dl = collision_kick(env, n).dL / k.hbar;
    const double nreq = required_vacuum(n, env, loop, 1.0);
    const bool ok_kick = within(dl, kKickLo, kKickHi);
    const bool ok_vac = within(nreq / kVacuumTarget, 1.0 / kVacuumFactor, kVacuumFactor);
    return {ok_kick && ok_vac, "dL_col=" + sci(dl) + " hbar [" + (ok_kick ? "ok" : "out") +
                                   "], required_vacuum(1 s)=" + sci(nreq) + " cm^-3 [" +
                                   (ok_vac ? "ok" : "outside x30 of 1e3") + "]"};
}

double local_slope(const NoiseBudget& b, std::size_t i)
{
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i + 1 < b.time_grid.size() ? i + 1 : i;
    return std::log(b.total[hi] / b.total[lo]) / std::log(b.time_grid[hi] / b.time_grid[lo]);
}

Outcome criterion6()
{
    const auto n = derive_needle(geo, co);
    NoiseBudget b;
    const double ms = elapsed_ms([&] { b = assemble_budget(n, co, env, loop, 1e-2, 1e3, 200); });
    // Dominance switch from the dominant column itself.
    double t_switch = -1.0;
    for (std::size_t i = 1; i < b.dominant.size(); ++i) {
        if (b.dominant[i - 1] == source::detection && b.dominant[i] == source::collisions) {
            t_switch = std::sqrt(b.time_grid[i - 1] * b.time_grid[i]);
            break;
        }
    }
    const double s0 = local_slope(b, 0);
    const double s1 = local_slope(b, b.time_grid.size() - 1);
    const bool ok_switch = within(t_switch, kCrossLo, kCrossHi);
    const bool ok_s0 = std::abs(s0 + 1.5) < kSlopeTol;
    const bool ok_s1 = std::abs(s1 - 0.5) < kSlopeTol;
    return {ok_switch && ok_s0 && ok_s1 && ms < kMs6,
            "switch at t=" + sci(t_switch) + " s [" + (ok_switch ? "ok" : "outside [0.5, 5]") +
                "], slope(0.01 s)=" + sci(s0) + " [" + (ok_s0 ? "ok" : "out") + "], slope(1e3 s)=" +
                sci(s1) + " [" + (ok_s1 ? "ok" : "expected +0.5") + "], " + sci(ms) + " ms"};
}

Outcome criterion7()
{
    const auto n = derive_needle(geo, co);
    bool ok = true;
    std::ostringstream d;

    // 1e6 fast steps of locking from a 0.1 rad tilt at zero field.
    auto cfg = DynamicsConfig::for_needle(n, co);
    cfg.decimation = 100;
    const auto s0 = misaligned_state(n, {0, 0, 1}, {1, 0, 0}, 0.1);
    Trajectory traj;
    const double ms = elapsed_ms([&] { traj = integrate_full(s0, cfg, n, 1e6 * cfg.fast_dt); });
    const Vec3 j0 = s0.spin + s0.orbital;
    double dj = 0.0, ds = 0.0;
    for (const auto& st : traj.samples) {
        dj = std::max(dj, norm(st.spin + st.orbital - j0) / norm(j0));
        ds = std::max(ds, std::abs(norm(st.spin) / n.total_spin - 1.0));
    }
    const double gamma_g = co.gilbert_alpha * co.fmr_frequency;
    const double rate = fit_locking_rate(traj);
    ok = ok && !traj.truncated && dj < kJRel && ds < kSRel && ms < kMs7;
    ok = ok && within(rate / gamma_g, 1.0 / kLockFactor, kLockFactor);
    d << "dJ/J=" << sci(dj) << ", d|S|/|S|=" << sci(ds) << ", locking rate=" << sci(rate) << " 1/s";

    const Vec3 field{0, 0, 1e-7};
    auto pc = DynamicsConfig::for_needle(n, co, field);
    pc.decimation = 1000;
    const auto p = integrate_full(locked_state(n, field, {1, 0, 0}), pc, n, 1e5 * pc.fast_dt);
    const double w = std::abs(fit_precession_frequency(p, {0, 0, 1}));
    const double larmor = n.g_factor * k.mu_B * 1e-7 / k.hbar;
    ok = ok && std::abs(w / larmor - 1.0) < kPrecRel;
    d << ", precession/Larmor-1=" << sci(w / larmor - 1.0) << ", 1e6 steps in " << sci(ms) << " ms";
    return {ok, d.str()};
}

Outcome criterion8()
{
    const auto n = derive_needle(geo, co);
    bool ok = true;
    std::ostringstream d;
    const double ms = elapsed_ms([&] {
        double worst = 0.0;
        for (double rate : {0.1, 1.0, 10.0}) {
            for (double t : {10.0, 100.0, 1000.0}) {
                const KickProcess p{rate, FixedMagnitudeSampler{1e3 * k.hbar}, 8};
                const auto s = simulate_walk(p, n, t, 10000);
                const double oracle = 1e3 * k.hbar * std::sqrt(rate * t) / n.total_spin;
                const double z = std::abs(s.std_phi - oracle) / s.std_phi_stderr;
                worst = std::max(worst, z);
            }
        }
        ok = ok && worst < kMcSigmas;
        d << "worst oracle deviation=" << sci(worst) << " SE";

        const auto col = collision_kick(env, n);
        const std::vector<double> durations{1e2, 1e3, 1e4, 1e5};
        const double beta =
            scaling_exponent({col.rate, FixedMagnitudeSampler{col.dL}, 8}, n, durations, 1000);
        const bool ok_beta = std::abs(beta - 0.5) < kExpTol;
        ok = ok && ok_beta;
        d << ", exponent=" << sci(beta) << " [" << (ok_beta ? "ok" : "out") << "]";

        const double v = mean_thermal_speed(env.temperature, env.gas_mass);
        const KickProcess geom{100.0, CollisionGeometrySampler{env.gas_mass, v}, 8};
        const auto sg = simulate_walk(geom, n, 10.0, 2000);
        const double ratio = sg.mean_abs_dLy / (env.gas_mass * v * geo.length / 16.0);
        const bool ok_geom = within(ratio, 1.0 / kGeomFactor, kGeomFactor);
        ok = ok && ok_geom;
        d << ", geometry <|dL_y|>/(mvl/16)=" << sci(ratio) << " [" << (ok_geom ? "ok" : "outside x2") << "]";
    });
    ok = ok && ms < kMs8;
    d << ", " << sci(ms) << " ms";
    return {ok, d.str()};
}

Outcome criterion9()
{
    const auto n = derive_needle(geo, co);
    const double tc = thermal_current_noise(co, n, env.temperature);
    const double flux = tc * M_PI * geo.radius * geo.radius;
    const double bb = blackbody_rate(env, n);
    const double grad = gradient_limit(n, co, 1.0);
    const bool ok = within(tc / 1e-8, 1.0 / kThermalFactor, kThermalFactor) && flux < kFluxFloor &&
                    within(bb, kBbLo, kBbHi) && std::abs(grad / kGradTarget - 1.0) < kGradTol;
    return {ok, "thermal dB=" + sci(tc) + " G/rtHz, flux=" + sci(flux) + " G cm^2/rtHz, Gamma_BB=" + sci(bb) +
                    " 1/s, gradient=" + sci(grad) + " G/cm"};
}

Outcome criterion10()
{
    SweepInputs in{co, geo, env, loop, 10.0, true};
    const std::vector<double> ls{1e-4, 3e-4, 1e-3, 3e-3, 1e-2};
    const auto rows = run_sweep(in, SweepParameter::Length, ls);
    std::vector<double> nn, col;
    for (const auto& r : rows) {
        nn.push_back(r.spin_count);
        col.push_back(r.dB_col_1s);
    }
    const double slope = loglog_slope(nn, col);
    return {std::abs(slope + 1.0 / 3.0) < kScalingTol, "slope dB_col vs N=" + sci(slope)};
}

}  // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"thresholds", criterion1},       {"detection limit", criterion2},
        {"SQL overlay", criterion3},      {"quantum limit", criterion4},
        {"collision model", criterion5},  {"budget curve", criterion6},
        {"dynamics properties", criterion7}, {"Monte Carlo oracle", criterion8},
        {"supplemental bounds", criterion9}, {"scaling law", criterion10}};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("criterion %2zu %-20s %s  %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL",
                    o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed;
}
