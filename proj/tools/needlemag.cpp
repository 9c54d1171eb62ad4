// needlemag: command-line front end for the needle magnetometer models.
//
// Exit codes: 0 success, 2 config/usage error, 3 I/O error, 4 resource cap.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "needle/budget.hpp"
#include "needle/config.hpp"
#include "needle/dynamics.hpp"
#include "needle/errors.hpp"
#include "needle/io.hpp"
#include "needle/montecarlo.hpp"
#include "needle/sweep.hpp"

using namespace needle;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 2, kIo = 3, kCap = 4 };

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::string config_path;
    std::string output;
    std::string format;
    std::uint64_t seed = 1;
    bool quiet = false;
    bool dump_config = false;
};

struct BudgetArgs {
    std::optional<double> t_min, t_max;
    std::optional<std::size_t> points;
    bool thermal_current = false;
};

struct DynamicsArgs {
    std::optional<double> duration;
    std::string start;
};

struct McArgs {
    std::vector<double> durations;
    std::optional<std::size_t> trials;
    std::string process;
    std::string sampler;
    std::string trial_dump;
};

struct SweepArgs {
    std::string parameter;
    std::vector<double> values;
    std::optional<double> aspect_ratio;
    bool fixed_pickup = false;
};

// Writes `payload` to --output, or stdout when no path is given.
void emit(const std::string& path, const std::string& payload)
{
    if (path.empty() || path == "-") {
        std::cout << payload;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open output file '" + path + "'");
    out << payload;
    out.close();
    if (!out) throw IoFailure("failed writing output file '" + path + "'");
}

void note(const Globals& g, const std::string& line)
{
    if (!g.quiet) std::cerr << line << '\n';
}

bool want_json(const RunConfig& cfg) { return cfg.output.format == "json"; }

json derive_report(const RunConfig& cfg)
{
    const auto n = derive_needle(cfg.geometry, cfg.material);
    const double b = norm(cfg.field);
    return {{"material", cfg.material.name},
            {"length_cm", cfg.geometry.length},
            {"radius_cm", cfg.geometry.radius},
            {"aspect_ratio", cfg.geometry.aspect_ratio()},
            {"volume_cm3", round_sig6(n.volume)},
            {"mass_g", round_sig6(n.mass)},
            {"moment_of_inertia_g_cm2", round_sig6(n.moment_of_inertia)},
            {"spin_count", round_sig6(n.spin_count)},
            {"total_spin_erg_s", round_sig6(n.total_spin)},
            {"magnetic_moment_erg_G", round_sig6(n.magnetic_moment)},
            {"omega_star_rad_s", round_sig6(n.omega_star)},
            {"b_star_G", round_sig6(n.b_star)},
            {"gilbert_rate_s", round_sig6(cfg.material.gilbert_alpha * cfg.material.fmr_frequency)},
            {"field_G", round_sig6(b)},
            {"regime", to_string(classify_regime(b, n))},
            {"warnings", n.warnings}};
}

int cmd_derive(const Globals& g, const RunConfig& cfg)
{
    const json r = derive_report(cfg);
    if (want_json(cfg)) {
        emit(cfg.output.path, r.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "quantity,value\n";
        for (const auto& [key, v] : r.items()) {
            if (key == "warnings") continue;
            os << key << ',' << (v.is_number() ? format_sci(v.get<double>()) : v.get<std::string>()) << '\n';
        }
        emit(cfg.output.path, os.str());
    }
    for (const auto& w : r.at("warnings")) note(g, "warning: " + w.get<std::string>());
    return kOk;
}

int cmd_budget(const Globals& g, RunConfig cfg, const BudgetArgs& a)
{
    if (a.t_min) cfg.budget.t_min_s = *a.t_min;
    if (a.t_max) cfg.budget.t_max_s = *a.t_max;
    if (a.points) cfg.budget.points = *a.points;
    if (a.thermal_current) cfg.budget.include_thermal_current = true;

    const auto n = derive_needle(cfg.geometry, cfg.material);
    BudgetOptions opt;
    opt.include_thermal_current = cfg.budget.include_thermal_current;
    const auto b = assemble_budget(n, cfg.material, cfg.environment, cfg.pickup, cfg.budget.t_min_s,
                                   cfg.budget.t_max_s, cfg.budget.points, opt);
    if (want_json(cfg)) {
        emit(cfg.output.path, budget_to_json(b).dump(2) + "\n");
    } else {
        std::ostringstream os;
        write_budget_csv(os, b);
        emit(cfg.output.path, os.str());
    }
    const auto tx = crossover_time(b, source::detection, source::collisions);
    note(g, tx ? "detection/collisions crossover at t = " + format_sci(*tx) + " s"
               : std::string("detection/collisions: no crossover on the grid"));
    note(g, "required vacuum at 1 s: " +
                format_sci(required_vacuum(n, cfg.environment, cfg.pickup, 1.0)) + " cm^-3");
    return kOk;
}

int cmd_dynamics(const Globals& g, RunConfig cfg, const DynamicsArgs& a)
{
    if (a.duration) cfg.dynamics.duration_s = *a.duration;
    if (!a.start.empty()) cfg.dynamics.initial = a.start;

    const auto n = derive_needle(cfg.geometry, cfg.material);
    auto dc = DynamicsConfig::for_needle(n, cfg.material, cfg.field);
    if (cfg.dynamics.fast_dt_s > 0) dc.fast_dt = cfg.dynamics.fast_dt_s;
    dc.lock_tolerance = cfg.dynamics.lock_tolerance;
    dc.max_steps = cfg.dynamics.max_steps;
    dc.decimation = cfg.dynamics.decimation;
    dc.max_duration = static_cast<double>(dc.max_steps) * dc.fast_dt;
    dc.validate(n);
    require(cfg.dynamics.duration_s >= 0, "duration must be non-negative");

    const std::size_t needed = required_steps(dc, cfg.dynamics.duration_s);
    if (needed > dc.max_steps) {
        throw CapExceeded("duration " + format_sci(cfg.dynamics.duration_s) + " s needs " +
                          std::to_string(needed) + " fast steps, above the cap of " +
                          std::to_string(dc.max_steps) +
                          ". Use the effective precession model (budget / mc subcommands) for "
                          "long times, or raise dynamics.max_steps.");
    }

    const Vec3 x{1, 0, 0};
    DynamicState s0;
    if (cfg.dynamics.initial == "locked") {
        s0 = locked_state(n, cfg.field, x);
    } else if (cfg.dynamics.initial == "rest") {
        s0 = misaligned_state(n, x, {0, 1, 0}, 0.0);
    } else {
        s0 = misaligned_state(n, x, {0, 1, 0}, cfg.dynamics.misalignment_rad);
    }
    const auto traj = integrate_full(s0, dc, n, cfg.dynamics.duration_s);

    const double lock_rate = fit_locking_rate(traj);
    const double b = norm(cfg.field);
    const double prec = b > 0 ? fit_precession_frequency(traj, cfg.field / b) : 0.0;
    if (want_json(cfg)) {
        json samples = json::array();
        for (const auto& st : traj.samples) {
            samples.push_back({{"t_s", st.time},
                               {"S", {st.spin.x, st.spin.y, st.spin.z}},
                               {"L", {st.orbital.x, st.orbital.y, st.orbital.z}},
                               {"a", {st.axis.x, st.axis.y, st.axis.z}}});
        }
        emit(cfg.output.path, json{{"steps", traj.steps},
                                   {"locking_rate_s", lock_rate},
                                   {"precession_rad_s", prec},
                                   {"samples", samples}}
                                      .dump(2) +
                                  "\n");
    } else {
        std::ostringstream os;
        write_trajectory_csv(os, traj);
        emit(cfg.output.path, os.str());
    }
    note(g, "steps " + std::to_string(traj.steps) + ", final misalignment " +
                format_sci(misalignment(traj.samples.back())) + " rad, locking rate " +
                format_sci(lock_rate) + " 1/s, precession " + format_sci(prec) + " rad/s");
    return kOk;
}

KickProcess make_process(const RunConfig& cfg, std::uint64_t seed)
{
    const auto n = derive_needle(cfg.geometry, cfg.material);
    const auto& mc = cfg.mc;
    if (mc.process == "fixed") {
        const auto k = PhysicalConstants::cgs();
        return {mc.rate_s, FixedMagnitudeSampler{mc.kick_hbar * k.hbar}, seed};
    }
    if (mc.process == "blackbody") {
        const auto kick = blackbody_kick(cfg.environment, n);
        return {kick.rate, FixedMagnitudeSampler{kick.dL}, seed};
    }
    const auto kick = collision_kick(cfg.environment, n);
    if (mc.sampler == "geometry") {
        const double v = mean_thermal_speed(cfg.environment.temperature, cfg.environment.gas_mass);
        return {kick.rate, CollisionGeometrySampler{cfg.environment.gas_mass, v}, seed};
    }
    return {kick.rate, FixedMagnitudeSampler{kick.dL}, seed};
}

int cmd_mc(const Globals& g, RunConfig cfg, const McArgs& a)
{
    if (!a.durations.empty()) cfg.mc.durations_s = a.durations;
    if (a.trials) cfg.mc.trials = *a.trials;
    if (!a.process.empty()) cfg.mc.process = a.process;
    if (!a.sampler.empty()) cfg.mc.sampler = a.sampler;
    require(cfg.mc.trials >= 100, "mc needs at least 100 trials");
    require(!cfg.mc.durations_s.empty(), "mc needs at least one duration");

    const auto n = derive_needle(cfg.geometry, cfg.material);
    const auto process = make_process(cfg, g.seed);

    json summaries = json::array();
    std::vector<double> stds;
    std::ostringstream csv;
    csv << "duration_s,mean_phi_rad,std_phi_rad,std_phi_stderr_rad,mean_Sz_drift_erg_s,"
           "max_abs_Sz_drift_erg_s,kick_count_mean,kick_count_variance,mean_abs_dLy_erg_s\n";
    std::ostringstream dump;
    for (double t : cfg.mc.durations_s) {
        const auto trials = run_trials(process, n, t, cfg.mc.trials);
        const auto s = summarize(trials, t);
        summaries.push_back(s.to_json());
        stds.push_back(s.std_phi);
        csv << format_sci(t) << ',' << format_sci(s.mean_phi) << ',' << format_sci(s.std_phi) << ','
            << format_sci(s.std_phi_stderr) << ',' << format_sci(s.mean_Sz_drift) << ','
            << format_sci(s.max_abs_Sz_drift) << ',' << format_sci(s.kick_count_mean) << ','
            << format_sci(s.kick_count_variance) << ',' << format_sci(s.mean_abs_dLy) << '\n';
        if (!a.trial_dump.empty()) {
            dump << "# duration_s=" << format_sci(t) << '\n';
            write_trials_csv(dump, trials);
        }
    }

    // Exponent only when the durations support a fit.
    json exponent = nullptr;
    bool all_positive = true;
    for (double s : stds) all_positive = all_positive && s > 0;
    if (cfg.mc.durations_s.size() >= 2 && all_positive)
        exponent = round_sig6(loglog_slope(cfg.mc.durations_s, stds));

    if (want_json(cfg)) {
        emit(cfg.output.path, json{{"process", process.describe()},
                                   {"trials", cfg.mc.trials},
                                   {"seed", g.seed},
                                   {"summaries", summaries},
                                   {"scaling_exponent", exponent}}
                                      .dump(2) +
                                  "\n");
    } else {
        emit(cfg.output.path, csv.str());
    }
    if (!a.trial_dump.empty()) emit(a.trial_dump, dump.str());
    note(g, exponent.is_null() ? std::string("scaling exponent: undefined")
                               : "scaling exponent: " + format_sci(exponent.get<double>()));
    return kOk;
}

int cmd_sweep(const Globals& g, const RunConfig& cfg, const SweepArgs& a)
{
    const auto param = parse_sweep_parameter(a.parameter);
    require(!a.values.empty(), "sweep needs --values");
    SweepInputs in{cfg.material, cfg.geometry, cfg.environment, cfg.pickup, a.aspect_ratio,
                   !a.fixed_pickup};
    const auto rows = run_sweep(in, param, a.values);
    if (want_json(cfg)) {
        emit(cfg.output.path, sweep_to_json(to_string(param), rows).dump(2) + "\n");
    } else {
        std::ostringstream os;
        write_sweep_csv(os, to_string(param), rows);
        emit(cfg.output.path, os.str());
    }
    note(g, std::to_string(rows.size()) + " sweep rows");
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"needlemag - precessing ferromagnetic needle magnetometer models"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--config", g.config_path, "JSON run configuration (default: cobalt-reference preset)");
    app.add_option("--output", g.output, "Output file (default: stdout)");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", g.seed, "Random seed for Monte Carlo runs")->capture_default_str();
    app.add_flag("--quiet", g.quiet, "Suppress summary lines on stderr");
    app.add_flag("--dump-config", g.dump_config,
                 "Print the resolved configuration as JSON and exit");

    auto* derive = app.add_subcommand("derive", "Derived needle quantities, thresholds and regime");

    BudgetArgs ba;
    auto* budget = app.add_subcommand("budget", "Field-uncertainty budget versus measurement time");
    budget->add_option("--t-min", ba.t_min, "Shortest time (s)");
    budget->add_option("--t-max", ba.t_max, "Longest time (s)");
    budget->add_option("--points", ba.points, "Number of log-spaced grid points");
    budget->add_flag("--include-thermal-current", ba.thermal_current,
                     "Add the thermal-current bound to the total");

    DynamicsArgs da;
    auto* dynamics = app.add_subcommand("dynamics", "Full spin + rotor integration (short times)");
    dynamics->add_option("--duration", da.duration, "Simulated time (s)");
    dynamics->add_option("--start", da.start, "Initial state")
        ->check(CLI::IsMember({"misaligned", "locked", "rest"}));

    McArgs ma;
    auto* mc = app.add_subcommand("mc", "Monte Carlo random walk of the precession phase");
    mc->add_option("--durations", ma.durations, "Walk durations (s)")->delimiter(',');
    mc->add_option("--trials", ma.trials, "Trials per duration (>= 100)");
    mc->add_option("--process", ma.process, "Kick process")
        ->check(CLI::IsMember({"collision", "blackbody", "fixed"}));
    mc->add_option("--sampler", ma.sampler, "Collision kick sampler")
        ->check(CLI::IsMember({"fixed", "geometry"}));
    mc->add_option("--trial-dump", ma.trial_dump, "Write per-trial results to this CSV file");

    SweepArgs sa;
    auto* sweep = app.add_subcommand("sweep", "One-parameter sweep of figures of merit");
    sweep->add_option("--parameter", sa.parameter,
                      "length | radius | temperature | gas_density | flux_sensitivity")
        ->required();
    sweep->add_option("--values", sa.values, "Parameter values (CGS units)")
        ->delimiter(',')
        ->required();
    sweep->add_option("--aspect-ratio", sa.aspect_ratio,
                      "Keep radius = length / ratio in a length sweep");
    sweep->add_flag("--fixed-pickup", sa.fixed_pickup,
                    "Keep the configured pick-up loop in a length sweep");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        RunConfig cfg = g.config_path.empty() ? RunConfig::reference() : load_config(g.config_path);
        if (!g.output.empty()) cfg.output.path = g.output;
        if (!g.format.empty()) cfg.output.format = g.format;

        if (g.dump_config) {
            emit(cfg.output.path, to_json(cfg).dump(2) + "\n");
            return kOk;
        }
        if (derive->parsed()) return cmd_derive(g, cfg);
        if (budget->parsed()) return cmd_budget(g, cfg, ba);
        if (dynamics->parsed()) return cmd_dynamics(g, cfg, da);
        if (mc->parsed()) return cmd_mc(g, cfg, ma);
        if (sweep->parsed()) return cmd_sweep(g, cfg, sa);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kUsage;
    } catch (const InvalidParameter& e) {
        std::cerr << "invalid parameter: " << e.what() << '\n';
        return kUsage;
    } catch (const ConfigIoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const IoFailure& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const CapExceeded& e) {
        std::cerr << "step cap exceeded: " << e.what() << '\n';
        return kCap;
    }
    return kUsage;
}
