#include "needle/dynamics.hpp"

#include <cmath>
#include <numbers>

#include "needle/errors.hpp"

namespace needle {

DynamicsConfig DynamicsConfig::for_needle(const NeedleDerived& needle, const Material& material,
                                          const Vec3& field)
{
    DynamicsConfig cfg{};
    cfg.field = field;
    cfg.anisotropy_field = material.fmr_frequency / needle.gyromagnetic_ratio;
    cfg.damping = material.gilbert_alpha;
    cfg.fast_dt = 0.01 / material.fmr_frequency;
    cfg.lock_tolerance = 1e-3;
    cfg.max_steps = 1'000'000;
    cfg.max_duration = static_cast<double>(cfg.max_steps) * cfg.fast_dt;
    return cfg;
}

void DynamicsConfig::validate(const NeedleDerived& needle) const
{
    require(anisotropy_field > 0, "anisotropy field must be positive");
    require(damping >= 0 && damping < 1, "damping must lie in [0, 1)");
    const double omega0 = needle.gyromagnetic_ratio * anisotropy_field;
    require(fast_dt > 0 && fast_dt <= 0.01 / omega0 * (1 + 1e-12),
            "fast_dt must be positive and at most 0.01 / omega0");
    require(lock_tolerance > 0 && lock_tolerance <= 1e-3, "lock_tolerance must lie in (0, 1e-3]");
    require(max_steps > 0, "max_steps must be positive");
    require(decimation > 0, "decimation must be positive");
}

StateDerivative llg_rotor_derivative(const DynamicState& state, const DynamicsConfig& cfg,
                                     const NeedleDerived& needle)
{
    const double gamma = needle.gyromagnetic_ratio;
    const double alpha = cfg.damping;
    const Vec3& S = state.spin;
    const Vec3& a = state.axis;
    const Vec3 s_hat = normalized(S);

    const Vec3 h_anis = cfg.anisotropy_field * dot(s_hat, a) * a;
    const Vec3 omega = state.orbital / needle.moment_of_inertia;

    // Rate of change of S seen from the lattice frame, in Landau-Lifshitz
    // form. The frame rotation enters as an extra angular velocity.
    const Vec3 h = gamma * (cfg.field + h_anis) + omega;
    const Vec3 precess = cross(S, h);
    const Vec3 u = (precess - alpha * cross(s_hat, precess)) / (1.0 + alpha * alpha);

    StateDerivative d;
    d.spin = u + cross(omega, S);
    // Only the Zeeman torque leaves the needle; everything else is
    // exchanged between spin and lattice.
    d.orbital = gamma * cross(S, cfg.field) - d.spin;
    d.axis = cross(omega, a);
    return d;
}

namespace {

DynamicState advance(const DynamicState& s, const StateDerivative& d, double h)
{
    return {s.spin + h * d.spin, s.orbital + h * d.orbital, s.axis + h * d.axis, s.time + h};
}

DynamicState rk4_step(const DynamicState& s, const DynamicsConfig& cfg,
                      const NeedleDerived& needle, double dt)
{
    const auto k1 = llg_rotor_derivative(s, cfg, needle);
    const auto k2 = llg_rotor_derivative(advance(s, k1, 0.5 * dt), cfg, needle);
    const auto k3 = llg_rotor_derivative(advance(s, k2, 0.5 * dt), cfg, needle);
    const auto k4 = llg_rotor_derivative(advance(s, k3, dt), cfg, needle);

    DynamicState out = s;
    const double w = dt / 6.0;
    out.spin += w * (k1.spin + 2.0 * k2.spin + 2.0 * k3.spin + k4.spin);
    out.orbital += w * (k1.orbital + 2.0 * k2.orbital + 2.0 * k3.orbital + k4.orbital);
    out.axis += w * (k1.axis + 2.0 * k2.axis + 2.0 * k3.axis + k4.axis);

    // Project back onto |S| = N hbar; the removed piece goes to L so that
    // S + L is untouched by the projection.
    const Vec3 rescaled = out.spin * (needle.total_spin / norm(out.spin));
    out.orbital += out.spin - rescaled;
    out.spin = rescaled;
    out.axis = normalized(out.axis);
    return out;
}

}  // namespace

std::size_t required_steps(const DynamicsConfig& cfg, double duration)
{
    require(duration >= 0, "duration must be non-negative");
    return static_cast<std::size_t>(std::ceil(duration / cfg.fast_dt - 1e-9));
}

Trajectory integrate_full(const DynamicState& state0, const DynamicsConfig& cfg,
                          const NeedleDerived& needle, double duration)
{
    cfg.validate(needle);
    require(norm(state0.spin) > 0, "initial spin must be non-zero");
    require(std::abs(norm(state0.axis) - 1.0) < 1e-9, "initial axis must be a unit vector");

    Trajectory traj;
    traj.requested_steps = required_steps(cfg, duration);
    std::size_t steps = traj.requested_steps;
    if (steps > cfg.max_steps) {
        steps = cfg.max_steps;
        traj.truncated = true;
    }
    // Last step is shortened so the run ends exactly at `duration`.
    const double dt_last = steps == traj.requested_steps && steps > 0
                               ? duration - static_cast<double>(steps - 1) * cfg.fast_dt
                               : cfg.fast_dt;

    traj.samples.reserve(steps / cfg.decimation + 2);
    traj.samples.push_back(state0);

    DynamicState s = state0;
    for (std::size_t i = 0; i < steps; ++i) {
        const double dt = (i + 1 == steps) ? dt_last : cfg.fast_dt;
        s = rk4_step(s, cfg, needle, dt);
        s.time = state0.time + static_cast<double>(i) * cfg.fast_dt + dt;
        if ((i + 1) % cfg.decimation == 0 || i + 1 == steps) traj.samples.push_back(s);
    }
    traj.steps = steps;
    return traj;
}

double effective_precession(double phi0, double field, double g_factor, double t,
                            const PhysicalConstants& k)
{
    return phi0 + g_factor * k.mu_B * field * t / k.hbar;
}

std::string to_string(Regime r)
{
    switch (r) {
    case Regime::Precessing: return "Precessing";
    case Regime::Marginal: return "Marginal";
    case Regime::Tipping: return "Tipping";
    }
    return "Unknown";
}

Regime classify_regime(double field, const NeedleDerived& needle, double margin)
{
    require(margin > 0 && margin < 1, "regime margin must lie in (0, 1)");
    const double b = std::abs(field);
    if (b < margin * needle.b_star) return Regime::Precessing;
    if (b > needle.b_star / margin) return Regime::Tipping;
    return Regime::Marginal;
}

DynamicState misaligned_state(const NeedleDerived& needle, const Vec3& axis_dir,
                              const Vec3& tilt_dir, double tilt)
{
    const Vec3 a = normalized(axis_dir);
    Vec3 t = tilt_dir - dot(tilt_dir, a) * a;
    require(norm(t) > 0, "tilt direction must not be parallel to the axis");
    t = normalized(t);
    DynamicState s;
    s.axis = a;
    s.spin = needle.total_spin * (std::cos(tilt) * a + std::sin(tilt) * t);
    s.orbital = {};
    return s;
}

DynamicState locked_state(const NeedleDerived& needle, const Vec3& field, const Vec3& axis_dir)
{
    DynamicState s;
    s.axis = normalized(axis_dir);
    s.spin = needle.total_spin * s.axis;
    s.orbital = -needle.moment_of_inertia * needle.gyromagnetic_ratio * field;
    return s;
}

double misalignment(const DynamicState& s) { return angle_between(s.spin, s.axis); }

double total_energy(const DynamicState& s, const DynamicsConfig& cfg, const NeedleDerived& needle)
{
    const double gamma = needle.gyromagnetic_ratio;
    const double sa = dot(s.spin, s.axis);
    const double anis = -0.5 * gamma * cfg.anisotropy_field * sa * sa / norm(s.spin);
    const double zeeman = -gamma * dot(s.spin, cfg.field);
    const double kinetic = 0.5 * dot(s.orbital, s.orbital) / needle.moment_of_inertia;
    return anis + zeeman + kinetic;
}

namespace {

double ls_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    const auto n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace

double fit_locking_rate(const Trajectory& traj, double floor)
{
    if (traj.samples.empty()) return 0.0;
    const double theta0 = misalignment(traj.samples.front());
    std::vector<double> t, log_theta;
    for (const auto& s : traj.samples) {
        const double th = misalignment(s);
        if (th < 0.5 * theta0 && th > floor) {
            t.push_back(s.time);
            log_theta.push_back(std::log(th));
        }
    }
    if (t.size() < 3) return 0.0;
    return -ls_slope(t, log_theta);
}

double fit_precession_frequency(const Trajectory& traj, const Vec3& field_dir)
{
    if (traj.samples.size() < 2) return 0.0;
    const Vec3 f = normalized(field_dir);
    Vec3 e1 = traj.samples.front().axis - dot(traj.samples.front().axis, f) * f;
    if (norm(e1) < 1e-12) return 0.0;
    e1 = normalized(e1);
    const Vec3 e2 = cross(f, e1);

    std::vector<double> t, phi;
    double prev_raw = 0.0, offset = 0.0;
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        const Vec3& a = traj.samples[i].axis;
        const double raw = std::atan2(dot(a, e2), dot(a, e1));
        if (i > 0) {
            if (raw - prev_raw > std::numbers::pi) offset -= 2 * std::numbers::pi;
            if (raw - prev_raw < -std::numbers::pi) offset += 2 * std::numbers::pi;
        }
        prev_raw = raw;
        t.push_back(traj.samples[i].time);
        phi.push_back(raw + offset);
    }
    return ls_slope(t, phi);
}

}  // namespace needle
