#pragma once

// Coupled macrospin + rigid-rotor dynamics of the needle.
//
// The spin S obeys the Landau-Lifshitz-Gilbert equation in the applied field
// plus a uniaxial anisotropy field along the lattice axis a. Gilbert damping
// acts on the motion of S relative to the rotating lattice, so a rigidly
// co-rotating state is undamped. Internal (anisotropy) torques are returned
// to the lattice, so J = S + L changes only through the external field.
//
// The full integrator is stiff (omega0 ~ 1e11 rad/s against Larmor
// frequencies ~ 1 rad/s) and only meant for transients; long times use
// effective_precession() together with the noise modules.

#include <cstddef>
#include <string>
#include <vector>

#include "needle/constants.hpp"
#include "needle/core_model.hpp"
#include "needle/vec3.hpp"

namespace needle {

struct DynamicState {
    Vec3 spin;     // erg s
    Vec3 orbital;  // erg s
    Vec3 axis;     // unit
    double time = 0.0;
};

struct StateDerivative {
    Vec3 spin;
    Vec3 orbital;
    Vec3 axis;
};

struct DynamicsConfig {
    Vec3 field;               // G
    double anisotropy_field;  // G, gamma * H_eff = omega0
    double damping;           // Gilbert alpha
    double fast_dt;           // s
    double lock_tolerance;    // rad
    double max_duration;      // s
    std::size_t max_steps = 1'000'000;
    std::size_t decimation = 1;

    // Defaults for a needle: H_eff from omega0, dt = 0.01 / omega0.
    static DynamicsConfig for_needle(const NeedleDerived& needle, const Material& material,
                                     const Vec3& field = {});

    void validate(const NeedleDerived& needle) const;
};

StateDerivative llg_rotor_derivative(const DynamicState& state, const DynamicsConfig& cfg,
                                     const NeedleDerived& needle);

struct Trajectory {
    std::vector<DynamicState> samples;
    std::size_t steps = 0;
    std::size_t requested_steps = 0;
    bool truncated = false;
};

// Number of fast steps needed for `duration`.
std::size_t required_steps(const DynamicsConfig& cfg, double duration);

// Fixed-step RK4 with per-step renormalisation of |S| and |a|. If the run
// needs more than cfg.max_steps the result is cut at the cap and flagged.
Trajectory integrate_full(const DynamicState& state0, const DynamicsConfig& cfg,
                          const NeedleDerived& needle, double duration);

// phi0 + g mu_B B t / hbar.
double effective_precession(double phi0, double field, double g_factor, double t,
                            const PhysicalConstants& k = PhysicalConstants::cgs());

enum class Regime { Precessing, Marginal, Tipping };

std::string to_string(Regime r);

Regime classify_regime(double field, const NeedleDerived& needle, double margin = 0.1);

// Initial states.

// S and a along `axis_dir`, lattice at rest, S tilted from a by `tilt` rad
// in the plane spanned by axis_dir and tilt_dir.
DynamicState misaligned_state(const NeedleDerived& needle, const Vec3& axis_dir,
                              const Vec3& tilt_dir, double tilt);

// Exact steady precession: S || a || axis_dir, lattice co-rotating with the
// Larmor angular velocity about the field.
DynamicState locked_state(const NeedleDerived& needle, const Vec3& field, const Vec3& axis_dir);

// Diagnostics.

double misalignment(const DynamicState& s);

// Anisotropy + Zeeman + rotational kinetic energy (erg).
double total_energy(const DynamicState& s, const DynamicsConfig& cfg, const NeedleDerived& needle);

// Exponential decay rate of angle(S, a) fitted by least squares on
// log(angle) over the samples where the angle lies between
// `floor` and half the initial value. Returns 0 if fewer than 3 points.
double fit_locking_rate(const Trajectory& traj, double floor = 1e-7);

// Angular rate of the lattice axis about `field_dir` (least-squares slope of
// the unwrapped azimuth). Returns 0 if the trajectory has fewer than 2 samples.
double fit_precession_frequency(const Trajectory& traj, const Vec3& field_dir);

}  // namespace needle
