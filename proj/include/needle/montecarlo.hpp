#pragma once

// Monte Carlo of impulsive environmental kicks acting on the locked
// gyroscope. Kicks arrive as a Poisson process; each one rotates S in the
// xy-plane by dL_y / (N hbar) and adds dL_z to S_z.
//
// Trials are independent and use counter-based random numbers keyed by
// (seed, trial, kick), so the serial and OpenMP paths give bit-identical
// per-trial results and summaries.

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "needle/core_model.hpp"

namespace needle {

// Every kick transfers +-dL to both the transverse (y) and longitudinal (z)
// components with independent random signs.
struct FixedMagnitudeSampler {
    double dL;  // erg s
};

// Gas molecule of mass m and speed v hitting the rod side: impact point
// uniform along the length and around the circumference, incidence from a
// cosine-law hemisphere, specular momentum transfer 2 m v_perp along the
// surface normal.
struct CollisionGeometrySampler {
    double gas_mass;  // g
    double speed;     // cm/s
};

using KickSampler = std::variant<FixedMagnitudeSampler, CollisionGeometrySampler>;

struct KickProcess {
    double rate;  // 1/s
    KickSampler sampler;
    std::uint64_t seed = 0;

    nlohmann::json describe() const;
};

struct TrialResult {
    double final_phi;     // rad
    double sz_drift;      // erg s
    std::uint64_t kicks;
    double sum_abs_dly;   // erg s
};

struct WalkSummary {
    std::size_t n_trials = 0;
    double duration = 0.0;
    double mean_phi = 0.0;
    double std_phi = 0.0;
    double std_phi_stderr = 0.0;
    double mean_Sz_drift = 0.0;
    double max_abs_Sz_drift = 0.0;
    double kick_count_mean = 0.0;
    double kick_count_variance = 0.0;
    double mean_abs_dLy = 0.0;  // per kick, over all kicks; 0 if none

    nlohmann::json to_json() const;
};

enum class Execution { Serial, Parallel };

// One trial; the kernel shared by both execution paths.
TrialResult run_trial(const KickProcess& process, const NeedleDerived& needle, double duration,
                      std::uint64_t trial);

std::vector<TrialResult> run_trials(const KickProcess& process, const NeedleDerived& needle,
                                    double duration, std::size_t n_trials,
                                    Execution exec = Execution::Parallel);

// Fixed-order compensated reduction.
WalkSummary summarize(std::span<const TrialResult> trials, double duration);

WalkSummary simulate_walk(const KickProcess& process, const NeedleDerived& needle,
                          double duration, std::size_t n_trials,
                          Execution exec = Execution::Parallel);

// Least-squares slope of log(std_phi) against log(t). Needs >= 4 durations
// spanning >= 2 decades and a process that produces kicks.
double scaling_exponent(const KickProcess& process, const NeedleDerived& needle,
                        std::span<const double> durations, std::size_t n_trials,
                        Execution exec = Execution::Parallel);

// max over trials |S_z drift| / (N hbar).
double sz_budget_check(const KickProcess& process, const NeedleDerived& needle, double duration,
                       std::size_t n_trials, Execution exec = Execution::Parallel);

// Above this S_z fraction a run no longer counts as a valid measurement.
inline constexpr double kSzBudgetThreshold = 0.01;

// Slope of log(y) against log(x) by least squares.
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace needle
