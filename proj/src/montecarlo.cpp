#include "needle/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "needle/errors.hpp"
#include "needle/philox.hpp"

namespace needle {

namespace {

// Neumaier compensated sum.
class CompensatedSum {
public:
    void add(double v)
    {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct Kick {
    double dly;
    double dlz;
};

struct KickDraw {
    const NeedleDerived& needle;
    const UniformBlock& u;

    Kick operator()(const FixedMagnitudeSampler& s) const
    {
        return {u.u[1] < 0.5 ? -s.dL : s.dL, u.u[2] < 0.5 ? -s.dL : s.dL};
    }

    Kick operator()(const CollisionGeometrySampler& s) const
    {
        const double x = (u.u[1] - 0.5) * needle.geometry.length;
        const double psi = 2.0 * std::numbers::pi * u.u[2];
        const double cos_inc = std::sqrt(u.u[3]);
        const double impulse = 2.0 * s.gas_mass * s.speed * cos_inc;
        // Impulse along the inward surface normal (0, -cos psi, -sin psi)
        // applied at (x, r cos psi, r sin psi).
        return {impulse * x * std::sin(psi), -impulse * x * std::cos(psi)};
    }
};

}  // namespace

nlohmann::json KickProcess::describe() const
{
    nlohmann::json j{{"rate_s", rate}, {"seed", seed}};
    if (const auto* f = std::get_if<FixedMagnitudeSampler>(&sampler)) {
        j["sampler"] = {{"type", "fixed"}, {"dL_erg_s", f->dL}};
    } else {
        const auto& g = std::get<CollisionGeometrySampler>(sampler);
        j["sampler"] = {{"type", "geometry"}, {"gas_mass_g", g.gas_mass}, {"speed_cm_s", g.speed}};
    }
    return j;
}

nlohmann::json WalkSummary::to_json() const
{
    return {{"n_trials", n_trials},
            {"duration_s", duration},
            {"mean_phi_rad", mean_phi},
            {"std_phi_rad", std_phi},
            {"std_phi_stderr_rad", std_phi_stderr},
            {"mean_Sz_drift_erg_s", mean_Sz_drift},
            {"max_abs_Sz_drift_erg_s", max_abs_Sz_drift},
            {"kick_count_mean", kick_count_mean},
            {"kick_count_variance", kick_count_variance},
            {"mean_abs_dLy_erg_s", mean_abs_dLy}};
}

TrialResult run_trial(const KickProcess& process, const NeedleDerived& needle, double duration,
                      std::uint64_t trial)
{
    TrialResult r{0.0, 0.0, 0, 0.0};
    if (process.rate <= 0.0) return r;

    double t = 0.0;
    for (std::uint64_t kick = 0;; ++kick) {
        const auto u = uniform_block(process.seed, trial, static_cast<std::uint32_t>(kick), 0);
        t += -std::log(u.u[0]) / process.rate;
        if (t > duration) break;
        const Kick k = std::visit(KickDraw{needle, u}, process.sampler);
        r.final_phi += k.dly / needle.total_spin;
        r.sz_drift += k.dlz;
        r.sum_abs_dly += std::abs(k.dly);
        ++r.kicks;
    }
    return r;
}

std::vector<TrialResult> run_trials(const KickProcess& process, const NeedleDerived& needle,
                                    double duration, std::size_t n_trials, Execution exec)
{
    require(n_trials > 0, "n_trials must be positive");
    require(duration >= 0, "duration must be non-negative");
    require(process.rate >= 0, "kick rate must be non-negative");
    // Kick indices are 32-bit counter words.
    require(process.rate * duration < 1e9, "expected kicks per trial exceed 1e9");

    std::vector<TrialResult> out(n_trials);
    const auto n = static_cast<std::int64_t>(n_trials);
    if (exec == Execution::Serial) {
        for (std::int64_t i = 0; i < n; ++i)
            out[i] = run_trial(process, needle, duration, static_cast<std::uint64_t>(i));
    } else {
#pragma omp parallel for schedule(dynamic, 64)
        for (std::int64_t i = 0; i < n; ++i)
            out[i] = run_trial(process, needle, duration, static_cast<std::uint64_t>(i));
    }
    return out;
}

WalkSummary summarize(std::span<const TrialResult> trials, double duration)
{
    require(!trials.empty(), "no trials to summarise");
    const auto n = static_cast<double>(trials.size());

    CompensatedSum phi, sz, kicks, abs_dly;
    double max_sz = 0.0;
    std::uint64_t total_kicks = 0;
    for (const auto& t : trials) {
        phi.add(t.final_phi);
        sz.add(t.sz_drift);
        kicks.add(static_cast<double>(t.kicks));
        abs_dly.add(t.sum_abs_dly);
        max_sz = std::max(max_sz, std::abs(t.sz_drift));
        total_kicks += t.kicks;
    }

    WalkSummary s;
    s.n_trials = trials.size();
    s.duration = duration;
    s.mean_phi = phi.value() / n;
    s.mean_Sz_drift = sz.value() / n;
    s.max_abs_Sz_drift = max_sz;
    s.kick_count_mean = kicks.value() / n;
    s.mean_abs_dLy = total_kicks > 0 ? abs_dly.value() / static_cast<double>(total_kicks) : 0.0;

    CompensatedSum m2, m4, kv;
    for (const auto& t : trials) {
        const double d = t.final_phi - s.mean_phi;
        m2.add(d * d);
        m4.add(d * d * d * d);
        const double dk = static_cast<double>(t.kicks) - s.kick_count_mean;
        kv.add(dk * dk);
    }
    if (trials.size() > 1) {
        const double var = m2.value() / (n - 1.0);
        s.std_phi = std::sqrt(var);
        s.kick_count_variance = kv.value() / (n - 1.0);
        if (s.std_phi > 0.0 && trials.size() > 3) {
            // Var(s^2) ~ (mu4 - (n-3)/(n-1) sigma^4) / n; delta method for s.
            const double mu4 = m4.value() / n;
            const double var_s2 = std::max(0.0, (mu4 - (n - 3.0) / (n - 1.0) * var * var) / n);
            s.std_phi_stderr = std::sqrt(var_s2) / (2.0 * s.std_phi);
        }
    }
    return s;
}

WalkSummary simulate_walk(const KickProcess& process, const NeedleDerived& needle,
                          double duration, std::size_t n_trials, Execution exec)
{
    require(duration > 0, "duration must be positive");
    require(n_trials > 0, "n_trials must be positive");
    const auto trials = run_trials(process, needle, duration, n_trials, exec);
    return summarize(trials, duration);
}

double loglog_slope(std::span<const double> x, std::span<const double> y)
{
    require(x.size() == y.size() && x.size() >= 2, "need at least two points for a slope");
    const auto n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        require(x[i] > 0 && y[i] > 0, "log-log slope needs positive values");
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    require(sxx > 0, "degenerate abscissa for slope");
    return sxy / sxx;
}

double scaling_exponent(const KickProcess& process, const NeedleDerived& needle,
                        std::span<const double> durations, std::size_t n_trials, Execution exec)
{
    require(durations.size() >= 4, "scaling exponent needs at least 4 durations");
    const auto [lo, hi] = std::minmax_element(durations.begin(), durations.end());
    require(*lo > 0, "durations must be positive");
    require(*hi / *lo >= 100.0 * (1 - 1e-12), "durations must span at least two decades");
    require(process.rate > 0, "undefined exponent: process has zero kick rate");

    std::vector<double> stds;
    for (double d : durations) {
        const auto s = simulate_walk(process, needle, d, n_trials, exec);
        require(s.std_phi > 0, "undefined exponent: no phase spread at some duration");
        stds.push_back(s.std_phi);
    }
    return loglog_slope(durations, stds);
}

double sz_budget_check(const KickProcess& process, const NeedleDerived& needle, double duration,
                       std::size_t n_trials, Execution exec)
{
    const auto s = simulate_walk(process, needle, duration, n_trials, exec);
    return s.max_abs_Sz_drift / needle.total_spin;
}

}  // namespace needle
