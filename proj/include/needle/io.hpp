#pragma once

// CSV / JSON emitters. Numbers are written in scientific notation with six
// significant digits; JSON twins carry the same rounded values.

#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "needle/budget.hpp"
#include "needle/dynamics.hpp"
#include "needle/montecarlo.hpp"
#include "needle/sweep.hpp"

namespace needle {

std::string format_sci(double v);
double round_sig6(double v);

void write_budget_csv(std::ostream& os, const NoiseBudget& budget);
nlohmann::json budget_to_json(const NoiseBudget& budget);

void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

void write_trials_csv(std::ostream& os, std::span<const TrialResult> trials);

void write_sweep_csv(std::ostream& os, const std::string& parameter,
                     std::span<const SweepRow> rows);
nlohmann::json sweep_to_json(const std::string& parameter, std::span<const SweepRow> rows);

}  // namespace needle
