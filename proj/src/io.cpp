#include "needle/io.hpp"

#include <cstdio>
#include <ostream>
#include <string>

namespace needle {

std::string format_sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5e", v);
    return buf;
}

double round_sig6(double v) { return std::stod(format_sci(v)); }

namespace {

const char* const kBudgetColumns[] = {"t_s",      "dB_det_G", "dB_Q_G",     "dB_col_G",
                                      "dB_BB_G",  "dB_SQL_G", "dB_total_G", "dominant"};

}  // namespace

void write_budget_csv(std::ostream& os, const NoiseBudget& b)
{
    for (std::size_t c = 0; c < std::size(kBudgetColumns); ++c)
        os << (c ? "," : "") << kBudgetColumns[c];
    os << '\n';
    const auto& det = b.curve(source::detection);
    const auto& q = b.curve(source::quantum);
    const auto& col = b.curve(source::collisions);
    const auto& bb = b.curve(source::blackbody);
    const auto& sql = b.curve(source::sql);
    for (std::size_t i = 0; i < b.time_grid.size(); ++i) {
        os << format_sci(b.time_grid[i]) << ',' << format_sci(det[i]) << ',' << format_sci(q[i])
           << ',' << format_sci(col[i]) << ',' << format_sci(bb[i]) << ',' << format_sci(sql[i])
           << ',' << format_sci(b.total[i]) << ',' << b.dominant[i] << '\n';
    }
}

nlohmann::json budget_to_json(const NoiseBudget& b)
{
    auto rounded = [](const std::vector<double>& v) {
        std::vector<double> out;
        out.reserve(v.size());
        for (double x : v) out.push_back(round_sig6(x));
        return out;
    };
    nlohmann::json j;
    j["columns"] = kBudgetColumns;
    j["t_s"] = rounded(b.time_grid);
    j["dB_det_G"] = rounded(b.curve(source::detection));
    j["dB_Q_G"] = rounded(b.curve(source::quantum));
    j["dB_col_G"] = rounded(b.curve(source::collisions));
    j["dB_BB_G"] = rounded(b.curve(source::blackbody));
    j["dB_SQL_G"] = rounded(b.curve(source::sql));
    j["dB_total_G"] = rounded(b.total);
    j["dominant"] = b.dominant;
    j["included"] = b.included;
    j["thermal_current_bound_G"] = rounded(b.curve(source::thermal_current));
    return j;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj)
{
    os << "t_s,Sx,Sy,Sz,Lx,Ly,Lz,ax,ay,az\n";
    char buf[512];
    for (const auto& s : traj.samples) {
        // Full precision: the locked-precession phase is ~1e-7 rad.
        std::snprintf(buf, sizeof buf,
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.time,
                      s.spin.x, s.spin.y, s.spin.z, s.orbital.x, s.orbital.y, s.orbital.z,
                      s.axis.x, s.axis.y, s.axis.z);
        os << buf;
    }
}

void write_trials_csv(std::ostream& os, std::span<const TrialResult> trials)
{
    os << "trial,final_phi_rad,kicks\n";
    char buf[96];
    for (std::size_t i = 0; i < trials.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%llu\n", i, trials[i].final_phi,
                      static_cast<unsigned long long>(trials[i].kicks));
        os << buf;
    }
}

void write_sweep_csv(std::ostream& os, const std::string& parameter,
                     std::span<const SweepRow> rows)
{
    os << parameter
       << ",omega_star_rad_s,b_star_G,dB_det_1s_G,dB_Q_1s_G,dB_col_1s_G,required_n_cm3,"
          "spin_count\n";
    for (const auto& r : rows) {
        os << format_sci(r.value) << ',' << format_sci(r.omega_star) << ','
           << format_sci(r.b_star) << ',' << format_sci(r.dB_det_1s) << ','
           << format_sci(r.dB_Q_1s) << ',' << format_sci(r.dB_col_1s) << ','
           << format_sci(r.required_n) << ',' << format_sci(r.spin_count) << '\n';
    }
}

nlohmann::json sweep_to_json(const std::string& parameter, std::span<const SweepRow> rows)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        arr.push_back({{parameter, round_sig6(r.value)},
                       {"omega_star_rad_s", round_sig6(r.omega_star)},
                       {"b_star_G", round_sig6(r.b_star)},
                       {"dB_det_1s_G", round_sig6(r.dB_det_1s)},
                       {"dB_Q_1s_G", round_sig6(r.dB_Q_1s)},
                       {"dB_col_1s_G", round_sig6(r.dB_col_1s)},
                       {"required_n_cm3", round_sig6(r.required_n)},
                       {"spin_count", round_sig6(r.spin_count)}});
    }
    return {{"parameter", parameter}, {"rows", arr}};
}

}  // namespace needle
