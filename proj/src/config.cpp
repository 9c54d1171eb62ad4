#include "needle/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "needle/errors.hpp"

namespace needle {

namespace {

using nlohmann::json;

// value / factor, nudged by a few ulps so that multiplying back by
// `factor` reproduces `value` exactly when such a number exists.
double unscale(double value, double factor)
{
    double guess = value / factor;
    if (guess * factor == value) return guess;
    double up = guess, down = guess;
    for (int i = 0; i < 4; ++i) {
        up = std::nextafter(up, INFINITY);
        down = std::nextafter(down, -INFINITY);
        if (up * factor == value) return up;
        if (down * factor == value) return down;
    }
    return guess;
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where)
{
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.contains(key))
            throw ConfigError("unknown key '" + where + key + "'");
    }
}

const json& require_object(const json& j, const std::string& key)
{
    if (!j.is_object()) throw ConfigError("'" + key + "' must be a JSON object");
    return j;
}

template <class T>
T read(const json& obj, const std::string& key, const std::string& where)
{
    if (!obj.contains(key)) throw ConfigError("missing required field '" + where + key + "'");
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("field '" + where + key + "' has the wrong type");
    }
}

template <class T>
void read_optional(const json& obj, const std::string& key, const std::string& where, T& out)
{
    if (obj.contains(key)) out = read<T>(obj, key, where);
}

void check_choice(const std::string& value, const std::set<std::string>& allowed,
                  const std::string& key)
{
    if (!allowed.contains(value)) {
        std::string opts;
        for (const auto& a : allowed) opts += (opts.empty() ? "" : ", ") + a;
        throw ConfigError("field '" + key + "' must be one of {" + opts + "}, got '" + value + "'");
    }
}

Material parse_material(const json& j, const PhysicalConstants& k)
{
    if (j.is_string()) {
        const auto name = j.get<std::string>();
        if (name == kReferencePreset || name == "cobalt") return Material::cobalt(k);
        throw ConfigError("unknown material preset '" + name + "'");
    }
    require_object(j, "material");
    reject_unknown(j,
                   {"name", "density_g_cm3", "atomic_mass_amu", "g_factor", "gilbert_alpha",
                    "fmr_frequency_rad_s", "resistivity_ohm_cm", "spins_per_atom"},
                   "material.");
    Material m{};
    m.name = j.value("name", std::string{"custom"});
    m.density = read<double>(j, "density_g_cm3", "material.");
    m.atomic_mass = read<double>(j, "atomic_mass_amu", "material.") * k.amu;
    m.g_factor = read<double>(j, "g_factor", "material.");
    m.gilbert_alpha = read<double>(j, "gilbert_alpha", "material.");
    m.fmr_frequency = read<double>(j, "fmr_frequency_rad_s", "material.");
    m.resistivity = read<double>(j, "resistivity_ohm_cm", "material.") * ohm_cm_per_gaussian_second(k);
    m.spins_per_atom = read<double>(j, "spins_per_atom", "material.");
    return m;
}

}  // namespace

RunConfig RunConfig::reference()
{
    const auto k = PhysicalConstants::cgs();
    RunConfig c;
    c.material = Material::cobalt(k);
    c.geometry = NeedleGeometry::reference();
    c.environment = EnvironmentConditions::reference(k);
    c.pickup = PickupLoop::for_needle(c.geometry.length);
    c.field = {};
    return c;
}

namespace {

RunConfig parse_config_unchecked(const json& j)
{
    const auto k = PhysicalConstants::cgs();
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    reject_unknown(j,
                   {"preset", "material", "geometry", "environment", "pickup", "field_G",
                    "dynamics", "mc", "budget", "output"},
                   "");

    RunConfig c = RunConfig::reference();
    bool preset = false;
    if (j.contains("preset")) {
        const auto name = read<std::string>(j, "preset", "");
        if (name != kReferencePreset) throw ConfigError("unknown preset '" + name + "'");
        preset = true;
    }

    if (j.contains("material"))
        c.material = parse_material(j.at("material"), k);
    else if (!preset)
        throw ConfigError("missing required field 'material'");

    if (j.contains("geometry")) {
        const auto& g = require_object(j.at("geometry"), "geometry");
        reject_unknown(g, {"length_cm", "radius_cm"}, "geometry.");
        if (preset) {
            read_optional(g, "length_cm", "geometry.", c.geometry.length);
            read_optional(g, "radius_cm", "geometry.", c.geometry.radius);
        } else {
            c.geometry.length = read<double>(g, "length_cm", "geometry.");
            c.geometry.radius = read<double>(g, "radius_cm", "geometry.");
        }
    } else if (!preset) {
        throw ConfigError("missing required field 'geometry'");
    }

    if (j.contains("environment")) {
        const auto& e = require_object(j.at("environment"), "environment");
        reject_unknown(e,
                       {"temperature_K", "gas_density_cm3", "gas_mass_amu", "emissivity",
                        "relaxation_rate_s"},
                       "environment.");
        read_optional(e, "temperature_K", "environment.", c.environment.temperature);
        read_optional(e, "gas_density_cm3", "environment.", c.environment.gas_density);
        if (e.contains("gas_mass_amu"))
            c.environment.gas_mass = read<double>(e, "gas_mass_amu", "environment.") * k.amu;
        read_optional(e, "emissivity", "environment.", c.environment.emissivity);
        read_optional(e, "relaxation_rate_s", "environment.", c.environment.relaxation_rate);
    }

    c.pickup = PickupLoop::for_needle(c.geometry.length);
    if (j.contains("pickup")) {
        const auto& p = require_object(j.at("pickup"), "pickup");
        reject_unknown(p, {"radius_cm", "standoff_cm", "flux_sensitivity_G_cm2_rtHz"}, "pickup.");
        read_optional(p, "radius_cm", "pickup.", c.pickup.radius);
        read_optional(p, "standoff_cm", "pickup.", c.pickup.standoff);
        read_optional(p, "flux_sensitivity_G_cm2_rtHz", "pickup.", c.pickup.flux_sensitivity);
    }

    if (j.contains("field_G")) {
        const auto f = read<std::vector<double>>(j, "field_G", "");
        if (f.size() != 3) throw ConfigError("field 'field_G' must have three components");
        c.field = {f[0], f[1], f[2]};
    }

    if (j.contains("dynamics")) {
        const auto& d = require_object(j.at("dynamics"), "dynamics");
        reject_unknown(d,
                       {"initial", "misalignment_rad", "fast_dt_s", "lock_tolerance", "max_steps",
                        "decimation", "duration_s"},
                       "dynamics.");
        auto& s = c.dynamics;
        read_optional(d, "initial", "dynamics.", s.initial);
        check_choice(s.initial, {"misaligned", "locked", "rest"}, "dynamics.initial");
        read_optional(d, "misalignment_rad", "dynamics.", s.misalignment_rad);
        read_optional(d, "fast_dt_s", "dynamics.", s.fast_dt_s);
        read_optional(d, "lock_tolerance", "dynamics.", s.lock_tolerance);
        read_optional(d, "max_steps", "dynamics.", s.max_steps);
        read_optional(d, "decimation", "dynamics.", s.decimation);
        read_optional(d, "duration_s", "dynamics.", s.duration_s);
    }

    if (j.contains("mc")) {
        const auto& m = require_object(j.at("mc"), "mc");
        reject_unknown(m, {"process", "sampler", "kick_hbar", "rate_s", "trials", "durations_s"},
                       "mc.");
        auto& s = c.mc;
        read_optional(m, "process", "mc.", s.process);
        check_choice(s.process, {"collision", "blackbody", "fixed"}, "mc.process");
        read_optional(m, "sampler", "mc.", s.sampler);
        check_choice(s.sampler, {"fixed", "geometry"}, "mc.sampler");
        read_optional(m, "kick_hbar", "mc.", s.kick_hbar);
        read_optional(m, "rate_s", "mc.", s.rate_s);
        read_optional(m, "trials", "mc.", s.trials);
        read_optional(m, "durations_s", "mc.", s.durations_s);
    }

    if (j.contains("budget")) {
        const auto& b = require_object(j.at("budget"), "budget");
        reject_unknown(b, {"t_min_s", "t_max_s", "points", "include_thermal_current"}, "budget.");
        read_optional(b, "t_min_s", "budget.", c.budget.t_min_s);
        read_optional(b, "t_max_s", "budget.", c.budget.t_max_s);
        read_optional(b, "points", "budget.", c.budget.points);
        read_optional(b, "include_thermal_current", "budget.", c.budget.include_thermal_current);
    }

    if (j.contains("output")) {
        const auto& o = require_object(j.at("output"), "output");
        reject_unknown(o, {"path", "format"}, "output.");
        read_optional(o, "path", "output.", c.output.path);
        read_optional(o, "format", "output.", c.output.format);
        check_choice(c.output.format, {"csv", "json"}, "output.format");
    }

    c.material.validate();
    c.geometry.validate();
    c.environment.validate();
    c.pickup.validate();
    return c;
}

}  // namespace

RunConfig parse_config(const json& j)
{
    try {
        return parse_config_unchecked(j);
    } catch (const InvalidParameter& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigIoError("cannot open config file '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) return parse_config(json::object());
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error in '" + path.string() + "': " + e.what());
    }
    return parse_config(j);
}

json to_json(const RunConfig& c)
{
    const auto k = PhysicalConstants::cgs();
    json m{{"name", c.material.name},
           {"density_g_cm3", c.material.density},
           {"atomic_mass_amu", unscale(c.material.atomic_mass, k.amu)},
           {"g_factor", c.material.g_factor},
           {"gilbert_alpha", c.material.gilbert_alpha},
           {"fmr_frequency_rad_s", c.material.fmr_frequency},
           {"resistivity_ohm_cm", unscale(c.material.resistivity, ohm_cm_per_gaussian_second(k))},
           {"spins_per_atom", c.material.spins_per_atom}};
    return {
        {"material", m},
        {"geometry", {{"length_cm", c.geometry.length}, {"radius_cm", c.geometry.radius}}},
        {"environment",
         {{"temperature_K", c.environment.temperature},
          {"gas_density_cm3", c.environment.gas_density},
          {"gas_mass_amu", unscale(c.environment.gas_mass, k.amu)},
          {"emissivity", c.environment.emissivity},
          {"relaxation_rate_s", c.environment.relaxation_rate}}},
        {"pickup",
         {{"radius_cm", c.pickup.radius},
          {"standoff_cm", c.pickup.standoff},
          {"flux_sensitivity_G_cm2_rtHz", c.pickup.flux_sensitivity}}},
        {"field_G", {c.field.x, c.field.y, c.field.z}},
        {"dynamics",
         {{"initial", c.dynamics.initial},
          {"misalignment_rad", c.dynamics.misalignment_rad},
          {"fast_dt_s", c.dynamics.fast_dt_s},
          {"lock_tolerance", c.dynamics.lock_tolerance},
          {"max_steps", c.dynamics.max_steps},
          {"decimation", c.dynamics.decimation},
          {"duration_s", c.dynamics.duration_s}}},
        {"mc",
         {{"process", c.mc.process},
          {"sampler", c.mc.sampler},
          {"kick_hbar", c.mc.kick_hbar},
          {"rate_s", c.mc.rate_s},
          {"trials", c.mc.trials},
          {"durations_s", c.mc.durations_s}}},
        {"budget",
         {{"t_min_s", c.budget.t_min_s},
          {"t_max_s", c.budget.t_max_s},
          {"points", c.budget.points},
          {"include_thermal_current", c.budget.include_thermal_current}}},
        {"output", {{"path", c.output.path}, {"format", c.output.format}}},
    };
}

}  // namespace needle
