#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "needle/config.hpp"

using namespace needle;
using nlohmann::json;

namespace {

std::string error_of(const json& j)
{
    try {
        parse_config(j);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("reference preset")
{
    const auto cfg = parse_config(json{{"preset", kReferencePreset}});
    CHECK(cfg == RunConfig::reference());
    CHECK(cfg.material.name == "cobalt");
    CHECK(cfg.geometry.length == 10e-4);
    CHECK(cfg.environment.temperature == 0.1);
}

TEST_CASE("overrides on top of the preset")
{
    const auto cfg = parse_config(json{{"preset", kReferencePreset},
                                       {"environment", {{"temperature_K", 0.5}}},
                                       {"mc", {{"trials", 17}, {"durations_s", {1, 10, 100, 1000}}}}});
    CHECK(cfg.environment.temperature == 0.5);
    CHECK(cfg.environment.gas_density == 1e3);
    CHECK(cfg.mc.trials == 17);
    CHECK(cfg.mc.durations_s.size() == 4);
}

TEST_CASE("unknown keys are named")
{
    CHECK(error_of({{"preset", kReferencePreset}, {"colour", 1}}).find("colour") != std::string::npos);
    CHECK(error_of({{"preset", kReferencePreset}, {"geometry", {{"length_m", 1}}}}).find("length_m") !=
          std::string::npos);
}

TEST_CASE("missing required fields are named")
{
    const auto msg = error_of(json::object());
    CHECK(msg.find("missing required field") != std::string::npos);
    CHECK(msg.find("material") != std::string::npos);
    CHECK(error_of({{"preset", "nickel"}}).find("nickel") != std::string::npos);
}

TEST_CASE("bad values become config errors")
{
    CHECK_FALSE(error_of({{"preset", kReferencePreset}, {"geometry", {{"length_cm", -1.0}}}}).empty());
    CHECK_FALSE(error_of({{"preset", kReferencePreset}, {"output", {{"format", "xml"}}}}).empty());
    CHECK_FALSE(error_of({{"preset", kReferencePreset}, {"mc", {{"process", "hail"}}}}).empty());
    CHECK_FALSE(error_of({{"preset", kReferencePreset}, {"field_G", "strong"}}).empty());
}

TEST_CASE("dump and reload is the identity")
{
    auto cfg = RunConfig::reference();
    cfg.environment.temperature = 0.037;
    cfg.material.resistivity *= 3.3;
    cfg.field = {1e-7, 0, 2e-8};
    cfg.dynamics.initial = "locked";
    const json once = to_json(cfg);
    const auto back = parse_config(once);
    CHECK(back == cfg);
    CHECK(to_json(back).dump() == once.dump());
}

TEST_CASE("files")
{
    const auto dir = std::filesystem::temp_directory_path() / "needlemag_test_config";
    std::filesystem::create_directories(dir);
    const auto good = dir / "good.json";
    std::ofstream(good) << to_json(RunConfig::reference()).dump(2);
    CHECK(load_config(good) == RunConfig::reference());

    const auto empty = dir / "empty.json";
    std::ofstream(empty) << "  \n";
    CHECK_THROWS_WITH_AS(load_config(empty), doctest::Contains("missing required field"), ConfigError);

    const auto broken = dir / "broken.json";
    std::ofstream(broken) << "{\"preset\": ";
    CHECK_THROWS_AS(load_config(broken), ConfigError);
    CHECK_THROWS_AS(load_config(dir / "absent.json"), ConfigIoError);
    std::filesystem::remove_all(dir);
}
