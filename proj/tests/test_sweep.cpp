#include <doctest.h>

#include <cmath>
#include <vector>

#include "needle/errors.hpp"
#include "needle/sweep.hpp"

using namespace needle;

namespace {

SweepInputs reference_inputs()
{
    const auto geo = NeedleGeometry::reference();
    return {Material::cobalt(), geo, EnvironmentConditions::reference(),
            PickupLoop::for_needle(geo.length), std::nullopt, true};
}

}  // namespace

TEST_CASE("parameter names")
{
    for (const char* n : {"length", "radius", "temperature", "gas_density", "flux_sensitivity"})
        CHECK(to_string(parse_sweep_parameter(n)) == n);
    CHECK_THROWS_AS(parse_sweep_parameter("colour"), InvalidParameter);
}

TEST_CASE("length sweep lowers B* as l^-2")
{
    const std::vector<double> ls{5e-4, 10e-4, 20e-4, 40e-4};
    const auto rows = run_sweep(reference_inputs(), SweepParameter::Length, ls);
    REQUIRE(rows.size() == ls.size());
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].b_star < rows[i - 1].b_star);
        CHECK(rows[i - 1].b_star / rows[i].b_star == doctest::Approx(4.0).epsilon(1e-12));
    }
}

TEST_CASE("fixed-aspect sweep: B* ~ N^-2/3")
{
    auto in = reference_inputs();
    in.fixed_aspect_ratio = 10.0;
    const std::vector<double> ls{5e-4, 10e-4, 20e-4, 40e-4, 80e-4};
    const auto rows = run_sweep(in, SweepParameter::Length, ls);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double slope = std::log(rows[i].b_star / rows[i - 1].b_star) /
                             std::log(rows[i].spin_count / rows[i - 1].spin_count);
        CHECK(slope == doctest::Approx(-2.0 / 3.0).epsilon(1e-9));
        const double col_slope = std::log(rows[i].dB_col_1s / rows[i - 1].dB_col_1s) /
                                 std::log(rows[i].spin_count / rows[i - 1].spin_count);
        CHECK(std::abs(col_slope + 1.0 / 3.0) < 0.02);
    }
}

TEST_CASE("single-value sweep")
{
    const auto rows = run_sweep(reference_inputs(), SweepParameter::Temperature, {0.1});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].value == 0.1);
    CHECK(rows[0].omega_star > 80.0);
    CHECK(rows[0].required_n == doctest::Approx(1.404e5).epsilon(2e-3));
}

TEST_CASE("gas density sweep scales collisions only")
{
    const auto rows = run_sweep(reference_inputs(), SweepParameter::GasDensity, {1e2, 1e4});
    CHECK(rows[1].dB_col_1s == doctest::Approx(10.0 * rows[0].dB_col_1s).epsilon(1e-12));
    CHECK(rows[1].dB_det_1s == rows[0].dB_det_1s);
    CHECK(rows[1].required_n == rows[0].required_n);
}

TEST_CASE("invalid sweep values are rejected")
{
    CHECK_THROWS_AS(run_sweep(reference_inputs(), SweepParameter::Radius, {-1.0}), InvalidParameter);
    CHECK_THROWS_AS(run_sweep(reference_inputs(), SweepParameter::Length, {}), InvalidParameter);
}
