#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Sandbox {
    fs::path dir;
    Sandbox() : dir(fs::temp_directory_path() / ("needlemag_cli_" + std::to_string(::getpid())))
    {
        fs::create_directories(dir);
    }
    ~Sandbox() { fs::remove_all(dir); }
    fs::path operator/(const std::string& name) const { return dir / name; }
};

const Sandbox box;

int run(const std::string& args, const std::string& log = "log.txt")
{
    const std::string cmd = std::string(NEEDLEMAG_BIN) + " " + args + " >" + (box / "stdout.txt").string() +
                            " 2>" + (box / log).string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(slurp(p));
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::string write_config(const std::string& name, const json& j)
{
    const auto p = box / name;
    std::ofstream(p) << j.dump(2);
    return p.string();
}

}  // namespace

TEST_CASE("help lists every flag")
{
    CHECK(run("--help") == 0);
    const auto top = slurp(box / "stdout.txt");
    for (const char* f : {"--config", "--output", "--format", "--seed", "--quiet"})
        CHECK(top.find(f) != std::string::npos);

    const std::vector<std::pair<std::string, std::vector<std::string>>> subs = {
        {"derive", {}},
        {"budget", {"--t-min", "--t-max", "--points", "--include-thermal-current"}},
        {"dynamics", {"--duration", "--start"}},
        {"mc", {"--durations", "--trials", "--process", "--sampler", "--trial-dump"}},
        {"sweep", {"--parameter", "--values", "--aspect-ratio"}}};
    for (const auto& [name, flags] : subs) {
        CHECK(run(name + " --help") == 0);
        const auto text = slurp(box / "stdout.txt");
        for (const auto& f : flags) CHECK_MESSAGE(text.find(f) != std::string::npos, name << " " << f);
    }
}

TEST_CASE("usage errors exit 2")
{
    CHECK(run("") == 2);
    CHECK(run("frobnicate") == 2);
    CHECK(run("derive --format xml") == 2);
    CHECK(run("sweep --parameter colour --values 1") == 2);
    CHECK(run("mc --trials 50") == 2);
}

TEST_CASE("derive on the reference preset")
{
    const auto out = box / "derive.json";
    REQUIRE(run("derive --format json --output " + out.string()) == 0);
    const auto r = json::parse(slurp(out));
    CHECK(r.at("omega_star_rad_s").get<double>() > 80.0);
    CHECK(r.at("omega_star_rad_s").get<double>() < 150.0);
    CHECK(r.at("b_star_G").get<double>() > 0.8e-5);
    CHECK(r.at("b_star_G").get<double>() < 1.5e-5);
    CHECK(std::abs(r.at("spin_count").get<double>() / 3e12 - 1.0) < 0.2);
    CHECK(r.at("regime") == "Precessing");
}

TEST_CASE("derive reports tipping in a strong field")
{
    const auto cfg = write_config("strong.json", {{"preset", "cobalt-reference"}, {"field_G", {0, 0, 1e-2}}});
    REQUIRE(run("--config " + cfg + " --format json derive") == 0);
    CHECK(json::parse(slurp(box / "stdout.txt")).at("regime") == "Tipping");
}

TEST_CASE("config errors")
{
    const auto empty = box / "empty.json";
    std::ofstream(empty) << "";
    CHECK(run("--config " + empty.string() + " derive") == 2);
    CHECK(slurp(box / "log.txt").find("missing required field") != std::string::npos);

    const auto bad = write_config("bad.json", {{"preset", "cobalt-reference"}, {"colour", "red"}});
    CHECK(run("--config " + bad + " derive") == 2);
    CHECK(slurp(box / "log.txt").find("colour") != std::string::npos);

    const auto broken = box / "broken.json";
    std::ofstream(broken) << "{\n  \"preset\": \"cobalt-reference\",\n  oops\n}";
    CHECK(run("--config " + broken.string() + " derive") == 2);
    CHECK(slurp(box / "log.txt").find("line 3") != std::string::npos);

    CHECK(run("--config " + (box / "missing.json").string() + " derive") == 3);
}

TEST_CASE("budget output")
{
    const auto out = box / "budget.csv";
    REQUIRE(run("budget --output " + out.string()) == 0);
    const auto rows = read_csv(out);
    REQUIRE(rows.size() == 201);
    CHECK(rows[0] == std::vector<std::string>{"t_s", "dB_det_G", "dB_Q_G", "dB_col_G", "dB_BB_G",
                                              "dB_SQL_G", "dB_total_G", "dominant"});
    CHECK(rows[1][7] == "detection");
    CHECK(rows.back()[7] == "collisions");
    CHECK(slurp(box / "log.txt").find("crossover") != std::string::npos);

    REQUIRE(run("budget --points 2 --output " + out.string()) == 0);
    CHECK(read_csv(out).size() == 3);

    const auto quiet = write_config("quiet.json", {{"preset", "cobalt-reference"},
                                                   {"environment", {{"gas_density_cm3", 0.0}, {"emissivity", 0.0}}}});
    REQUIRE(run("--config " + quiet + " budget --output " + out.string()) == 0);
    const auto q = read_csv(out);
    for (std::size_t i = 1; i < q.size(); ++i) CHECK(q[i][7] == "detection");

    CHECK(run("budget --output " + (box / "no/such/dir/x.csv").string()) == 3);
}

TEST_CASE("dynamics")
{
    const auto out = box / "traj.csv";
    REQUIRE(run("dynamics --duration 0 --output " + out.string()) == 0);
    const auto rows = read_csv(out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].size() == 10);

    REQUIRE(run("dynamics --duration 5e-9 --output " + out.string()) == 0);
    CHECK(slurp(box / "log.txt").find("locking rate") != std::string::npos);

    CHECK(run("dynamics --duration 1") == 4);
    CHECK(slurp(box / "log.txt").find("effective precession") != std::string::npos);
}

TEST_CASE("mc is deterministic for a fixed seed")
{
    const auto a = box / "mc_a.json";
    const auto b = box / "mc_b.json";
    const std::string args = "--format json --seed 7 mc --trials 200 --durations 1e2,1e3,1e4,1e5 --output ";
    REQUIRE(run(args + a.string()) == 0);
    REQUIRE(run(args + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));
    const auto j = json::parse(slurp(a));
    CHECK(j.at("summaries").size() == 4);
    CHECK(std::abs(j.at("scaling_exponent").get<double>() - 0.5) < 0.05);

    const auto zero = write_config("zero.json", {{"preset", "cobalt-reference"},
                                                 {"mc", {{"process", "fixed"}, {"rate_s", 0.0}}}});
    REQUIRE(run("--config " + zero + " --format json mc --trials 100 --output " + a.string()) == 0);
    for (const auto& s : json::parse(slurp(a)).at("summaries")) CHECK(s.at("std_phi_rad") == 0.0);

    const auto dump = box / "trials.csv";
    REQUIRE(run("mc --trials 100 --durations 10 --trial-dump " + dump.string() + " --output " + b.string()) == 0);
    CHECK(slurp(dump).find("trial,final_phi_rad,kicks") != std::string::npos);
}

TEST_CASE("sweep")
{
    const auto out = box / "sweep.csv";
    REQUIRE(run("sweep --parameter length --values 1e-4,3e-4,1e-3,3e-3,1e-2 --output " + out.string()) == 0);
    const auto rows = read_csv(out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0][0] == "length");
    for (std::size_t i = 2; i < rows.size(); ++i) CHECK(std::stod(rows[i][2]) < std::stod(rows[i - 1][2]));

    REQUIRE(run("sweep --parameter temperature --values 0.1 --output " + out.string()) == 0);
    CHECK(read_csv(out).size() == 2);
}

TEST_CASE("dumped configuration reloads to the same configuration")
{
    const auto first = box / "defaults.json";
    const auto second = box / "defaults2.json";
    REQUIRE(run("--dump-config --output " + first.string() + " derive") == 0);
    REQUIRE(run("--config " + first.string() + " --dump-config --output " + second.string() + " derive") == 0);
    auto a = json::parse(slurp(first));
    auto b = json::parse(slurp(second));
    a["output"].erase("path");
    b["output"].erase("path");
    CHECK(a == b);
}
