#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include "polaron/config.hpp"
#include "polaron/errors.hpp"
#include "polaron/report.hpp"

using namespace polaron;

namespace {

std::string write_temp(const std::string& content) {
    std::string path = "test_config_tmp.cfg";
    std::ofstream out(path);
    out << content;
    return path;
}

const char* kGoodConfig =
    "# Frohlich-type test model\n"
    "model.dimension = 3\n"
    "model.dispersion = constant\n"
    "model.coupling_g = 0.2\n"
    "model.coupling_beta = 1\n"
    "model.cutoff = none\n"
    "compute.seed = 42\n"
    "compute.nmax = 2\n"
    "output.format = csv\n";

}  // namespace

TEST_CASE("load_config: happy path with defaults") {
    auto path = write_temp(kGoodConfig);
    auto cfg = load_config(path);
    CHECK(cfg.model.d == 3);
    CHECK(cfg.model.g == doctest::Approx(0.2));
    CHECK(cfg.seed == 42);
    CHECK(cfg.nmax == 2);
    CHECK(cfg.mc_count == 2000);  // default preserved
    std::remove(path.c_str());
}

TEST_CASE("load_config: unknown key is rejected with its name") {
    auto path = write_temp(std::string(kGoodConfig) + "compute.quadrture_order = 4\n");
    try {
        load_config(path);
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("compute.quadrture_order") != std::string::npos);
    }
    std::remove(path.c_str());
}

TEST_CASE("load_config: missing seed or model section rejected") {
    auto no_seed = write_temp("model.dimension = 3\nmodel.coupling_g = 0\n");
    CHECK_THROWS_AS(load_config(no_seed), ConfigError);
    std::remove(no_seed.c_str());

    auto no_model = write_temp("compute.seed = 1\n");
    CHECK_THROWS_AS(load_config(no_model), ConfigError);
    std::remove(no_model.c_str());
}

TEST_CASE("load_config: malformed values rejected") {
    auto bad = write_temp(std::string(kGoodConfig) + "compute.mc_count = lots\n");
    CHECK_THROWS_AS(load_config(bad), ConfigError);
    std::remove(bad.c_str());

    auto bad2 = write_temp(std::string(kGoodConfig) + "model.dispersion = quadratic\n");
    CHECK_THROWS_AS(load_config(bad2), ConfigError);
    std::remove(bad2.c_str());
}

TEST_CASE("environment overrides take effect and are strict") {
    auto path = write_temp(kGoodConfig);
    setenv("POLARON_COMPUTE_MC_COUNT", "777", 1);
    auto cfg = load_config(path);
    CHECK(cfg.mc_count == 777);
    unsetenv("POLARON_COMPUTE_MC_COUNT");

    setenv("POLARON_COMPUTE_NO_SUCH", "1", 1);
    CHECK_THROWS_AS(load_config(path), ConfigError);
    unsetenv("POLARON_COMPUTE_NO_SUCH");
    std::remove(path.c_str());
}

TEST_CASE("config hash: stable and sensitive to values") {
    auto path = write_temp(kGoodConfig);
    auto cfg = load_config(path);
    auto h1 = cfg.config_hash();
    CHECK(h1 == cfg.config_hash());
    RunConfig other = cfg;
    other.seed = 43;
    CHECK(other.config_hash() != h1);
    std::remove(path.c_str());
}

TEST_CASE("format_double: shortest round-trip representation") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.1) == "0.1");
    const double v = 0.1234567890123456789;
    CHECK(std::stod(format_double(v)) == v);
    const double tiny = 3.5e-17;
    CHECK(std::stod(format_double(tiny)) == tiny);
}

TEST_CASE("to_csv: header and row formatting") {
    auto csv = to_csv({"u", "F", "stderr"}, {{0.0, 1.0, 0.0}, {0.25, 0.5, 1e-3}});
    CHECK(csv == "u,F,stderr\n0,1,0\n0.25,0.5,0.001\n");
}

TEST_CASE("verdict_json carries provenance and the violating datum") {
    VerdictReport rep;
    rep.check = "demo";
    rep.pass = false;
    rep.measured = 0.2;
    rep.tolerance = 0.1;
    rep.details = {{"violating_u", 0.75}};
    auto j = verdict_json(rep, 7, "deadbeef");
    CHECK(j["check"] == "demo");
    CHECK(j["pass"] == false);
    CHECK(j["details"]["violating_u"] == 0.75);
    CHECK(j["provenance"]["seed"] == 7);
    CHECK(j["provenance"]["config_hash"] == "deadbeef");
}
