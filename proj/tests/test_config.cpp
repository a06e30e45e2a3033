#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "prespa/config.hpp"
#include "prespa/io.hpp"

using namespace prespa;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = std::string("/tmp/prespa_test_") + name;
    std::ofstream out(path);
    out << content;
    return path;
}

const char* kMinimal = R"({"dims": {"n_cav": 8}})";

}  // namespace

TEST_SUITE("config") {

TEST_CASE("defaults are applied and the hash is stable") {
    const std::string path = write_temp("minimal.json", kMinimal);
    const RunConfig a = load_config(path);
    CHECK(a.dims.n_cav == 8);
    CHECK(a.system.T1a_us == doctest::Approx(136.0));
    CHECK(a.drives.photon_targets == std::vector<int>{1, 3, 5});
    const RunConfig b = load_config(path);
    CHECK(a.hash == b.hash);
    CHECK(!a.hash.empty());
}

TEST_CASE("unknown keys are rejected") {
    const std::string path = write_temp("unknown.json", R"({"dims": {"n_cavity": 8}})");
    CHECK_THROWS_AS(load_config(path), ConfigError);
    const std::string path2 = write_temp("unknown2.json", R"({"extra_block": {}})");
    CHECK_THROWS_AS(load_config(path2), ConfigError);
}

TEST_CASE("schema violations are rejected") {
    CHECK_THROWS_AS(load_config(write_temp("bad_mode.json",
                                           R"({"simulate": {"mode": "banana"}})")),
                    ConfigError);
    CHECK_THROWS_AS(load_config(write_temp("bad_grid.json",
                                           R"({"simulate": {"n_points": 1}})")),
                    ConfigError);
    CHECK_THROWS_AS(load_config(write_temp("bad_param.json",
                                           R"({"system": {"T1a_us": -1.0}})")),
                    ConfigError);
    CHECK_THROWS_AS(load_config(write_temp("bad_target.json",
                                           R"({"drives": {"photon_targets": [99]}})")),
                    ConfigError);
    CHECK_THROWS_AS(load_config(write_temp("bad_json.json", "{")), ConfigError);
    CHECK_THROWS_AS(load_config("/tmp/prespa_does_not_exist.json"), ConfigError);
}

TEST_CASE("dump and reload preserve the configuration") {
    const std::string path = write_temp("roundtrip.json", kMinimal);
    const RunConfig a = load_config(path);
    const std::string dumped = write_temp("dumped.json", dump_config(a));
    const RunConfig b = load_config(dumped);
    CHECK(a.hash == b.hash);
    CHECK(b.dims.n_cav == 8);
}

TEST_CASE("population csv ingestion") {
    const std::string good = write_temp("pop.csv",
                                        "# comment\npump_time_us,g,e,f\n0,1,0,0\n75,0.9,0.08,0.02\n");
    std::vector<double> times;
    std::vector<std::array<double, 3>> pops;
    read_population_csv(good, times, pops);
    REQUIRE(times.size() == 2);
    CHECK(times[1] == doctest::Approx(75.0));
    CHECK(pops[1][0] == doctest::Approx(0.9));

    const std::string no_header = write_temp("pop_bad.csv", "0,1,0,0\n");
    CHECK_THROWS_AS(read_population_csv(no_header, times, pops), ConfigError);
}

TEST_CASE("fnv1a is stable") {
    CHECK(fnv1a("") == 14695981039346656037ull);
    CHECK(fnv1a("a") != fnv1a("b"));
}

}  // TEST_SUITE
