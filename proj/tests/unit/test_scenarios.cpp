#include "bdsg/errors.hpp"
#include "bdsg/io.hpp"
#include "bdsg/scenarios.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

using namespace bdsg;

TEST_SUITE("scenarios") {

TEST_CASE("bundled scenarios are present with sane derived grids") {
    const auto& all = builtin_scenarios();
    std::set<std::string> names;
    for (const auto& sc : all) names.insert(sc.name);
    for (const char* required :
         {"t1a", "t1b", "t1c", "t2a", "t2b", "t3a", "t4a", "f1a", "f2a", "t5", "t6", "t7", "f6",
          "f7", "anderson"})
        CHECK(names.contains(required));

    CHECK(builtin_scenario("t1a").points_per_cell() == 64);
    CHECK(builtin_scenario("t2b").points_per_cell() == 64);
    CHECK(builtin_scenario("t4a").points_per_cell() == 16);

    CHECK(!builtin_scenario("t1a").heavy());
    CHECK(!builtin_scenario("t4a").heavy());
    CHECK(builtin_scenario("t1c").heavy());
    CHECK(builtin_scenario("t3a").heavy());
    CHECK(builtin_scenario("f7").heavy());

    for (const auto& sc : all) CHECK_NOTHROW(sc.build_grid());
}

TEST_CASE("every bundled scenario round-trips through the file format") {
    for (const auto& sc : builtin_scenarios()) {
        const std::string text = format_scenario(sc);
        const Scenario parsed = parse_scenario(text);
        CHECK(parsed == sc);
        CHECK(format_scenario(parsed) == text);
    }
}

TEST_CASE("scenario files save and load") {
    const auto dir = std::filesystem::temp_directory_path() / "bdsg_scenario_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "t5.scn";
    save_scenario(builtin_scenario("t5"), path);
    const Scenario loaded = load_scenario(path);
    CHECK(loaded == builtin_scenario("t5"));
    CHECK(resolve_scenario(path.string()) == builtin_scenario("t5"));
    std::filesystem::remove_all(dir);

    CHECK(resolve_scenario("anderson") == builtin_scenario("anderson"));
    CHECK_THROWS_AS(resolve_scenario("not-a-scenario"), ScenarioError);
}

TEST_CASE("parser rejects malformed documents") {
    CHECK_THROWS_AS(parse_scenario("[nope]\n"), ScenarioError);
    CHECK_THROWS_AS(parse_scenario("[grid]\nepsilon = 0.25\nwhat = 3\n"), ScenarioError);
    CHECK_THROWS_AS(parse_scenario("[grid]\ndx = 0.1\n"), ScenarioError);
    CHECK_THROWS_AS(parse_scenario("[expect]\nbogus_key = 1\n"), ScenarioError);
    CHECK_THROWS_AS(parse_scenario("stray = 1\n"), ScenarioError);
    CHECK_THROWS_AS(parse_scenario("[gpc]\nsplitting = whatever\n"), ScenarioError);
    CHECK_THROWS_AS(parse_scenario("[methods]\nuse = magic\n"), ScenarioError);
}

TEST_CASE("parser accepts rationals and comments") {
    const Scenario sc = parse_scenario("name = demo\n"
                                       "[grid]\n"
                                       "epsilon = 1/4  # quarter\n"
                                       "dx = pi/64\n"
                                       "[time]\n"
                                       "T = 1/2\n"
                                       "dt = 1/8\n");
    CHECK(sc.name == "demo");
    CHECK(sc.epsilon == 0.25);
    CHECK(sc.dx_denominator == 64);
    CHECK(sc.final_time == 0.5);
    CHECK(sc.dt == 0.125);
    CHECK(sc.points_per_cell() == 32);
}

TEST_CASE("incompatible dx is rejected when the grid is built") {
    Scenario sc;
    sc.epsilon = 1.0 / 3.0;
    sc.dx_denominator = 64; // 2*64 not divisible by 3
    CHECK_THROWS_AS(sc.points_per_cell(), ScenarioError);
}

TEST_CASE("array container round trip") {
    ArrayFile file;
    file.header["kind"] = "demo";
    file.add_real("a", {1.0, -2.5, 3.25});
    file.add_complex("b", {{0.0, 1.0}, {2.0, -3.0}});

    const auto dir = std::filesystem::temp_directory_path() / "bdsg_arrayfile_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "demo.bin";
    file.save(path);
    const ArrayFile loaded = ArrayFile::load(path);
    CHECK(loaded.header.at("kind") == "demo");
    CHECK(loaded.real_arrays.at("a") == file.real_arrays.at("a"));
    CHECK(loaded.complex_arrays.at("b") == file.complex_arrays.at("b"));

    const auto path2 = dir / "demo2.bin";
    loaded.save(path2);
    std::ifstream a(path, std::ios::binary), b(path2, std::ios::binary);
    const std::string bytes_a((std::istreambuf_iterator<char>(a)), {});
    const std::string bytes_b((std::istreambuf_iterator<char>(b)), {});
    CHECK(bytes_a == bytes_b);
    std::filesystem::remove_all(dir);
}

TEST_CASE("g17 formatting survives a parse round trip") {
    for (double v : {1.0 / 3.0, 0.1, 1e-17, 123456.789, 2.0 / 7.0}) {
        const std::string s = format_g17(v);
        CHECK(std::stod(s) == v);
    }
}

} // TEST_SUITE
