#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "leoho/leoho.h"

namespace fs = std::filesystem;

namespace {

struct Scenario {
    leoho_scenario* p = nullptr;
    ~Scenario() { leoho_scenario_free(p); }
};
struct Ephemeris {
    leoho_ephemeris* p = nullptr;
    ~Ephemeris() { leoho_ephemeris_free(p); }
};
struct Plan {
    leoho_plan* p = nullptr;
    ~Plan() { leoho_plan_free(p); }
};

fs::path scratch(const char* name) {
    const fs::path dir = fs::temp_directory_path() / (std::string("leoho_test_capi_") + name);
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("version and status names") {
    CHECK(std::strcmp(leoho_version(), "1.0.0") == 0);
    CHECK(std::strcmp(leoho_status_name(LEOHO_OK), "ok") == 0);
    CHECK(std::strcmp(leoho_status_name(LEOHO_ERR_COVERAGE_GAP), "coverage gap") == 0);
}

TEST_CASE("null arguments are rejected with a message") {
    CHECK(leoho_scenario_default(nullptr) == LEOHO_ERR_INVALID_ARGUMENT);
    CHECK(std::strlen(leoho_last_error()) > 0);
    CHECK(leoho_run(nullptr, LEOHO_CMD_PLAN) == LEOHO_ERR_INVALID_ARGUMENT);
    leoho_scenario_free(nullptr);
    leoho_ephemeris_free(nullptr);
    leoho_plan_free(nullptr);
}

TEST_CASE("scenario parsing and validation errors map to config") {
    Scenario s;
    CHECK(leoho_scenario_from_string("[planner]\nweight_delay = heavy\n", &s.p) == LEOHO_ERR_CONFIG);
    CHECK(s.p == nullptr);
    CHECK(std::string(leoho_last_error()).find("planner.weight_delay") != std::string::npos);
    // Range checks wait until validation so that overrides can still apply.
    REQUIRE(leoho_scenario_from_string("[planner]\nweight_delay = 0.9\n", &s.p) == LEOHO_OK);
    CHECK(leoho_scenario_validate(s.p) == LEOHO_ERR_CONFIG);
    CHECK(std::string(leoho_last_error()).find("planner.weight_delay") != std::string::npos);
    leoho_scenario_free(s.p);
    s.p = nullptr;
    CHECK(leoho_scenario_from_file("/nonexistent.ini", &s.p) == LEOHO_ERR_IO);

    REQUIRE(leoho_scenario_default(&s.p) == LEOHO_OK);
    CHECK(leoho_scenario_validate(s.p) == LEOHO_OK);
    CHECK(leoho_scenario_set_lambda_list(s.p, "170") == LEOHO_OK);
    CHECK(leoho_scenario_validate(s.p) == LEOHO_ERR_CONFIG);
    CHECK(leoho_run(s.p, LEOHO_CMD_PLAN) == LEOHO_ERR_CONFIG);
    CHECK(leoho_scenario_set_lambda_list(s.p, "1x0") == LEOHO_ERR_CONFIG);
    const double lambdas[] = {150.0, 180.0};
    CHECK(leoho_scenario_set_lambdas(s.p, lambdas, 2) == LEOHO_OK);
    CHECK(leoho_scenario_validate(s.p) == LEOHO_OK);
}

TEST_CASE("running the complexity command") {
    Scenario s;
    REQUIRE(leoho_scenario_default(&s.p) == LEOHO_OK);
    const fs::path dir = scratch("complexity");
    REQUIRE(leoho_scenario_set_output_dir(s.p, dir.c_str()) == LEOHO_OK);
    REQUIRE(leoho_run(s.p, LEOHO_CMD_COMPLEXITY) == LEOHO_OK);
    CHECK(std::string(leoho_scenario_report(s.p)).find("V = 9506") != std::string::npos);
    REQUIRE(leoho_scenario_artifact_count(s.p) == 2);
    CHECK(fs::path(leoho_scenario_artifact(s.p, 0)).filename() == "complexity.csv");
    CHECK(leoho_scenario_artifact(s.p, 2) == nullptr);
    fs::remove_all(dir);
}

TEST_CASE("ephemeris handles") {
    const leoho_shell shell = leoho_shell_starlink_phase1();
    CHECK(shell.planes == 22);
    CHECK(shell.sats_per_plane == 72);
    Ephemeris e;
    REQUIRE(leoho_ephemeris_generate_walker(&shell, 60.0, 10.0, &e.p) == LEOHO_OK);
    CHECK(leoho_ephemeris_satellite_count(e.p) == 1584);
    CHECK(leoho_ephemeris_epoch_count(e.p) == 7);
    double xyz[3];
    REQUIRE(leoho_ephemeris_position(e.p, 0, 30.0, xyz) == LEOHO_OK);
    CHECK(std::sqrt(xyz[0] * xyz[0] + xyz[1] * xyz[1] + xyz[2] * xyz[2]) == doctest::Approx(6921e3));
    CHECK(leoho_ephemeris_position(e.p, 0, 61.0, xyz) == LEOHO_ERR_OUT_OF_RANGE);
    CHECK(leoho_ephemeris_position(e.p, 99999, 0.0, xyz) == LEOHO_ERR_INVALID_ARGUMENT);

    const fs::path dir = scratch("eph");
    const std::string file = (dir / "eph.csv").string();
    REQUIRE(leoho_ephemeris_save(e.p, file.c_str()) == LEOHO_OK);
    Ephemeris back;
    REQUIRE(leoho_ephemeris_load(file.c_str(), &back.p) == LEOHO_OK);
    CHECK(leoho_ephemeris_epoch_count(back.p) == 7);

    std::FILE* f = std::fopen((dir / "bad.csv").c_str(), "w");
    std::fputs("t_s,sat_id,x_m,y_m,z_m\n0,1,1,2,3\n", f);
    std::fclose(f);
    Ephemeris bad;
    CHECK(leoho_ephemeris_load((dir / "bad.csv").c_str(), &bad.p) == LEOHO_ERR_PARSE);
    CHECK(std::string(leoho_last_error()).find("line 2") != std::string::npos);
    CHECK(leoho_ephemeris_load((dir / "missing.csv").c_str(), &bad.p) == LEOHO_ERR_IO);
    fs::remove_all(dir);
}

TEST_CASE("graph and threshold plans through the C surface") {
    Scenario s;
    REQUIRE(leoho_scenario_from_string("[planner]\nhorizon_s = 600\nlambda_s = 150\n", &s.p) == LEOHO_OK);
    Ephemeris e;
    REQUIRE(leoho_scenario_ephemeris(s.p, &e.p) == LEOHO_OK);

    Plan gm;
    REQUIRE(leoho_plan_graph(s.p, e.p, 150.0, &gm.p) == LEOHO_OK);
    REQUIRE(leoho_plan_segment_count(gm.p) == 2);
    leoho_segment seg;
    REQUIRE(leoho_plan_segment(gm.p, 1, &seg) == LEOHO_OK);
    CHECK(seg.slot == 2);
    CHECK(seg.start_s == 300.0);
    CHECK(seg.end_s == 600.0);
    CHECK(leoho_plan_segment(gm.p, 2, &seg) == LEOHO_ERR_OUT_OF_RANGE);
    CHECK(leoho_plan_handover_count(gm.p) <= 1);
    CHECK(leoho_plan_total_cost(gm.p) >= 0.0);
    CHECK(leoho_plan_sample_count(gm.p) == 61);
    double t = 0, rate = 0, p20 = 0;
    uint32_t sat = 0;
    REQUIRE(leoho_plan_sample(gm.p, 60, &t, &rate, &sat) == LEOHO_OK);
    CHECK(t == 600.0);
    CHECK(rate > 0.0);
    REQUIRE(leoho_plan_percentile(gm.p, 0.2, &p20) == LEOHO_OK);
    CHECK(p20 > 0.0);
    CHECK(leoho_plan_percentile(gm.p, 2.0, &p20) == LEOHO_ERR_INVALID_ARGUMENT);

    Plan bad;
    CHECK(leoho_plan_graph(s.p, e.p, 170.0, &bad.p) == LEOHO_ERR_CONFIG);

    Plan th;
    REQUIRE(leoho_plan_threshold(s.p, e.p, &th.p) == LEOHO_OK);
    REQUIRE(leoho_plan_segment(th.p, 0, &seg) == LEOHO_OK);
    CHECK(seg.start_s == 0.0);
    CHECK(leoho_plan_sample_count(th.p) == 61);
}

TEST_CASE("layered solver") {
    const size_t counts[] = {2, 2};
    const double weights[] = {0.1, 0.8, 0.9, 0.2};
    size_t choice[2];
    double cost = 0.0;
    for (int brute : {0, 1}) {
        REQUIRE(leoho_solve_layered(counts, 2, weights, brute, choice, &cost) == LEOHO_OK);
        CHECK(choice[0] == 0);
        CHECK(choice[1] == 1);
        CHECK(cost == doctest::Approx(0.3));
    }
    const size_t empty_slot[] = {2, 0};
    CHECK(leoho_solve_layered(empty_slot, 2, weights, 0, choice, &cost) == LEOHO_ERR_COVERAGE_GAP);
    CHECK(leoho_solve_layered(counts, 0, weights, 0, choice, &cost) == LEOHO_ERR_INVALID_ARGUMENT);
}

TEST_CASE("complexity model") {
    leoho_complexity c;
    REQUIRE(leoho_complexity_full(1584, 6, &c) == LEOHO_OK);
    CHECK(c.vertices == 9506);
    CHECK(c.edges == 12548448);
    CHECK(leoho_complexity_full(0, 6, &c) == LEOHO_ERR_INVALID_ARGUMENT);
}
