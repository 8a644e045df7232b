#include <doctest.h>

#include <fstream>
#include <sstream>

#include "leoho/format.hpp"
#include "leoho/scenario.hpp"

using namespace leoho;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("leoho_test_scenario_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string config_errors(std::string_view text) {
    try {
        require_valid(parse_config(text));
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

ScenarioConfig short_run(const std::string& name) {
    ScenarioConfig cfg;
    cfg.planner.horizon_s = 600.0;
    cfg.planner.lambdas_s = {60.0, 150.0};
    cfg.output.directory = scratch(name);
    return cfg;
}

}  // namespace

TEST_CASE("defaults describe the Starlink shell over Ottawa") {
    const ScenarioConfig cfg = parse_config("");
    CHECK(cfg.constellation.shell.satellite_count() == 1584);
    CHECK(cfg.constellation.shell.altitude_m == 550e3);
    CHECK(cfg.channel.carrier_frequency_hz == 11.9e9);
    CHECK(cfg.channel.bandwidth_hz == 10e6);
    CHECK(cfg.channel.noise_psd_dbm_hz == -173.0);
    CHECK(cfg.baseline.threshold_rad == doctest::Approx(deg2rad(10.0)));
    CHECK(cfg.planner.weight_delay == 0.5);
    CHECK(cfg.planner.weight_rate == 0.5);
    CHECK(cfg.planner.horizon_s == 1800.0);
    CHECK(validate_config(cfg).empty());
}

TEST_CASE("parse_config reads every section") {
    const ScenarioConfig cfg = parse_config(
        "; comment\n"
        "[constellation]\nplanes = 4\nsats_per_plane = 9\naltitude_m = 600000\ninclination_deg = 70\n"
        "[user]\nlatitude_deg = -33.9\nlongitude_deg = 18.4\nmin_elevation_deg = 25\n"
        "[channel]\ntx_power_dbw = 20\nrician_factor_db = 10\nfading_sign = attenuating\n"
        "[planner]\nhorizon_s = 1200\nlambda_s = 100, 200,300\nweight_delay = 0.25\nweight_rate = 0.75\nstart_sat = 17\n"
        "[baseline]\nthreshold_deg = 15\ndecision_step_s = 5\n"
        "# comment\n[output]\ndirectory = results\nemit_svg = false\nseed = 12\n");
    CHECK(cfg.constellation.shell.planes == 4);
    CHECK(cfg.constellation.shell.inclination_rad == doctest::Approx(deg2rad(70.0)));
    CHECK(cfg.user.latitude_rad == doctest::Approx(deg2rad(-33.9)));
    CHECK(cfg.user.min_elevation_rad == doctest::Approx(deg2rad(25.0)));
    CHECK(cfg.channel.tx_power_w == doctest::Approx(100.0));
    CHECK(cfg.channel.rician_factor == doctest::Approx(10.0));
    CHECK(cfg.channel.fading_sign == FadingSign::Attenuating);
    CHECK(cfg.planner.lambdas_s == std::vector<double>{100, 200, 300});
    CHECK(cfg.planner.start == StartPolicy::Fixed);
    CHECK(cfg.planner.start_sat == SatId(17));
    CHECK(cfg.baseline.decision_step_s == 5.0);
    CHECK(cfg.output.directory == "results");
    CHECK_FALSE(cfg.output.emit_svg);
    CHECK(cfg.output.seed == 12);
}

TEST_CASE("configuration errors name the offending key") {
    CHECK(config_errors("[planner]\nweight_delay = 0.7\n").find("planner.weight_delay") != std::string::npos);
    CHECK(config_errors("[planner]\nlambda_s = 170\n").find("planner.lambda_s") != std::string::npos);
    CHECK(config_errors("[planner]\nlambda_s = 150,150\n").find("duplicate") != std::string::npos);
    CHECK(config_errors("[planner]\nhorizon_s = abc\n").find("planner.horizon_s") != std::string::npos);
    CHECK(config_errors("[planner]\nstart_sat = maybe\n").find("planner.start_sat") != std::string::npos);
    CHECK(config_errors("[planner]\nsample_step_s = 400\n").find("planner.sample_step_s") != std::string::npos);
    CHECK(config_errors("[user]\nlatitude_deg = 100\n").find("user.latitude_deg") != std::string::npos);
    CHECK(config_errors("[channel]\nbandwidth_hz = 0\n").find("channel.bandwidth_hz") != std::string::npos);
    CHECK(config_errors("[channel]\nfading_sign = up\n").find("channel.fading_sign") != std::string::npos);
    CHECK(config_errors("[baseline]\nthreshold_deg = 95\n").find("baseline.threshold_deg") != std::string::npos);
    CHECK(config_errors("[constellation]\nsource = file\n").find("constellation.ephemeris_file") != std::string::npos);
    CHECK(config_errors("[constellation]\nplanes = 0\n").find("constellation.planes") != std::string::npos);
    CHECK(config_errors("[bogus]\nx = 1\n").find("bogus") != std::string::npos);
    CHECK(config_errors("[user]\nheight = 3\n").find("user.height: unknown key") != std::string::npos);
    CHECK(config_errors("[output]\nemit_svg = yes\n").find("output.emit_svg") != std::string::npos);

    // Every problem is reported at once.
    const std::string many = config_errors("[planner]\nweight_delay = 0.7\n[channel]\nbandwidth_hz = -1\n");
    CHECK(many.find("planner.weight_delay") != std::string::npos);
    CHECK(many.find("channel.bandwidth_hz") != std::string::npos);

    CHECK_THROWS_AS(parse_config("[planner\nhorizon_s = 1\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/leoho.ini"), IoError);
}

TEST_CASE("parse_lambda_list") {
    CHECK(parse_lambda_list("120,150, 180 ,300") == std::vector<double>{120, 150, 180, 300});
    CHECK(parse_lambda_list("150") == std::vector<double>{150});
    CHECK_THROWS_AS(parse_lambda_list("150,,300"), ConfigError);
    CHECK_THROWS_AS(parse_lambda_list("fast"), ConfigError);
    CHECK_THROWS_AS(parse_lambda_list(""), ConfigError);
}

TEST_CASE("method labels use the slot length in minutes") {
    CHECK(gm_label(120.0) == "GM-4");
    CHECK(gm_label(150.0) == "GM-5");
    CHECK(gm_label(180.0) == "GM-6");
    CHECK(gm_label(300.0) == "GM-10");
}

TEST_CASE("write_file_atomic replaces the target and leaves no temporary behind") {
    const fs::path dir = scratch("atomic");
    const fs::path target = dir / "nested" / "a.csv";
    write_file_atomic(target, "one\n");
    write_file_atomic(target, "two\n");
    CHECK(slurp(target) == "two\n");
    std::size_t files = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(target.parent_path())) ++files;
    CHECK(files == 1);
    fs::create_directories(dir / "blocker");
    CHECK_THROWS_AS(write_file_atomic(dir / "blocker", "x"), IoError);
    fs::remove_all(dir);
}

TEST_CASE("constellation command for a single satellite") {
    ScenarioConfig cfg;
    cfg.constellation.shell.planes = 1;
    cfg.constellation.shell.sats_per_plane = 1;
    cfg.constellation.horizon_s = 0.0;
    cfg.output.directory = scratch("one_sat");
    const CommandResult r = run_constellation(cfg);
    REQUIRE(r.artifacts.size() == 1);
    CHECK(r.artifacts[0].filename() == "ephemeris.csv");
    std::istringstream in(slurp(r.artifacts[0]));
    const auto eph = read_ephemeris_csv(in);
    CHECK(eph.satellite_count() == 1);
    CHECK(eph.epoch_count() == 1);
    fs::remove_all(cfg.output.directory);
}

TEST_CASE("an ephemeris file shorter than the horizon is a configuration error") {
    const fs::path dir = scratch("short_file");
    ScenarioConfig gen;
    gen.constellation.horizon_s = 100.0;
    gen.output.directory = dir;
    run_constellation(gen);

    ScenarioConfig cfg;
    cfg.constellation.source = ConstellationSource::File;
    cfg.constellation.ephemeris_file = dir / "ephemeris.csv";
    CHECK_THROWS_AS(build_ephemeris(cfg), ConfigError);
    cfg.planner.horizon_s = 100.0;
    cfg.planner.lambdas_s = {50.0};
    CHECK(build_ephemeris(cfg).satellite_count() == 1584);
    fs::remove_all(dir);
}

TEST_CASE("relative ephemeris paths resolve against the config file") {
    const fs::path dir = scratch("relative");
    fs::create_directories(dir);
    {
        std::ofstream(dir / "scenario.ini") << "[constellation]\nsource = file\nephemeris_file = eph/table.csv\n";
    }
    const ScenarioConfig cfg = load_config(dir / "scenario.ini");
    CHECK(cfg.constellation.ephemeris_file == dir / "eph" / "table.csv");
    fs::remove_all(dir);
}

TEST_CASE("plan, baseline and compare on a short horizon") {
    const ScenarioConfig cfg = short_run("compare");
    const ConstellationEphemeris eph = build_ephemeris(cfg);
    const auto start = resolve_start(cfg, eph);
    REQUIRE(start);

    const GraphRun gm = run_graph_method(cfg, eph, 150.0, start);
    CHECK(gm.grid.slot_count == 2);
    CHECK(gm.plan.segments.front().sat_id == *start);
    CHECK(gm.plan.handover_epochs_s.size() <= 1);
    CHECK(gm.series.samples.size() == 61);
    CHECK(gm.complexity.vertices == gm.instances.size() + 2);

    const ThresholdRun th = run_threshold_method(cfg, eph, start);
    CHECK(th.plan.segments.front().sat_id == *start);

    const CommandResult plan = run_plan(cfg);
    CHECK(plan.artifacts.size() == 8);
    CHECK(fs::exists(cfg.output.directory / "instances_GM-5.csv"));
    CHECK(fs::exists(cfg.output.directory / "rate_GM-2.svg"));

    const CommandResult base = run_baseline(cfg);
    CHECK(base.artifacts.size() == 3);

    const CommandResult cmp = run_compare(cfg);
    CHECK(cmp.report.find("start satellite: " + std::to_string(start->value)) != std::string::npos);
    const std::string pct = slurp(cfg.output.directory / "percentiles.csv");
    CHECK(pct.rfind("p,GM-2,GM-5,TH\n", 0) == 0);
    CHECK(pct.find("\n0.2,") != std::string::npos);
    const std::string ho = slurp(cfg.output.directory / "handovers.csv");
    CHECK(ho.rfind("method,lambda_s,handovers\nGM-2,60,", 0) == 0);
    CHECK(ho.find("\nTH,,") != std::string::npos);
    CHECK(slurp(cfg.output.directory / "cdf.csv").rfind("method,rate_bps,fraction\nGM-2,", 0) == 0);
    fs::remove_all(cfg.output.directory);
}

TEST_CASE("compare output is byte-identical across runs") {
    ScenarioConfig a = short_run("det_a"), b = short_run("det_b");
    const CommandResult ra = run_compare(a), rb = run_compare(b);
    REQUIRE(ra.artifacts.size() == rb.artifacts.size());
    CHECK(ra.report == rb.report);
    for (std::size_t i = 0; i < ra.artifacts.size(); ++i) {
        CHECK(ra.artifacts[i].filename() == rb.artifacts[i].filename());
        CHECK(slurp(ra.artifacts[i]) == slurp(rb.artifacts[i]));
    }
    fs::remove_all(a.output.directory);
    fs::remove_all(b.output.directory);
}

TEST_CASE("complexity command") {
    ScenarioConfig cfg;
    cfg.planner.lambdas_s = {300.0, 150.0};
    cfg.output.directory = scratch("complexity");
    cfg.output.emit_svg = false;
    const CommandResult r = run_complexity(cfg);
    REQUIRE(r.artifacts.size() == 1);
    const std::string csv = slurp(r.artifacts[0]);
    std::istringstream in(csv);
    std::string header, first, second;
    std::getline(in, header);
    std::getline(in, first);
    std::getline(in, second);
    CHECK(header == "lambda_s,n,V,E,ops");
    CHECK(first.rfind("150,6,9506,12548448,", 0) == 0);
    CHECK(second.rfind("300,3,", 0) == 0);
    fs::remove_all(cfg.output.directory);
}

TEST_CASE("random constellation follows the seed") {
    ScenarioConfig a, b;
    a.constellation.source = b.constellation.source = ConstellationSource::Random;
    a.planner.horizon_s = b.planner.horizon_s = 100.0;
    a.planner.lambdas_s = b.planner.lambdas_s = {50.0};
    a.output.seed = 1;
    b.output.seed = 2;
    CHECK(build_ephemeris(a) == build_ephemeris(a));
    CHECK_FALSE(build_ephemeris(a) == build_ephemeris(b));
    CHECK(build_ephemeris(a).satellite_count() == 64);
}

TEST_CASE("a pinned start that is not eligible is a coverage gap") {
    ScenarioConfig cfg = short_run("bad_start");
    cfg.planner.start = StartPolicy::Fixed;
    const ConstellationEphemeris eph = build_ephemeris(cfg);
    // Pick a satellite far below the horizon at t = 0.
    const Vec3 user = geodetic_to_ecef(cfg.user);
    for (std::size_t s = 0; s < eph.satellite_count(); ++s)
        if (elevation_angle(user, eph.at(0, s)) < -0.5) {
            cfg.planner.start_sat = eph.sat_ids()[s];
            break;
        }
    CHECK_THROWS_AS(run_graph_method(cfg, eph, 150.0, resolve_start(cfg, eph)), CoverageGap);
    CHECK(resolve_start(cfg, eph) == cfg.planner.start_sat);
    cfg.planner.start = StartPolicy::None;
    CHECK_FALSE(resolve_start(cfg, eph));
}
