#include <cstring>
#include <memory>
#include <sstream>
#include <string>

#include "leoho/leoho.h"
#include "leoho/format.hpp"
#include "leoho/scenario.hpp"

struct leoho_scenario {
    leoho::ScenarioConfig config;
    std::string report;
    std::vector<std::string> artifacts;
};

struct leoho_ephemeris {
    leoho::ConstellationEphemeris eph;
};

struct leoho_plan {
    leoho::HandoverPlan plan;
    leoho::RateSeries series;
};

namespace {

thread_local std::string g_last_error;

leoho_status fail(leoho_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

// Runs fn, translating exceptions into status codes.
template <class Fn>
leoho_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return LEOHO_OK;
    } catch (const leoho::ConfigError& e) {
        return fail(LEOHO_ERR_CONFIG, e.what());
    } catch (const leoho::CoverageGap& e) {
        return fail(LEOHO_ERR_COVERAGE_GAP, e.what());
    } catch (const leoho::IoError& e) {
        return fail(LEOHO_ERR_IO, e.what());
    } catch (const leoho::ParseError& e) {
        return fail(LEOHO_ERR_PARSE, e.what());
    } catch (const leoho::OutOfRange& e) {
        return fail(LEOHO_ERR_OUT_OF_RANGE, e.what());
    } catch (const leoho::InvalidPlan& e) {
        return fail(LEOHO_ERR_INVALID_PLAN, e.what());
    } catch (const leoho::InvalidArgument& e) {
        return fail(LEOHO_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::filesystem::filesystem_error& e) {
        return fail(LEOHO_ERR_IO, e.what());
    } catch (const std::exception& e) {
        return fail(LEOHO_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(LEOHO_ERR_INTERNAL, "unknown error");
    }
}

#define LEOHO_REQUIRE(cond)                                                        \
    do {                                                                           \
        if (!(cond)) return fail(LEOHO_ERR_INVALID_ARGUMENT, "null argument: " #cond); \
    } while (0)

}  // namespace

extern "C" {

const char* leoho_version(void) { return "1.0.0"; }

const char* leoho_last_error(void) { return g_last_error.c_str(); }

const char* leoho_status_name(leoho_status status) {
    switch (status) {
        case LEOHO_OK: return "ok";
        case LEOHO_ERR_CONFIG: return "config error";
        case LEOHO_ERR_COVERAGE_GAP: return "coverage gap";
        case LEOHO_ERR_IO: return "I/O error";
        case LEOHO_ERR_INVALID_ARGUMENT: return "invalid argument";
        case LEOHO_ERR_OUT_OF_RANGE: return "out of range";
        case LEOHO_ERR_PARSE: return "parse error";
        case LEOHO_ERR_INVALID_PLAN: return "invalid plan";
        case LEOHO_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

leoho_status leoho_scenario_default(leoho_scenario** out) {
    LEOHO_REQUIRE(out);
    return guarded([&] { *out = new leoho_scenario{}; });
}

leoho_status leoho_scenario_from_file(const char* path, leoho_scenario** out) {
    LEOHO_REQUIRE(path && out);
    return guarded([&] { *out = new leoho_scenario{leoho::load_config(path), {}, {}}; });
}

leoho_status leoho_scenario_from_string(const char* text, leoho_scenario** out) {
    LEOHO_REQUIRE(text && out);
    return guarded([&] { *out = new leoho_scenario{leoho::parse_config(text), {}, {}}; });
}

void leoho_scenario_free(leoho_scenario* scenario) { delete scenario; }

leoho_status leoho_scenario_set_output_dir(leoho_scenario* scenario, const char* dir) {
    LEOHO_REQUIRE(scenario && dir);
    return guarded([&] { scenario->config.output.directory = dir; });
}

leoho_status leoho_scenario_set_lambdas(leoho_scenario* scenario, const double* lambdas_s, size_t count) {
    LEOHO_REQUIRE(scenario && (lambdas_s || count == 0));
    return guarded([&] { scenario->config.planner.lambdas_s.assign(lambdas_s, lambdas_s + count); });
}

leoho_status leoho_scenario_set_lambda_list(leoho_scenario* scenario, const char* list) {
    LEOHO_REQUIRE(scenario && list);
    return guarded([&] { scenario->config.planner.lambdas_s = leoho::parse_lambda_list(list); });
}

leoho_status leoho_scenario_set_seed(leoho_scenario* scenario, uint64_t seed) {
    LEOHO_REQUIRE(scenario);
    return guarded([&] { scenario->config.output.seed = seed; });
}

leoho_status leoho_scenario_validate(const leoho_scenario* scenario) {
    LEOHO_REQUIRE(scenario);
    return guarded([&] { leoho::require_valid(scenario->config); });
}

leoho_status leoho_run(leoho_scenario* scenario, leoho_command command) {
    LEOHO_REQUIRE(scenario);
    return guarded([&] {
        leoho::CommandResult result;
        switch (command) {
            case LEOHO_CMD_CONSTELLATION: result = leoho::run_constellation(scenario->config); break;
            case LEOHO_CMD_PLAN: result = leoho::run_plan(scenario->config); break;
            case LEOHO_CMD_BASELINE: result = leoho::run_baseline(scenario->config); break;
            case LEOHO_CMD_COMPARE: result = leoho::run_compare(scenario->config); break;
            case LEOHO_CMD_COMPLEXITY: result = leoho::run_complexity(scenario->config); break;
            default: throw leoho::InvalidArgument("unknown command");
        }
        scenario->report = std::move(result.report);
        scenario->artifacts.clear();
        for (const auto& p : result.artifacts) scenario->artifacts.push_back(p.string());
    });
}

const char* leoho_scenario_report(const leoho_scenario* scenario) {
    return scenario ? scenario->report.c_str() : "";
}

size_t leoho_scenario_artifact_count(const leoho_scenario* scenario) {
    return scenario ? scenario->artifacts.size() : 0;
}

const char* leoho_scenario_artifact(const leoho_scenario* scenario, size_t index) {
    if (!scenario || index >= scenario->artifacts.size()) return nullptr;
    return scenario->artifacts[index].c_str();
}

leoho_shell leoho_shell_starlink_phase1(void) {
    const leoho::OrbitalShell s;
    return {s.planes, s.sats_per_plane, s.altitude_m, s.inclination_rad, s.phasing_offset, s.raan_spread_rad};
}

leoho_status leoho_ephemeris_generate_walker(const leoho_shell* shell, double horizon_s, double step_s,
                                             leoho_ephemeris** out) {
    LEOHO_REQUIRE(shell && out);
    return guarded([&] {
        const leoho::OrbitalShell s{shell->planes,         shell->sats_per_plane, shell->altitude_m,
                                    shell->inclination_rad, shell->phasing_offset, shell->raan_spread_rad};
        *out = new leoho_ephemeris{leoho::generate_walker(s, horizon_s, step_s)};
    });
}

leoho_status leoho_scenario_ephemeris(const leoho_scenario* scenario, leoho_ephemeris** out) {
    LEOHO_REQUIRE(scenario && out);
    return guarded([&] {
        leoho::require_valid(scenario->config);
        *out = new leoho_ephemeris{leoho::build_ephemeris(scenario->config)};
    });
}

leoho_status leoho_ephemeris_load(const char* path, leoho_ephemeris** out) {
    LEOHO_REQUIRE(path && out);
    return guarded([&] { *out = new leoho_ephemeris{leoho::load_ephemeris(path)}; });
}

leoho_status leoho_ephemeris_save(const leoho_ephemeris* eph, const char* path) {
    LEOHO_REQUIRE(eph && path);
    return guarded([&] {
        std::ostringstream out;
        leoho::write_ephemeris_csv(eph->eph, out);
        leoho::write_file_atomic(path, out.str());
    });
}

void leoho_ephemeris_free(leoho_ephemeris* eph) { delete eph; }

size_t leoho_ephemeris_satellite_count(const leoho_ephemeris* eph) { return eph ? eph->eph.satellite_count() : 0; }

size_t leoho_ephemeris_epoch_count(const leoho_ephemeris* eph) { return eph ? eph->eph.epoch_count() : 0; }

leoho_status leoho_ephemeris_position(const leoho_ephemeris* eph, uint32_t sat_id, double t_s, double xyz_m[3]) {
    LEOHO_REQUIRE(eph && xyz_m);
    return guarded([&] {
        const leoho::Vec3 p = eph->eph.position_at(leoho::SatId(sat_id), t_s);
        xyz_m[0] = p.x;
        xyz_m[1] = p.y;
        xyz_m[2] = p.z;
    });
}

leoho_status leoho_plan_graph(const leoho_scenario* scenario, const leoho_ephemeris* eph, double lambda_s,
                              leoho_plan** out) {
    LEOHO_REQUIRE(scenario && eph && out);
    return guarded([&] {
        leoho::ScenarioConfig cfg = scenario->config;
        cfg.planner.lambdas_s = {lambda_s};
        leoho::require_valid(cfg);
        leoho::GraphRun run = leoho::run_graph_method(cfg, eph->eph, lambda_s, leoho::resolve_start(cfg, eph->eph));
        *out = new leoho_plan{std::move(run.plan), std::move(run.series)};
    });
}

leoho_status leoho_plan_threshold(const leoho_scenario* scenario, const leoho_ephemeris* eph, leoho_plan** out) {
    LEOHO_REQUIRE(scenario && eph && out);
    return guarded([&] {
        leoho::require_valid(scenario->config);
        leoho::ThresholdRun run =
            leoho::run_threshold_method(scenario->config, eph->eph, leoho::resolve_start(scenario->config, eph->eph));
        *out = new leoho_plan{std::move(run.plan), std::move(run.series)};
    });
}

void leoho_plan_free(leoho_plan* plan) { delete plan; }

size_t leoho_plan_segment_count(const leoho_plan* plan) { return plan ? plan->plan.segments.size() : 0; }

leoho_status leoho_plan_segment(const leoho_plan* plan, size_t index, leoho_segment* out) {
    LEOHO_REQUIRE(plan && out);
    if (index >= plan->plan.segments.size()) return fail(LEOHO_ERR_OUT_OF_RANGE, "segment index out of range");
    const leoho::PlanSegment& seg = plan->plan.segments[index];
    *out = {seg.sat_id.value, seg.slot, seg.start_s, seg.end_s, seg.handover_at_s ? 1 : 0,
            seg.handover_at_s.value_or(0.0)};
    return LEOHO_OK;
}

size_t leoho_plan_handover_count(const leoho_plan* plan) { return plan ? leoho::count_handovers(plan->plan) : 0; }

double leoho_plan_total_cost(const leoho_plan* plan) { return plan ? plan->plan.total_cost : 0.0; }

size_t leoho_plan_sample_count(const leoho_plan* plan) { return plan ? plan->series.samples.size() : 0; }

leoho_status leoho_plan_sample(const leoho_plan* plan, size_t index, double* t_s, double* rate_bps,
                               uint32_t* serving_sat) {
    LEOHO_REQUIRE(plan);
    if (index >= plan->series.samples.size()) return fail(LEOHO_ERR_OUT_OF_RANGE, "sample index out of range");
    const leoho::RateSample& s = plan->series.samples[index];
    if (t_s) *t_s = s.t_s;
    if (rate_bps) *rate_bps = s.rate_bps;
    if (serving_sat) *serving_sat = s.serving.value;
    return LEOHO_OK;
}

leoho_status leoho_plan_percentile(const leoho_plan* plan, double p, double* rate_bps) {
    LEOHO_REQUIRE(plan && rate_bps);
    return guarded([&] { *rate_bps = leoho::percentile(plan->series, p); });
}

leoho_status leoho_solve_layered(const size_t* counts, size_t slots, const double* weights, int brute_force,
                                 size_t* choice, double* cost) {
    LEOHO_REQUIRE(counts && weights && choice && cost && slots > 0);
    return guarded([&] {
        std::vector<leoho::SatelliteInstance> instances;
        std::size_t w = 0;
        for (std::size_t slot = 0; slot < slots; ++slot)
            for (std::size_t j = 0; j < counts[slot]; ++j) {
                leoho::SatelliteInstance inst;
                inst.sat_id = leoho::SatId(static_cast<std::uint32_t>(j));
                inst.slot = slot + 1;
                inst.weight = weights[w++];
                instances.push_back(std::move(inst));
            }
        const leoho::HandoverGraph graph(std::move(instances), slots);
        const leoho::PathResult path = brute_force ? leoho::brute_force_plan(graph) : leoho::shortest_path(graph);
        for (std::size_t k = 1; k + 1 < path.nodes.size(); ++k)
            choice[k - 1] = graph.instance(path.nodes[k]).sat_id.value;
        *cost = path.total_cost;
    });
}

leoho_status leoho_complexity_full(uint64_t satellites, uint64_t slots, leoho_complexity* out) {
    LEOHO_REQUIRE(out);
    return guarded([&] {
        const leoho::ComplexityReport r = leoho::complexity_report(satellites, slots);
        *out = {r.vertices, r.edges, r.op_estimate};
    });
}

}  // extern "C"
