/*
 * leoho: time-expanded graph handover planning for LEO constellations.
 *
 * Plain C interface to the planner core. Every object is an opaque handle
 * owned by the caller and released with the matching *_free function. Every
 * fallible call returns a leoho_status; on failure leoho_last_error() holds a
 * human-readable message for the calling thread.
 */
#ifndef LEOHO_H
#define LEOHO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(LEOHO_BUILDING)
#define LEOHO_API __declspec(dllexport)
#else
#define LEOHO_API __declspec(dllimport)
#endif
#else
#define LEOHO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* The first four values double as CLI exit codes. */
typedef enum leoho_status {
    LEOHO_OK = 0,
    LEOHO_ERR_CONFIG = 1,
    LEOHO_ERR_COVERAGE_GAP = 2,
    LEOHO_ERR_IO = 3,
    LEOHO_ERR_INVALID_ARGUMENT = 4,
    LEOHO_ERR_OUT_OF_RANGE = 5,
    LEOHO_ERR_PARSE = 6,
    LEOHO_ERR_INVALID_PLAN = 7,
    LEOHO_ERR_INTERNAL = 8
} leoho_status;

typedef enum leoho_command {
    LEOHO_CMD_CONSTELLATION = 0,
    LEOHO_CMD_PLAN = 1,
    LEOHO_CMD_BASELINE = 2,
    LEOHO_CMD_COMPARE = 3,
    LEOHO_CMD_COMPLEXITY = 4
} leoho_command;

typedef struct leoho_scenario leoho_scenario;
typedef struct leoho_ephemeris leoho_ephemeris;
typedef struct leoho_plan leoho_plan;

typedef struct leoho_shell {
    uint32_t planes;
    uint32_t sats_per_plane;
    double altitude_m;
    double inclination_rad;
    double phasing_offset;
    double raan_spread_rad;
} leoho_shell;

typedef struct leoho_segment {
    uint32_t sat_id;
    size_t slot;
    double start_s;
    double end_s;
    int has_handover;
    double handover_at_s;
} leoho_segment;

typedef struct leoho_complexity {
    uint64_t vertices;
    uint64_t edges;
    double op_estimate;
} leoho_complexity;

LEOHO_API const char* leoho_version(void);
LEOHO_API const char* leoho_last_error(void);
LEOHO_API const char* leoho_status_name(leoho_status status);

/* Scenario configuration and the CLI commands. */
LEOHO_API leoho_status leoho_scenario_default(leoho_scenario** out);
LEOHO_API leoho_status leoho_scenario_from_file(const char* path, leoho_scenario** out);
LEOHO_API leoho_status leoho_scenario_from_string(const char* text, leoho_scenario** out);
LEOHO_API void leoho_scenario_free(leoho_scenario* scenario);
LEOHO_API leoho_status leoho_scenario_set_output_dir(leoho_scenario* scenario, const char* dir);
LEOHO_API leoho_status leoho_scenario_set_lambdas(leoho_scenario* scenario, const double* lambdas_s, size_t count);
/* Comma separated seconds, e.g. "120,150,180,300". */
LEOHO_API leoho_status leoho_scenario_set_lambda_list(leoho_scenario* scenario, const char* list);
LEOHO_API leoho_status leoho_scenario_set_seed(leoho_scenario* scenario, uint64_t seed);
LEOHO_API leoho_status leoho_scenario_validate(const leoho_scenario* scenario);

/* Runs one command; artifacts go to the output directory. The report and
 * artifact list of the last successful run stay readable on the handle. */
LEOHO_API leoho_status leoho_run(leoho_scenario* scenario, leoho_command command);
LEOHO_API const char* leoho_scenario_report(const leoho_scenario* scenario);
LEOHO_API size_t leoho_scenario_artifact_count(const leoho_scenario* scenario);
LEOHO_API const char* leoho_scenario_artifact(const leoho_scenario* scenario, size_t index);

/* Ephemerides. */
LEOHO_API leoho_shell leoho_shell_starlink_phase1(void);
LEOHO_API leoho_status leoho_ephemeris_generate_walker(const leoho_shell* shell, double horizon_s, double step_s,
                                                       leoho_ephemeris** out);
LEOHO_API leoho_status leoho_scenario_ephemeris(const leoho_scenario* scenario, leoho_ephemeris** out);
LEOHO_API leoho_status leoho_ephemeris_load(const char* path, leoho_ephemeris** out);
LEOHO_API leoho_status leoho_ephemeris_save(const leoho_ephemeris* eph, const char* path);
LEOHO_API void leoho_ephemeris_free(leoho_ephemeris* eph);
LEOHO_API size_t leoho_ephemeris_satellite_count(const leoho_ephemeris* eph);
LEOHO_API size_t leoho_ephemeris_epoch_count(const leoho_ephemeris* eph);
LEOHO_API leoho_status leoho_ephemeris_position(const leoho_ephemeris* eph, uint32_t sat_id, double t_s,
                                                double xyz_m[3]);

/* Plans, replayed against the ephemeris with the scenario's channel. */
LEOHO_API leoho_status leoho_plan_graph(const leoho_scenario* scenario, const leoho_ephemeris* eph, double lambda_s,
                                        leoho_plan** out);
LEOHO_API leoho_status leoho_plan_threshold(const leoho_scenario* scenario, const leoho_ephemeris* eph,
                                            leoho_plan** out);
LEOHO_API void leoho_plan_free(leoho_plan* plan);
LEOHO_API size_t leoho_plan_segment_count(const leoho_plan* plan);
LEOHO_API leoho_status leoho_plan_segment(const leoho_plan* plan, size_t index, leoho_segment* out);
LEOHO_API size_t leoho_plan_handover_count(const leoho_plan* plan);
LEOHO_API double leoho_plan_total_cost(const leoho_plan* plan);
LEOHO_API size_t leoho_plan_sample_count(const leoho_plan* plan);
LEOHO_API leoho_status leoho_plan_sample(const leoho_plan* plan, size_t index, double* t_s, double* rate_bps,
                                         uint32_t* serving_sat);
LEOHO_API leoho_status leoho_plan_percentile(const leoho_plan* plan, double p, double* rate_bps);

/* Minimum-weight path through a layered graph given per-instance weights.
 * counts[i] instances in slot i; weights are laid out slot after slot.
 * choice[i] receives the chosen instance index within slot i. */
LEOHO_API leoho_status leoho_solve_layered(const size_t* counts, size_t slots, const double* weights,
                                           int brute_force, size_t* choice, double* cost);

LEOHO_API leoho_status leoho_complexity_full(uint64_t satellites, uint64_t slots, leoho_complexity* out);

#ifdef __cplusplus
}
#endif

#endif /* LEOHO_H */
