#pragma once

// Scenario configuration and the end-to-end commands behind the CLI.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "leoho/baseline.hpp"
#include "leoho/channel.hpp"
#include "leoho/constellation.hpp"
#include "leoho/eval.hpp"
#include "leoho/geometry.hpp"
#include "leoho/hograph.hpp"
#include "leoho/planner.hpp"

namespace leoho {

enum class ConstellationSource { Walker, File, Random };
enum class StartPolicy { Auto, None, Fixed };

struct ScenarioConfig {
    struct Constellation {
        ConstellationSource source = ConstellationSource::Walker;
        OrbitalShell shell;
        double step_s = 10.0;
        // Ephemeris span for the `constellation` command; planner.horizon_s
        // when unset.
        std::optional<double> horizon_s;
        std::filesystem::path ephemeris_file;
        std::uint32_t random_count = 64;
    } constellation;

    GroundUser user{deg2rad(45.42), deg2rad(284.30), 0.0, deg2rad(10.0)};
    ChannelParams channel;

    struct Planner {
        double horizon_s = 1800.0;
        std::vector<double> lambdas_s{150.0};
        double weight_delay = 0.5;
        double weight_rate = 0.5;
        StartPolicy start = StartPolicy::Auto;
        SatId start_sat;
        double sample_step_s = kDefaultSampleStep_s;
    } planner;

    ThresholdConfig baseline;

    struct Output {
        std::filesystem::path directory = "out";
        bool emit_svg = true;
        std::uint64_t seed = 0;
    } output;
};

// Parses the INI-style scenario text. Missing keys keep their defaults.
// Throws ConfigError listing every problem as `section.key: constraint`.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);

// Every violated constraint, as `section.key: constraint`; empty when valid.
std::vector<std::string> validate_config(const ScenarioConfig& cfg);
// Throws ConfigError when validate_config reports anything.
void require_valid(const ScenarioConfig& cfg);

// Parses a comma separated list of seconds ("120,150,180").
std::vector<double> parse_lambda_list(std::string_view text);

// Method label: GM-x with x the slot length in minutes, or TH.
std::string gm_label(double lambda_s);

// Ephemeris over [0, planner.horizon] for the configured source.
ConstellationEphemeris build_ephemeris(const ScenarioConfig& cfg);

// Resolves the start satellite shared by every method. Auto picks, among
// satellites eligible for slot 1 under the largest configured lambda and
// above the threshold at t = 0, the one with the highest elevation at t = 0.
std::optional<SatId> resolve_start(const ScenarioConfig& cfg, const ConstellationEphemeris& eph);

struct GraphRun {
    double lambda_s = 0.0;
    TimeGrid grid;
    std::vector<SatelliteInstance> instances;
    ComplexityReport complexity;
    HandoverPlan plan;
    RateSeries series;
};

// Enumeration, scoring, shortest path and plan extraction for one lambda,
// plus the rate replay.
GraphRun run_graph_method(const ScenarioConfig& cfg, const ConstellationEphemeris& eph, double lambda_s,
                          std::optional<SatId> start);

struct ThresholdRun {
    HandoverPlan plan;
    RateSeries series;
};

ThresholdRun run_threshold_method(const ScenarioConfig& cfg, const ConstellationEphemeris& eph,
                                  std::optional<SatId> start);

struct CommandResult {
    std::string report;
    std::vector<std::filesystem::path> artifacts;
};

// Each command validates the whole config first and writes its artifacts to
// output.directory, each file atomically.
CommandResult run_constellation(const ScenarioConfig& cfg);
CommandResult run_plan(const ScenarioConfig& cfg);
CommandResult run_baseline(const ScenarioConfig& cfg);
CommandResult run_compare(const ScenarioConfig& cfg);
CommandResult run_complexity(const ScenarioConfig& cfg);

// Percentile rows reported by `compare`.
inline constexpr double kReportedPercentiles[] = {0.05, 0.1, 0.2, 0.5, 0.8, 0.95};

}  // namespace leoho
