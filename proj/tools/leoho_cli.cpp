// Command-line front end. Links only the C interface of libleoho.

#include <CLI11.hpp>
#include <cstdint>
#include <cstdio>
#include <map>
#include <string>

#include "leoho/leoho.h"

namespace {

// Exit codes: 0 success, 1 config error, 2 coverage gap, 3 I/O error.
int exit_code(leoho_status status) {
    switch (status) {
        case LEOHO_OK: return 0;
        case LEOHO_ERR_COVERAGE_GAP: return 2;
        case LEOHO_ERR_IO: return 3;
        default: return 1;
    }
}

int report_failure(leoho_status status) {
    std::fprintf(stderr, "leoho: %s: %s\n", leoho_status_name(status), leoho_last_error());
    return exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-expanded graph handover planning for LEO satellite networks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", leoho_version());

    std::string config_path;
    std::string out_dir;
    std::string lambda_list;
    std::uint64_t seed = 0;

    const std::map<std::string, std::pair<leoho_command, std::string>> commands = {
        {"constellation", {LEOHO_CMD_CONSTELLATION, "Write the constellation ephemeris CSV"}},
        {"plan", {LEOHO_CMD_PLAN, "Solve the handover graph for each lambda"}},
        {"baseline", {LEOHO_CMD_BASELINE, "Run the elevation-threshold baseline"}},
        {"compare", {LEOHO_CMD_COMPARE, "Compare graph plans across lambdas with the baseline"}},
        {"complexity", {LEOHO_CMD_COMPLEXITY, "Tabulate graph size and shortest-path cost per lambda"}},
    };
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, cmd] : commands) {
        CLI::App* sub = app.add_subcommand(name, cmd.second);
        sub->add_option("--config", config_path, "Scenario config file (built-in defaults when omitted)")
            ->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "Output directory (overrides output.directory)");
        sub->add_option("--lambda", lambda_list, "Comma separated relaxation periods in seconds");
        sub->add_option("--seed", seed, "Seed for random constellations (overrides output.seed)");
        subs[name] = sub;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    leoho_command command = LEOHO_CMD_PLAN;
    CLI::App* active = nullptr;
    for (const auto& [name, sub] : subs)
        if (sub->parsed()) {
            command = commands.at(name).first;
            active = sub;
        }

    leoho_scenario* scenario = nullptr;
    leoho_status status =
        config_path.empty() ? leoho_scenario_default(&scenario) : leoho_scenario_from_file(config_path.c_str(), &scenario);
    if (status != LEOHO_OK) return report_failure(status);

    if (status == LEOHO_OK && !out_dir.empty()) status = leoho_scenario_set_output_dir(scenario, out_dir.c_str());
    if (status == LEOHO_OK && !lambda_list.empty())
        status = leoho_scenario_set_lambda_list(scenario, lambda_list.c_str());
    if (status == LEOHO_OK && active->count("--seed") > 0) status = leoho_scenario_set_seed(scenario, seed);
    if (status == LEOHO_OK) status = leoho_run(scenario, command);

    int rc = 0;
    if (status != LEOHO_OK) {
        rc = report_failure(status);
    } else {
        std::fputs(leoho_scenario_report(scenario), stdout);
        for (size_t i = 0; i < leoho_scenario_artifact_count(scenario); ++i)
            std::printf("wrote %s\n", leoho_scenario_artifact(scenario, i));
    }
    leoho_scenario_free(scenario);
    return rc;
}
