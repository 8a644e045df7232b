#include <algorithm>
#include <cstdio>
#include <sstream>

#include "leoho/format.hpp"
#include "leoho/scenario.hpp"
#include "leoho/svg.hpp"

namespace leoho {

namespace {

std::string mbps(double bps) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", bps / 1e6);
    return buf;
}

struct ArtifactWriter {
    std::filesystem::path dir;
    CommandResult& result;

    void write(const std::string& name, const std::string& content) {
        const auto path = dir / name;
        write_file_atomic(path, content);
        result.artifacts.push_back(path);
    }

    template <class Fn>
    void write_with(const std::string& name, Fn&& fn) {
        std::ostringstream out;
        fn(out);
        write(name, out.str());
    }
};

svg::Curve rate_curve(const std::string& label, const RateSeries& series) {
    svg::Curve c{label, {}, false};
    for (const RateSample& s : series.samples) c.points.emplace_back(s.t_s / 60.0, s.rate_bps / 1e6);
    return c;
}

svg::Curve cdf_curve(const std::string& label, const RateSeries& series) {
    svg::Curve c{label, {}, true};
    const auto cdf = cdf_points(series);
    if (!cdf.empty()) c.points.emplace_back(cdf.front().rate_bps / 1e6, 0.0);
    for (const CdfPoint& p : cdf) c.points.emplace_back(p.rate_bps / 1e6, p.fraction);
    return c;
}

std::string describe_plan(const std::string& label, const HandoverPlan& plan, const RateSeries& series) {
    std::string out = label + ": " + std::to_string(count_handovers(plan)) + " handovers";
    if (!plan.handover_epochs_s.empty()) {
        out += " at";
        for (double t : plan.handover_epochs_s) out += " " + format_double(t);
        out += " s";
    }
    out += "; satellites";
    for (const PlanSegment& seg : plan.segments) out += " " + std::to_string(seg.sat_id.value);
    out += "; p20 " + mbps(percentile(series, 0.2)) + " Mbit/s";
    if (plan.method == PlanMethod::Graph) out += "; cost " + format_double(plan.total_cost);
    return out + "\n";
}

ConstellationEphemeris ephemeris_over(const ScenarioConfig& cfg, double horizon_s) {
    const auto& c = cfg.constellation;
    switch (c.source) {
        case ConstellationSource::Walker:
            return generate_walker(c.shell, horizon_s, c.step_s);
        case ConstellationSource::Random:
            return generate_random(c.random_count, c.shell.altitude_m, cfg.output.seed, horizon_s, c.step_s);
        case ConstellationSource::File:
            break;
    }
    ConstellationEphemeris eph = load_ephemeris(c.ephemeris_file);
    if (eph.first_epoch() > 0.0 || eph.last_epoch() < horizon_s)
        throw ConfigError("constellation.ephemeris_file: covers [" + format_double(eph.first_epoch()) + ", " +
                          format_double(eph.last_epoch()) + "] s but the horizon needs [0, " +
                          format_double(horizon_s) + "] s");
    return eph;
}

}  // namespace

ConstellationEphemeris build_ephemeris(const ScenarioConfig& cfg) { return ephemeris_over(cfg, cfg.planner.horizon_s); }

std::optional<SatId> resolve_start(const ScenarioConfig& cfg, const ConstellationEphemeris& eph) {
    switch (cfg.planner.start) {
        case StartPolicy::None:
            return std::nullopt;
        case StartPolicy::Fixed:
            if (!eph.contains(cfg.planner.start_sat))
                throw ConfigError("planner.start_sat: satellite " + std::to_string(cfg.planner.start_sat.value) +
                                  " is not in the constellation");
            return cfg.planner.start_sat;
        case StartPolicy::Auto:
            break;
    }
    const double lambda_max = *std::max_element(cfg.planner.lambdas_s.begin(), cfg.planner.lambdas_s.end());
    const TimeGrid grid = build_time_grid(cfg.planner.horizon_s, lambda_max);
    const std::vector<double> epochs = slot_sample_epochs(grid, 1, cfg.planner.sample_step_s);
    const Vec3 user_pos = geodetic_to_ecef(cfg.user);

    std::optional<SatId> best;
    double best_elev = 0.0;
    const auto ids = eph.sat_ids();
    for (std::size_t s = 0; s < ids.size(); ++s) {
        const double e0 = elevation_angle(user_pos, eph.position_at_index(s, 0.0));
        if (e0 < cfg.baseline.threshold_rad || (best && e0 <= best_elev)) continue;
        const bool eligible = std::all_of(epochs.begin(), epochs.end(), [&](double t) {
            return elevation_angle(user_pos, eph.position_at_index(s, t)) >= cfg.user.min_elevation_rad;
        });
        if (!eligible) continue;
        best = ids[s];
        best_elev = e0;
    }
    if (!best)
        throw CoverageGap(1, "no satellite can serve the whole first slot [0, " +
                                 format_double(2.0 * lambda_max) + "] s");
    return best;
}

GraphRun run_graph_method(const ScenarioConfig& cfg, const ConstellationEphemeris& eph, double lambda_s,
                          std::optional<SatId> start) {
    GraphRun run;
    run.lambda_s = lambda_s;
    run.grid = build_time_grid(cfg.planner.horizon_s, lambda_s);
    const CriteriaConfig criteria = CriteriaConfig::delay_rate(cfg.planner.weight_delay, cfg.planner.weight_rate);
    run.instances = enumerate_instances(eph, cfg.user, run.grid, cfg.channel, cfg.planner.sample_step_s, criteria);
    score_instances(run.instances, criteria);

    std::vector<std::size_t> per_slot(run.grid.slot_count, 0);
    for (const SatelliteInstance& inst : run.instances) ++per_slot[inst.slot - 1];
    run.complexity = complexity_report(per_slot);

    const HandoverGraph graph(run.instances, run.grid.slot_count, start);
    run.plan = extract_plan(graph, shortest_path(graph), run.grid);
    run.series = simulate_rate(run.plan, eph, cfg.user, cfg.channel, cfg.planner.sample_step_s);
    return run;
}

ThresholdRun run_threshold_method(const ScenarioConfig& cfg, const ConstellationEphemeris& eph,
                                  std::optional<SatId> start) {
    ThresholdRun run;
    run.plan = threshold_plan(eph, cfg.user, cfg.planner.horizon_s, cfg.baseline, start);
    run.series = simulate_rate(run.plan, eph, cfg.user, cfg.channel, cfg.planner.sample_step_s);
    return run;
}

CommandResult run_constellation(const ScenarioConfig& cfg) {
    require_valid(cfg);
    const double horizon = cfg.constellation.horizon_s.value_or(cfg.planner.horizon_s);
    const ConstellationEphemeris eph = ephemeris_over(cfg, horizon);
    CommandResult result;
    ArtifactWriter out{cfg.output.directory, result};
    out.write_with("ephemeris.csv", [&](std::ostream& os) { write_ephemeris_csv(eph, os); });
    result.report = "satellites: " + std::to_string(eph.satellite_count()) + "\nepochs: " +
                    std::to_string(eph.epoch_count()) + " spanning [" + format_double(eph.first_epoch()) + ", " +
                    format_double(eph.last_epoch()) + "] s\n";
    return result;
}

CommandResult run_plan(const ScenarioConfig& cfg) {
    require_valid(cfg);
    const ConstellationEphemeris eph = build_ephemeris(cfg);
    const auto start = resolve_start(cfg, eph);
    const CriteriaConfig criteria = CriteriaConfig::delay_rate(cfg.planner.weight_delay, cfg.planner.weight_rate);

    CommandResult result;
    ArtifactWriter out{cfg.output.directory, result};
    for (double lambda : cfg.planner.lambdas_s) {
        const GraphRun run = run_graph_method(cfg, eph, lambda, start);
        const std::string label = gm_label(lambda);
        out.write_with("plan_" + label + ".csv", [&](std::ostream& os) { write_plan_csv(run.plan, os); });
        out.write_with("instances_" + label + ".csv",
                       [&](std::ostream& os) { write_instance_table(run.instances, criteria, os); });
        out.write_with("series_" + label + ".csv", [&](std::ostream& os) { write_series_csv(run.series, os); });
        if (cfg.output.emit_svg) {
            const svg::Curve curve = rate_curve(label, run.series);
            out.write("rate_" + label + ".svg",
                      svg::render_plot({"UE data rate, " + label, "time (min)", "rate (Mbit/s)"}, {&curve, 1}));
        }
        result.report += "lambda " + format_double(lambda) + " s, " + std::to_string(run.grid.slot_count) +
                         " slots, " + std::to_string(run.instances.size()) + " instances\n";
        result.report += describe_plan(label, run.plan, run.series);
    }
    return result;
}

CommandResult run_baseline(const ScenarioConfig& cfg) {
    require_valid(cfg);
    const ConstellationEphemeris eph = build_ephemeris(cfg);
    const auto start = resolve_start(cfg, eph);
    const ThresholdRun run = run_threshold_method(cfg, eph, start);

    CommandResult result;
    ArtifactWriter out{cfg.output.directory, result};
    out.write_with("plan_TH.csv", [&](std::ostream& os) { write_plan_csv(run.plan, os); });
    out.write_with("series_TH.csv", [&](std::ostream& os) { write_series_csv(run.series, os); });
    if (cfg.output.emit_svg) {
        const svg::Curve curve = rate_curve("TH", run.series);
        out.write("rate_TH.svg", svg::render_plot({"UE data rate, TH", "time (min)", "rate (Mbit/s)"}, {&curve, 1}));
    }
    result.report = describe_plan("TH", run.plan, run.series);
    return result;
}

CommandResult run_compare(const ScenarioConfig& cfg) {
    require_valid(cfg);
    const ConstellationEphemeris eph = build_ephemeris(cfg);
    const auto start = resolve_start(cfg, eph);

    struct Method {
        std::string label;
        std::optional<double> lambda_s;
        HandoverPlan plan;
        RateSeries series;
    };
    std::vector<Method> methods;
    for (double lambda : cfg.planner.lambdas_s) {
        GraphRun run = run_graph_method(cfg, eph, lambda, start);
        methods.push_back({gm_label(lambda), lambda, std::move(run.plan), std::move(run.series)});
    }
    {
        ThresholdRun run = run_threshold_method(cfg, eph, start);
        methods.push_back({"TH", std::nullopt, std::move(run.plan), std::move(run.series)});
    }

    CommandResult result;
    ArtifactWriter out{cfg.output.directory, result};
    std::ostringstream combined, percentiles, handovers;
    combined << "method,rate_bps,fraction\n";
    handovers << "method,lambda_s,handovers\n";
    percentiles << "p";
    for (const Method& m : methods) {
        out.write_with("plan_" + m.label + ".csv", [&](std::ostream& os) { write_plan_csv(m.plan, os); });
        out.write_with("series_" + m.label + ".csv", [&](std::ostream& os) { write_series_csv(m.series, os); });
        const auto cdf = cdf_points(m.series);
        out.write_with("cdf_" + m.label + ".csv", [&](std::ostream& os) { write_cdf_csv(cdf, os); });
        for (const CdfPoint& p : cdf)
            combined << m.label << ',' << format_double(p.rate_bps) << ',' << format_double(p.fraction) << '\n';
        handovers << m.label << ',' << (m.lambda_s ? format_double(*m.lambda_s) : std::string()) << ','
                  << count_handovers(m.plan) << '\n';
        percentiles << ',' << m.label;
    }
    percentiles << '\n';
    for (double p : kReportedPercentiles) {
        percentiles << format_double(p);
        for (const Method& m : methods) percentiles << ',' << format_double(percentile(m.series, p));
        percentiles << '\n';
    }
    out.write("cdf.csv", combined.str());
    out.write("percentiles.csv", percentiles.str());
    out.write("handovers.csv", handovers.str());

    if (cfg.output.emit_svg) {
        std::vector<svg::Curve> rates, cdfs;
        for (const Method& m : methods) {
            rates.push_back(rate_curve(m.label, m.series));
            cdfs.push_back(cdf_curve(m.label, m.series));
        }
        out.write("rate.svg", svg::render_plot({"UE data rate over the horizon", "time (min)", "rate (Mbit/s)"}, rates));
        out.write("cdf.svg", svg::render_plot({"Data rate CDF", "rate (Mbit/s)", "CDF"}, cdfs));
    }

    result.report = "start satellite: " + (start ? std::to_string(start->value) : std::string("unpinned")) + "\n";
    for (const Method& m : methods) result.report += describe_plan(m.label, m.plan, m.series);
    return result;
}

CommandResult run_complexity(const ScenarioConfig& cfg) {
    require_valid(cfg);
    std::size_t satellites = 0;
    switch (cfg.constellation.source) {
        case ConstellationSource::Walker: satellites = cfg.constellation.shell.satellite_count(); break;
        case ConstellationSource::Random: satellites = cfg.constellation.random_count; break;
        case ConstellationSource::File: satellites = load_ephemeris(cfg.constellation.ephemeris_file).satellite_count(); break;
    }
    std::vector<double> lambdas = cfg.planner.lambdas_s;
    std::sort(lambdas.begin(), lambdas.end());

    CommandResult result;
    ArtifactWriter out{cfg.output.directory, result};
    std::ostringstream csv;
    csv << "lambda_s,n,V,E,ops\n";
    svg::Curve curve{"k = " + std::to_string(satellites), {}, false};
    result.report = "satellites (full visibility): " + std::to_string(satellites) + "\n";
    for (double lambda : lambdas) {
        const TimeGrid grid = build_time_grid(cfg.planner.horizon_s, lambda);
        const ComplexityReport r = complexity_report(satellites, grid.slot_count);
        csv << format_double(lambda) << ',' << grid.slot_count << ',' << r.vertices << ',' << r.edges << ','
            << format_double(r.op_estimate) << '\n';
        curve.points.emplace_back(lambda, r.op_estimate);
        result.report += "lambda " + format_double(lambda) + " s: n = " + std::to_string(grid.slot_count) +
                         ", V = " + std::to_string(r.vertices) + ", E = " + std::to_string(r.edges) +
                         ", ops = " + format_double(r.op_estimate) + "\n";
    }
    out.write("complexity.csv", csv.str());
    if (cfg.output.emit_svg)
        out.write("complexity.svg",
                  svg::render_plot({"Shortest-path cost vs relaxation period", "lambda (s)", "E + V log2 V", true},
                                   {&curve, 1}));
    return result;
}

}  // namespace leoho
