#include <doctest.h>

#include <sstream>

#include "leoho/eval.hpp"
#include "synthetic.hpp"

using namespace leoho;
using namespace leoho::testing;

namespace {

HandoverPlan two_segment_plan() {
    HandoverPlan plan;
    plan.segments.push_back({SatId(1), 1, 0.0, 600.0, 600.0});
    plan.segments.push_back({SatId(2), 2, 600.0, 1800.0, {}});
    plan.handover_epochs_s = {600.0};
    return plan;
}

ConstellationEphemeris two_fixed_sats() {
    return make_ephemeris(2, 1800.0, 10.0,
                          [](std::size_t s, double) { return sky_point(s == 0 ? 80.0 : 40.0, s == 0 ? 600e3 : 1200e3); });
}

}  // namespace

TEST_CASE("simulate_rate samples the whole horizon") {
    const auto eph = two_fixed_sats();
    const RateSeries series = simulate_rate(two_segment_plan(), eph, equator_user(), ChannelParams{}, 10.0);
    REQUIRE(series.samples.size() == 181);
    CHECK(series.samples.front().t_s == 0.0);
    CHECK(series.samples.back().t_s == 1800.0);
    CHECK(series.samples[59].serving == SatId(1));
    CHECK(series.samples[60].serving == SatId(2));
    CHECK(series.samples[60].t_s == 600.0);
    CHECK(series.samples[0].rate_bps > series.samples[180].rate_bps);

    const RateSeries coarse = simulate_rate(two_segment_plan(), eph, equator_user(), ChannelParams{}, 70.0);
    CHECK(coarse.samples.size() == 27);
    CHECK(coarse.samples.back().t_s == 1800.0);
}

TEST_CASE("simulate_rate rejects malformed plans") {
    const auto eph = two_fixed_sats();
    HandoverPlan plan = two_segment_plan();
    plan.segments[1].sat_id = SatId(9);
    CHECK_THROWS_AS(simulate_rate(plan, eph, equator_user(), ChannelParams{}, 10.0), InvalidPlan);
    plan = two_segment_plan();
    plan.segments[1].start_s = 650.0;
    CHECK_THROWS_AS(simulate_rate(plan, eph, equator_user(), ChannelParams{}, 10.0), InvalidPlan);
    CHECK_THROWS_AS(simulate_rate(HandoverPlan{}, eph, equator_user(), ChannelParams{}, 10.0), InvalidPlan);
    CHECK_THROWS_AS(simulate_rate(two_segment_plan(), eph, equator_user(), ChannelParams{}, 0.0), InvalidArgument);
}

TEST_CASE("percentile uses the nearest rank") {
    const std::vector<double> v{5, 3, 1, 4, 2};
    CHECK(percentile(v, 0.2) == 1.0);
    CHECK(percentile(v, 0.21) == 2.0);
    CHECK(percentile(v, 0.5) == 3.0);
    CHECK(percentile(v, 1.0) == 5.0);
    CHECK(percentile(v, 0.0) == 1.0);
    const std::vector<double> ten{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    CHECK(percentile(ten, 0.3) == 3.0);
    CHECK(percentile(ten, 0.7) == 7.0);
    const std::vector<double> flat(17, 4.25);
    for (double p : {0.0, 0.05, 0.5, 0.95, 1.0}) CHECK(percentile(flat, p) == 4.25);
    CHECK_THROWS_AS(percentile(std::vector<double>{}, 0.5), InvalidArgument);
    CHECK_THROWS_AS(percentile(v, 1.5), InvalidArgument);
    CHECK_THROWS_AS(percentile(v, -0.1), InvalidArgument);
}

TEST_CASE("cdf_points") {
    const auto two = cdf_points(std::vector<double>{20, 10});
    REQUIRE(two.size() == 2);
    CHECK(two[0].rate_bps == 10.0);
    CHECK(two[0].fraction == 0.5);
    CHECK(two[1].rate_bps == 20.0);
    CHECK(two[1].fraction == 1.0);

    const auto dup = cdf_points(std::vector<double>{3, 1, 3, 3});
    REQUIRE(dup.size() == 2);
    CHECK(dup[0].fraction == 0.25);
    CHECK(dup[1].fraction == 1.0);
    CHECK(cdf_points(std::vector<double>{}).empty());

    std::ostringstream out;
    write_cdf_csv(two, out);
    CHECK(out.str() == "rate_bps,fraction\n10,0.5\n20,1\n");
}

TEST_CASE("percentile and CDF agree on random series") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> len(1, 200), val(0, 50);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> v(static_cast<std::size_t>(len(rng)));
        for (double& x : v) x = 1e6 * val(rng);
        const auto cdf = cdf_points(v);
        CHECK(cdf.back().fraction == 1.0);
        for (std::size_t i = 1; i < cdf.size(); ++i) {
            CHECK(cdf[i].rate_bps > cdf[i - 1].rate_bps);
            CHECK(cdf[i].fraction > cdf[i - 1].fraction);
        }
        double prev = -1.0;
        for (double p = 0.0; p <= 1.0; p += 0.01) {
            const double q = percentile(v, p);
            CHECK(q >= prev);
            prev = q;
            // The percentile is the first CDF point whose fraction reaches p.
            auto it = std::find_if(cdf.begin(), cdf.end(), [&](const CdfPoint& c) { return c.fraction >= p - 1e-12; });
            REQUIRE(it != cdf.end());
            CHECK(q == it->rate_bps);
        }
    }
}

TEST_CASE("count_handovers counts satellite changes") {
    CHECK(count_handovers(two_segment_plan()) == 1);
    HandoverPlan plan;
    for (std::size_t i = 0; i < 6; ++i)
        plan.segments.push_back({SatId(i < 3 ? 1u : 2u), i + 1, 300.0 * double(i), 300.0 * double(i + 1), {}});
    CHECK(count_handovers(plan) == 1);
    CHECK(count_handovers(HandoverPlan{}) == 0);
}

TEST_CASE("complexity model") {
    const ComplexityReport full = complexity_report(1584, 6);
    CHECK(full.vertices == 9506);
    CHECK(full.edges == 12'548'448);
    CHECK(full.op_estimate == doctest::Approx(1.267e7).epsilon(1e-3));

    const ComplexityReport tiny = complexity_report(1, 2);
    CHECK(tiny.vertices == 4);
    CHECK(tiny.edges == 3);
    CHECK(tiny.op_estimate == doctest::Approx(11.0));

    const std::vector<std::size_t> k{3, 1, 4};
    const ComplexityReport mixed = complexity_report(k);
    CHECK(mixed.vertices == 10);
    CHECK(mixed.edges == 3 + 4 + 3 + 4);

    std::size_t prev_v = 0, prev_e = 0;
    for (std::size_t n = 1; n <= 15; ++n) {
        const ComplexityReport r = complexity_report(40, n);
        CHECK(r.vertices > prev_v);
        CHECK(r.edges > prev_e);
        prev_v = r.vertices;
        prev_e = r.edges;
    }
    CHECK_THROWS_AS(complexity_report(0, 3), InvalidArgument);
    CHECK_THROWS_AS(complexity_report(std::vector<std::size_t>{2, 0}), InvalidArgument);
}

TEST_CASE("replaying a graph plan reproduces the instance means") {
    const auto track = [](std::size_t s, double t) {
        const double phase = static_cast<double>(s) * 500.0;
        return sky_point(20.0 + 60.0 * std::sin(kPi * std::clamp((t - phase + 300.0) / 1800.0, 0.0, 1.0)),
                         600e3 + 300.0 * std::abs(t - phase));
    };
    const auto eph = make_ephemeris(3, 1800.0, 10.0, track);
    const auto criteria = CriteriaConfig::delay_rate();
    const TimeGrid grid = build_time_grid(1800.0, 150.0);
    const GroundUser user = equator_user();
    const ChannelParams params;
    auto inst = enumerate_instances(eph, user, grid, params, 10.0, criteria);
    const HandoverGraph g = build_graph(inst, criteria, grid.slot_count);
    const HandoverPlan plan = extract_plan(g, shortest_path(g), grid);
    const RateSeries series = simulate_rate(plan, eph, user, params, 10.0);
    for (const PlanSegment& seg : plan.segments) {
        double sum = 0.0;
        int n = 0;
        for (const RateSample& s : series.samples)
            if (s.t_s >= seg.start_s && s.t_s < seg.end_s) {
                CHECK(s.serving == seg.sat_id);
                sum += s.rate_bps;
                ++n;
            }
        const auto it = std::find_if(g.instances().begin(), g.instances().end(), [&](const SatelliteInstance& i) {
            return i.slot == seg.slot && i.sat_id == seg.sat_id;
        });
        REQUIRE(it != g.instances().end());
        CHECK(sum / n == doctest::Approx(it->mean_rate_bps).epsilon(1e-9));
    }

    std::ostringstream out;
    write_series_csv(series, out);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "t_s,rate_bps,serving_sat");
}
