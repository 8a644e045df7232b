#pragma once

// Plan replay, rate statistics and the graph-size model.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "leoho/channel.hpp"
#include "leoho/constellation.hpp"
#include "leoho/geometry.hpp"
#include "leoho/planner.hpp"

namespace leoho {

struct RateSample {
    double t_s = 0.0;
    double rate_bps = 0.0;
    SatId serving;
};

struct RateSeries {
    std::vector<RateSample> samples;
    double sample_step_s = 0.0;

    std::vector<double> rates() const;
};

// Samples at 0, step, 2*step, ... and at the plan horizon. Throws
// InvalidPlan if a serving satellite is missing from the ephemeris.
RateSeries simulate_rate(const HandoverPlan& plan, const ConstellationEphemeris& eph, const GroundUser& user,
                         const ChannelParams& params, double sample_step_s);

// Nearest-rank percentile: the ceil(p*N)-th smallest value, the minimum at
// p = 0. Throws InvalidArgument on an empty input or p outside [0, 1].
double percentile(std::span<const double> values, double p);
double percentile(const RateSeries& series, double p);

struct CdfPoint {
    double rate_bps = 0.0;
    double fraction = 0.0;
};

// Right-continuous empirical CDF: one point per distinct value, carrying the
// fraction of samples at or below it.
std::vector<CdfPoint> cdf_points(std::span<const double> values);
std::vector<CdfPoint> cdf_points(const RateSeries& series);

std::size_t count_handovers(const HandoverPlan& plan);

struct ComplexityReport {
    std::size_t vertices = 0;
    std::size_t edges = 0;
    double op_estimate = 0.0;  // E + V log2 V
};

ComplexityReport complexity_report(std::span<const std::size_t> instances_per_slot);
// Every one of k satellites visible in all n slots.
ComplexityReport complexity_report(std::size_t satellites, std::size_t slots);

// CSV writers for the schemas `t_s,rate_bps,serving_sat` and `rate_bps,fraction`.
void write_series_csv(const RateSeries& series, std::ostream& out);
void write_cdf_csv(std::span<const CdfPoint> cdf, std::ostream& out);

}  // namespace leoho
