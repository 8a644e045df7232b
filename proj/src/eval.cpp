#include "leoho/eval.hpp"

#include <algorithm>
#include <ostream>

#include "leoho/format.hpp"

namespace leoho {

std::vector<double> RateSeries::rates() const {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const RateSample& s : samples) out.push_back(s.rate_bps);
    return out;
}

RateSeries simulate_rate(const HandoverPlan& plan, const ConstellationEphemeris& eph, const GroundUser& user,
                         const ChannelParams& params, double sample_step_s) {
    if (!(sample_step_s > 0.0)) throw InvalidArgument("sample step must be positive");
    if (plan.segments.empty()) throw InvalidPlan("plan has no segments");
    if (plan.segments.front().start_s != 0.0) throw InvalidPlan("plan does not start at t = 0");
    for (std::size_t k = 1; k < plan.segments.size(); ++k)
        if (plan.segments[k].start_s != plan.segments[k - 1].end_s) throw InvalidPlan("plan segments are not contiguous");
    for (const PlanSegment& seg : plan.segments)
        if (!eph.contains(seg.sat_id))
            throw InvalidPlan("serving satellite " + std::to_string(seg.sat_id.value) + " not in the ephemeris");

    const double horizon = plan.horizon_s();
    const Vec3 user_pos = geodetic_to_ecef(user);
    RateSeries series;
    series.sample_step_s = sample_step_s;
    std::size_t seg = 0;
    auto emit = [&](double t) {
        while (seg + 1 < plan.segments.size() && t >= plan.segments[seg].end_s) ++seg;
        const SatId sat = plan.segments[seg].sat_id;
        const LinkSample ls = link_sample(user_pos, eph.position_at(sat, t), t, params);
        series.samples.push_back({t, ls.rate_bps, sat});
    };
    for (std::size_t j = 0;; ++j) {
        const double t = static_cast<double>(j) * sample_step_s;
        if (t >= horizon - 1e-9) break;
        emit(t);
    }
    emit(horizon);
    return series;
}

double percentile(std::span<const double> values, double p) {
    if (values.empty()) throw InvalidArgument("percentile of an empty series");
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("percentile fraction must lie in [0, 1]");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    // Guard p*N against representation error such as 0.3*10 = 3.0000000000000004.
    auto rank = static_cast<std::size_t>(std::ceil(p * n - 1e-9 * n));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
}

double percentile(const RateSeries& series, double p) { return percentile(series.rates(), p); }

std::vector<CdfPoint> cdf_points(std::span<const double> values) {
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<CdfPoint> cdf;
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
        cdf.push_back({sorted[i], static_cast<double>(i + 1) / n});
    }
    return cdf;
}

std::vector<CdfPoint> cdf_points(const RateSeries& series) { return cdf_points(series.rates()); }

std::size_t count_handovers(const HandoverPlan& plan) {
    std::size_t count = 0;
    for (std::size_t k = 1; k < plan.segments.size(); ++k)
        if (plan.segments[k].sat_id != plan.segments[k - 1].sat_id) ++count;
    return count;
}

ComplexityReport complexity_report(std::span<const std::size_t> instances_per_slot) {
    if (instances_per_slot.empty()) throw InvalidArgument("complexity model needs at least one slot");
    for (std::size_t k : instances_per_slot)
        if (k < 1) throw InvalidArgument("every slot needs at least one instance");
    ComplexityReport r;
    r.vertices = 2;
    for (std::size_t k : instances_per_slot) r.vertices += k;
    r.edges = instances_per_slot.front() + instances_per_slot.back();
    for (std::size_t i = 0; i + 1 < instances_per_slot.size(); ++i)
        r.edges += instances_per_slot[i] * instances_per_slot[i + 1];
    const double v = static_cast<double>(r.vertices);
    r.op_estimate = static_cast<double>(r.edges) + v * std::log2(v);
    return r;
}

ComplexityReport complexity_report(std::size_t satellites, std::size_t slots) {
    if (satellites < 1 || slots < 1) throw InvalidArgument("complexity model needs k >= 1 and n >= 1");
    const std::vector<std::size_t> per_slot(slots, satellites);
    return complexity_report(per_slot);
}

void write_series_csv(const RateSeries& series, std::ostream& out) {
    out << "t_s,rate_bps,serving_sat\n";
    for (const RateSample& s : series.samples)
        out << format_double(s.t_s) << ',' << format_double(s.rate_bps) << ',' << s.serving.value << '\n';
}

void write_cdf_csv(std::span<const CdfPoint> cdf, std::ostream& out) {
    out << "rate_bps,fraction\n";
    for (const CdfPoint& p : cdf) out << format_double(p.rate_bps) << ',' << format_double(p.fraction) << '\n';
}

}  // namespace leoho
