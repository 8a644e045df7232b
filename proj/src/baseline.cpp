#include "leoho/baseline.hpp"

#include "leoho/format.hpp"

namespace leoho {

void ThresholdConfig::validate() const {
    if (!(threshold_rad >= 0.0 && threshold_rad < kPi / 2)) throw InvalidArgument("threshold must lie in [0, 90) degrees");
    if (!(decision_step_s > 0.0) || !std::isfinite(decision_step_s))
        throw InvalidArgument("decision step must be positive");
}

HandoverPlan threshold_plan(const ConstellationEphemeris& eph, const GroundUser& user, double horizon_s,
                            const ThresholdConfig& cfg, std::optional<SatId> start_sat) {
    cfg.validate();
    if (!(horizon_s > 0.0)) throw InvalidArgument("horizon must be positive");
    const Vec3 user_pos = geodetic_to_ecef(user);
    const std::size_t nsat = eph.satellite_count();

    auto elevation = [&](std::size_t s, double t) { return elevation_angle(user_pos, eph.position_at_index(s, t)); };
    // Highest satellite at or above the threshold; lowest index on ties.
    auto best_visible = [&](double t) -> std::optional<std::size_t> {
        std::optional<std::size_t> best;
        double best_elev = 0.0;
        for (std::size_t s = 0; s < nsat; ++s) {
            const double e = elevation(s, t);
            if (e >= cfg.threshold_rad && (!best || e > best_elev)) {
                best = s;
                best_elev = e;
            }
        }
        return best;
    };

    std::size_t serving = 0;
    if (start_sat) {
        serving = eph.index_of(*start_sat);
        if (elevation(serving, 0.0) < cfg.threshold_rad)
            throw InvalidArgument("start satellite " + std::to_string(start_sat->value) +
                                  " is below the threshold at t = 0");
    } else {
        const auto first = best_visible(0.0);
        if (!first) throw CoverageGap(0, "no satellite above the threshold at t = 0 s");
        serving = *first;
    }

    HandoverPlan plan;
    plan.method = PlanMethod::Threshold;
    const auto ids = eph.sat_ids();
    double segment_start = 0.0;
    for (std::size_t j = 1;; ++j) {
        double t = static_cast<double>(j) * cfg.decision_step_s;
        if (t > horizon_s - 1e-9) t = horizon_s;
        if (elevation(serving, t) < cfg.threshold_rad) {
            const auto next = best_visible(t);
            if (!next) throw CoverageGap(0, "no satellite above the threshold at t = " + format_double(t) + " s");
            plan.segments.push_back({ids[serving], plan.segments.size() + 1, segment_start, t, t});
            plan.handover_epochs_s.push_back(t);
            serving = *next;
            segment_start = t;
        }
        if (t >= horizon_s) break;
    }
    plan.segments.push_back({ids[serving], plan.segments.size() + 1, segment_start, horizon_s, {}});
    return plan;
}

}  // namespace leoho
