#pragma once

// Legacy elevation-threshold handover: stay on the serving satellite until
// its elevation drops below the threshold, then switch to the highest
// visible satellite.

#include <optional>

#include "leoho/constellation.hpp"
#include "leoho/geometry.hpp"
#include "leoho/planner.hpp"

namespace leoho {

struct ThresholdConfig {
    double threshold_rad = deg2rad(10.0);
    double decision_step_s = 10.0;

    void validate() const;
};

// Decisions are taken at every multiple of decision_step in [0, horizon]
// (and at the horizon itself). Without start_sat the highest satellite at
// t = 0 is served first. Throws CoverageGap when no satellite is above the
// threshold at a decision instant that needs one, InvalidArgument when
// start_sat is not above the threshold at t = 0.
HandoverPlan threshold_plan(const ConstellationEphemeris& eph, const GroundUser& user, double horizon_s,
                            const ThresholdConfig& cfg, std::optional<SatId> start_sat = std::nullopt);

}  // namespace leoho
