#pragma once

// Minimum-weight path through the handover graph and its translation into a
// handover schedule.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "leoho/hograph.hpp"

namespace leoho {

struct PathResult {
    std::vector<NodeId> nodes;  // begin ... end
    double total_cost = 0.0;
    std::size_t settled = 0;    // nodes popped from the queue
};

// Binary-heap Dijkstra. Ties are resolved towards the lower (cost, sat_id,
// slot) key. Throws CoverageGap if the end node is unreachable.
PathResult shortest_path(const HandoverGraph& graph);

inline constexpr std::size_t kBruteForceGuard = 1'000'000;

// Exhaustive enumeration of every begin-to-end path. Throws InvalidArgument
// when the number of paths exceeds guard.
PathResult brute_force_plan(const HandoverGraph& graph, std::size_t guard = kBruteForceGuard);

enum class PlanMethod { Graph, Threshold };

struct PlanSegment {
    SatId sat_id;
    std::size_t slot = 0;  // 1-based
    double start_s = 0.0;
    double end_s = 0.0;
    // Set when the next segment is served by a different satellite.
    std::optional<double> handover_at_s;
};

struct HandoverPlan {
    std::vector<PlanSegment> segments;
    std::vector<double> handover_epochs_s;
    double total_cost = 0.0;
    PlanMethod method = PlanMethod::Graph;
    // Half-width of the window around each handover epoch during which the
    // switch could also take place (graph method only).
    double relaxation_s = 0.0;

    double horizon_s() const { return segments.empty() ? 0.0 : segments.back().end_s; }
    // Serving satellite at t; a handover takes effect exactly at its epoch.
    // Throws OutOfRange outside [0, horizon].
    SatId serving_at(double t_s) const;
};

// Drops the virtual nodes and schedules a handover at mu_i + lambda whenever
// the satellite changes between slot i and i + 1.
HandoverPlan extract_plan(const HandoverGraph& graph, const PathResult& path, const TimeGrid& grid);

// CSV `slot,sat_id,start_s,end_s,handover_at_s`.
void write_plan_csv(const HandoverPlan& plan, std::ostream& out);

}  // namespace leoho
