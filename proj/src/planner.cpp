#include "leoho/planner.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <queue>
#include <tuple>

#include "leoho/format.hpp"

namespace leoho {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Virtual nodes sort after every real satellite on ties.
std::uint64_t tie_sat(const HandoverGraph& g, NodeId node) {
    return g.is_virtual(node) ? std::numeric_limits<std::uint64_t>::max() : g.instance(node).sat_id.value;
}

std::size_t tie_slot(const HandoverGraph& g, NodeId node) {
    return node == HandoverGraph::begin_node() ? 0 : g.is_virtual(node) ? g.slot_count() + 1 : g.instance(node).slot;
}

}  // namespace

PathResult shortest_path(const HandoverGraph& graph) {
    const std::size_t n = graph.node_count();
    std::vector<double> dist(n, kInf);
    std::vector<NodeId> pred(n, n);
    std::vector<bool> settled(n, false);

    using Key = std::tuple<double, std::uint64_t, std::size_t, NodeId>;
    std::priority_queue<Key, std::vector<Key>, std::greater<>> queue;
    const NodeId source = HandoverGraph::begin_node();
    const NodeId target = graph.end_node();
    dist[source] = 0.0;
    queue.emplace(0.0, tie_sat(graph, source), tie_slot(graph, source), source);

    PathResult result;
    while (!queue.empty()) {
        const NodeId node = std::get<3>(queue.top());
        queue.pop();
        if (settled[node]) continue;
        settled[node] = true;
        ++result.settled;
        if (node == target) break;
        const NodeRange succ = graph.successors(node);
        for (NodeId to = succ.first; to < succ.last; ++to) {
            if (settled[to]) continue;
            const double candidate = dist[node] + graph.weight_into(to);
            if (candidate < dist[to]) {
                dist[to] = candidate;
                pred[to] = node;
                queue.emplace(candidate, tie_sat(graph, to), tie_slot(graph, to), to);
            }
        }
    }
    if (!settled[target]) throw CoverageGap(0, "the virtual end node is unreachable");

    for (NodeId node = target; node != source; node = pred[node]) result.nodes.push_back(node);
    result.nodes.push_back(source);
    std::reverse(result.nodes.begin(), result.nodes.end());
    result.total_cost = dist[target];
    return result;
}

PathResult brute_force_plan(const HandoverGraph& graph, std::size_t guard) {
    const std::size_t slots = graph.slot_count();
    std::vector<NodeRange> layers;
    layers.reserve(slots);
    layers.push_back(graph.successors(HandoverGraph::begin_node()));
    for (std::size_t slot = 2; slot <= slots; ++slot) layers.push_back(graph.layer(slot));

    double space = 1.0;
    for (const NodeRange& r : layers) space *= static_cast<double>(r.size());
    if (space > static_cast<double>(guard))
        throw InvalidArgument("brute-force search space of " + format_double(space) + " paths exceeds the guard of " +
                              std::to_string(guard));

    std::vector<NodeId> current(slots);
    for (std::size_t i = 0; i < slots; ++i) current[i] = layers[i].first;
    PathResult best;
    best.total_cost = kInf;
    while (true) {
        // Same left-to-right accumulation as the Dijkstra relaxation.
        double cost = 0.0;
        for (NodeId node : current) cost = cost + graph.weight_into(node);
        cost = cost + graph.weight_into(graph.end_node());
        ++best.settled;
        if (cost < best.total_cost) {
            best.total_cost = cost;
            best.nodes.assign(1, HandoverGraph::begin_node());
            best.nodes.insert(best.nodes.end(), current.begin(), current.end());
            best.nodes.push_back(graph.end_node());
        }
        std::size_t i = slots;
        while (i > 0) {
            --i;
            if (++current[i] < layers[i].last) break;
            current[i] = layers[i].first;
            if (i == 0) return best;
        }
    }
}

SatId HandoverPlan::serving_at(double t_s) const {
    if (segments.empty() || t_s < segments.front().start_s || t_s > segments.back().end_s)
        throw OutOfRange("epoch " + format_double(t_s) + " s outside the plan horizon");
    for (const PlanSegment& seg : segments)
        if (t_s < seg.end_s) return seg.sat_id;
    return segments.back().sat_id;
}

HandoverPlan extract_plan(const HandoverGraph& graph, const PathResult& path, const TimeGrid& grid) {
    if (path.nodes.size() < 2 || path.nodes.front() != HandoverGraph::begin_node() ||
        path.nodes.back() != graph.end_node())
        throw InvalidArgument("path must run from the virtual begin node to the virtual end node");
    HandoverPlan plan;
    plan.method = PlanMethod::Graph;
    plan.total_cost = path.total_cost;
    plan.relaxation_s = grid.relaxation_s;
    for (std::size_t k = 1; k + 1 < path.nodes.size(); ++k) {
        const SatelliteInstance& inst = graph.instance(path.nodes[k]);
        plan.segments.push_back({inst.sat_id, inst.slot, grid.slot_start(inst.slot), grid.slot_end(inst.slot), {}});
    }
    for (std::size_t k = 0; k + 1 < plan.segments.size(); ++k) {
        if (plan.segments[k].sat_id != plan.segments[k + 1].sat_id) {
            const double at = grid.centers_s[plan.segments[k].slot - 1] + grid.relaxation_s;
            plan.segments[k].handover_at_s = at;
            plan.handover_epochs_s.push_back(at);
        }
    }
    return plan;
}

void write_plan_csv(const HandoverPlan& plan, std::ostream& out) {
    out << "slot,sat_id,start_s,end_s,handover_at_s\n";
    for (const PlanSegment& seg : plan.segments) {
        out << seg.slot << ',' << seg.sat_id.value << ',' << format_double(seg.start_s) << ','
            << format_double(seg.end_s) << ',';
        if (seg.handover_at_s) out << format_double(*seg.handover_at_s);
        out << '\n';
    }
}

}  // namespace leoho
