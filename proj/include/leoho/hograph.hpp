#pragma once

// Time-expanded handover graph: satellite instances per time slot, their
// normalized utilities and weighted-sum scores, assembled into a layered DAG
// between a virtual begin node and a virtual end node.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "leoho/channel.hpp"
#include "leoho/constellation.hpp"
#include "leoho/geometry.hpp"

namespace leoho {

// Horizon T split into n slots [mu_i - lambda, mu_i + lambda], mu_i = (2i-1)lambda.
struct TimeGrid {
    double horizon_s = 0.0;
    double relaxation_s = 0.0;
    std::size_t slot_count = 0;
    std::vector<double> centers_s;

    // Slots are 1-based.
    double slot_start(std::size_t slot) const { return centers_s.at(slot - 1) - relaxation_s; }
    double slot_end(std::size_t slot) const { return centers_s.at(slot - 1) + relaxation_s; }
};

// Throws InvalidArgument if T is not an integer multiple of 2*lambda; the
// message names the nearest valid lambda values.
TimeGrid build_time_grid(double horizon_s, double relaxation_s);

enum class Preference { LowerIsBetter, HigherIsBetter };

// Reduces one slot's link samples to a raw criterion value.
struct UtilityEvaluator {
    std::string name;
    Preference preference = Preference::LowerIsBetter;
    std::function<double(std::span<const LinkSample>)> raw;
};

UtilityEvaluator delay_utility();  // mean propagation delay, lower is better
UtilityEvaluator rate_utility();   // mean Shannon rate, higher is better

struct Criterion {
    UtilityEvaluator evaluator;
    double weight = 0.0;
};

// Ordered set of weighted criteria. Weights are non-negative and sum to 1.
class CriteriaConfig {
public:
    // Throws InvalidArgument when the weights are invalid or names repeat.
    explicit CriteriaConfig(std::vector<Criterion> criteria);

    // The shipped delay/rate pair.
    static CriteriaConfig delay_rate(double weight_delay = 0.5, double weight_rate = 0.5);

    std::size_t size() const { return criteria_.size(); }
    const Criterion& operator[](std::size_t m) const { return criteria_[m]; }
    std::optional<std::size_t> find(std::string_view name) const;

private:
    std::vector<Criterion> criteria_;
};

// Satellite j restricted to slot i.
struct SatelliteInstance {
    SatId sat_id;
    std::size_t slot = 0;  // 1-based
    double mean_rate_bps = 0.0;
    double mean_delay_s = 0.0;
    // Aligned with the CriteriaConfig used to build the instance.
    std::vector<double> raw;
    std::vector<double> utility;
    double weight = 0.0;
};

inline constexpr double kDefaultSampleStep_s = 10.0;

// Sample epochs of one slot: start, start + step, ..., end (end always
// included). Eligibility uses all of them; metric means exclude the closing
// epoch so that adjacent slots do not share a sample.
std::vector<double> slot_sample_epochs(const TimeGrid& grid, std::size_t slot, double sample_step_s);

// One instance per (satellite, slot) whose elevation stays at or above the
// user's minimum at every sample of the slot. Utilities are left unset.
// Throws CoverageGap naming the first slot without any instance.
std::vector<SatelliteInstance> enumerate_instances(const ConstellationEphemeris& eph, const GroundUser& user,
                                                   const TimeGrid& grid, const ChannelParams& params,
                                                   double sample_step_s, const CriteriaConfig& criteria);

// Min-max normalization of every criterion across the whole set. Constant
// series map to 0.5. Lower-is-better criteria use the normalized value
// directly, higher-is-better criteria use 1 - normalized.
void normalize_utilities(std::span<SatelliteInstance> instances, const CriteriaConfig& criteria);

double edge_weight(const SatelliteInstance& instance, const CriteriaConfig& criteria);

// Normalizes utilities and fills in every instance's weight.
void score_instances(std::span<SatelliteInstance> instances, const CriteriaConfig& criteria);

using NodeId = std::size_t;

struct NodeRange {
    NodeId first = 0;
    NodeId last = 0;  // exclusive
    std::size_t size() const { return last - first; }
    bool empty() const { return first == last; }
};

// Layered DAG. Node 0 is the virtual begin, node_count()-1 the virtual end,
// instances sit in between ordered by (slot, sat_id). Layer i holds slot i;
// consecutive layers are fully connected, and every edge carries the weight
// of its destination instance (0 into the end node). Edges are implicit.
class HandoverGraph {
public:
    // Instances need their weight set. With a pinned start satellite the
    // begin node connects only to that satellite's slot-1 instance.
    // Throws CoverageGap if a slot 1..slot_count is empty or the pinned
    // satellite has no slot-1 instance.
    HandoverGraph(std::vector<SatelliteInstance> instances, std::size_t slot_count,
                  std::optional<SatId> pinned_start = std::nullopt);

    static constexpr NodeId begin_node() { return 0; }
    NodeId end_node() const { return instances_.size() + 1; }
    std::size_t node_count() const { return instances_.size() + 2; }
    std::size_t edge_count() const;
    std::size_t slot_count() const { return slot_count_; }
    std::size_t layer_count() const { return slot_count_ + 2; }

    bool is_virtual(NodeId node) const { return node == begin_node() || node == end_node(); }
    const SatelliteInstance& instance(NodeId node) const { return instances_.at(node - 1); }
    std::span<const SatelliteInstance> instances() const { return instances_; }

    std::size_t layer_of(NodeId node) const;
    NodeRange layer(std::size_t layer_index) const;
    NodeRange successors(NodeId node) const;
    double weight_into(NodeId node) const { return node == end_node() ? 0.0 : instances_.at(node - 1).weight; }

    // Same satellite on both ends (no handover).
    bool is_straight_edge(NodeId from, NodeId to) const;

    std::optional<SatId> pinned_start() const { return pinned_; }

    template <class Fn>
    void for_each_edge(Fn&& fn) const {
        for (NodeId from = 0; from < node_count(); ++from) {
            const NodeRange succ = successors(from);
            for (NodeId to = succ.first; to < succ.last; ++to) fn(from, to, weight_into(to));
        }
    }

private:
    std::vector<SatelliteInstance> instances_;
    std::size_t slot_count_;
    std::vector<NodeId> layer_first_;  // first node of each layer, plus sentinel
    std::optional<SatId> pinned_;
    NodeId pinned_node_ = 0;
};

HandoverGraph build_graph(std::vector<SatelliteInstance> instances, const CriteriaConfig& criteria,
                          std::size_t slot_count, std::optional<SatId> pinned_start = std::nullopt);

// CSV `sat_id,slot,mean_rate_bps,mean_delay_s,u_d,u_r,w`, rows ordered by
// satellite then slot.
void write_instance_table(std::span<const SatelliteInstance> instances, const CriteriaConfig& criteria,
                          std::ostream& out);

}  // namespace leoho
