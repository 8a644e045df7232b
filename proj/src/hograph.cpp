#include "leoho/hograph.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "leoho/format.hpp"

namespace leoho {

TimeGrid build_time_grid(double horizon_s, double relaxation_s) {
    if (!(horizon_s > 0.0) || !std::isfinite(horizon_s)) throw InvalidArgument("horizon T must be positive");
    if (!(relaxation_s > 0.0) || !std::isfinite(relaxation_s))
        throw InvalidArgument("relaxation period lambda must be positive");
    const double ratio = horizon_s / (2.0 * relaxation_s);
    const double slots = std::round(ratio);
    if (slots < 1.0 || std::abs(ratio - slots) > 1e-9 * std::max(1.0, ratio)) {
        std::string msg = "T = " + format_double(horizon_s) + " s is not a multiple of 2*lambda = " +
                          format_double(2.0 * relaxation_s) + " s; nearest valid lambda:";
        const double hi_slots = std::ceil(ratio);
        const double lo_slots = std::floor(ratio);
        msg += " " + format_double(horizon_s / (2.0 * hi_slots)) + " s";
        if (lo_slots >= 1.0) msg += ", " + format_double(horizon_s / (2.0 * lo_slots)) + " s";
        throw InvalidArgument(msg);
    }
    TimeGrid grid;
    grid.horizon_s = horizon_s;
    grid.relaxation_s = relaxation_s;
    grid.slot_count = static_cast<std::size_t>(slots);
    grid.centers_s.reserve(grid.slot_count);
    for (std::size_t i = 1; i <= grid.slot_count; ++i)
        grid.centers_s.push_back(static_cast<double>(2 * i - 1) * relaxation_s);
    return grid;
}

UtilityEvaluator delay_utility() {
    return {"delay", Preference::LowerIsBetter, [](std::span<const LinkSample> samples) {
                double sum = 0.0;
                for (const LinkSample& s : samples) sum += s.delay_s;
                return sum / static_cast<double>(samples.size());
            }};
}

UtilityEvaluator rate_utility() {
    return {"rate", Preference::HigherIsBetter, [](std::span<const LinkSample> samples) {
                double sum = 0.0;
                for (const LinkSample& s : samples) sum += s.rate_bps;
                return sum / static_cast<double>(samples.size());
            }};
}

CriteriaConfig::CriteriaConfig(std::vector<Criterion> criteria) : criteria_(std::move(criteria)) {
    if (criteria_.empty()) throw InvalidArgument("at least one criterion is required");
    double sum = 0.0;
    for (std::size_t m = 0; m < criteria_.size(); ++m) {
        const Criterion& c = criteria_[m];
        if (!(c.weight >= 0.0) || !std::isfinite(c.weight))
            throw InvalidArgument("criterion '" + c.evaluator.name + "' has a negative weight");
        if (!c.evaluator.raw) throw InvalidArgument("criterion '" + c.evaluator.name + "' has no evaluator");
        for (std::size_t o = 0; o < m; ++o)
            if (criteria_[o].evaluator.name == c.evaluator.name)
                throw InvalidArgument("duplicate criterion '" + c.evaluator.name + "'");
        sum += c.weight;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw InvalidArgument("criterion weights must sum to 1 (got " + format_double(sum) + ")");
}

CriteriaConfig CriteriaConfig::delay_rate(double weight_delay, double weight_rate) {
    return CriteriaConfig({{delay_utility(), weight_delay}, {rate_utility(), weight_rate}});
}

std::optional<std::size_t> CriteriaConfig::find(std::string_view name) const {
    for (std::size_t m = 0; m < criteria_.size(); ++m)
        if (criteria_[m].evaluator.name == name) return m;
    return std::nullopt;
}

std::vector<double> slot_sample_epochs(const TimeGrid& grid, std::size_t slot, double sample_step_s) {
    const double start = grid.slot_start(slot);
    const double end = grid.slot_end(slot);
    std::vector<double> epochs;
    for (std::size_t j = 0;; ++j) {
        const double t = start + static_cast<double>(j) * sample_step_s;
        if (t >= end - 1e-9) break;
        epochs.push_back(t);
    }
    epochs.push_back(end);
    return epochs;
}

std::vector<SatelliteInstance> enumerate_instances(const ConstellationEphemeris& eph, const GroundUser& user,
                                                   const TimeGrid& grid, const ChannelParams& params,
                                                   double sample_step_s, const CriteriaConfig& criteria) {
    if (!(sample_step_s > 0.0) || sample_step_s > 2.0 * grid.relaxation_s)
        throw InvalidArgument("sample step must lie in (0, 2*lambda]");
    const Vec3 user_pos = geodetic_to_ecef(user);
    const auto ids = eph.sat_ids();

    std::vector<SatelliteInstance> instances;
    std::vector<LinkSample> samples;
    for (std::size_t slot = 1; slot <= grid.slot_count; ++slot) {
        const std::vector<double> epochs = slot_sample_epochs(grid, slot, sample_step_s);
        std::size_t in_slot = 0;
        for (std::size_t s = 0; s < ids.size(); ++s) {
            samples.clear();
            bool eligible = true;
            for (double t : epochs) {
                const Vec3 sat_pos = eph.position_at_index(s, t);
                if (elevation_angle(user_pos, sat_pos) < user.min_elevation_rad) {
                    eligible = false;
                    break;
                }
                samples.push_back(link_sample(user_pos, sat_pos, t, params));
            }
            if (!eligible) continue;
            samples.pop_back();  // closing epoch belongs to the next slot

            SatelliteInstance inst;
            inst.sat_id = ids[s];
            inst.slot = slot;
            double rate = 0.0, delay = 0.0;
            for (const LinkSample& ls : samples) {
                rate += ls.rate_bps;
                delay += ls.delay_s;
            }
            inst.mean_rate_bps = rate / static_cast<double>(samples.size());
            inst.mean_delay_s = delay / static_cast<double>(samples.size());
            inst.raw.reserve(criteria.size());
            for (std::size_t m = 0; m < criteria.size(); ++m) inst.raw.push_back(criteria[m].evaluator.raw(samples));
            instances.push_back(std::move(inst));
            ++in_slot;
        }
        if (in_slot == 0)
            throw CoverageGap(slot, "no satellite stays above the minimum elevation for all of slot " +
                                        std::to_string(slot) + " [" + format_double(grid.slot_start(slot)) + ", " +
                                        format_double(grid.slot_end(slot)) + "] s");
    }
    return instances;
}

void normalize_utilities(std::span<SatelliteInstance> instances, const CriteriaConfig& criteria) {
    if (instances.empty()) throw InvalidArgument("cannot normalize an empty instance set");
    for (SatelliteInstance& inst : instances) {
        if (inst.raw.size() != criteria.size())
            throw InvalidArgument("instance raw metrics do not match the criteria");
        inst.utility.assign(criteria.size(), 0.0);
    }
    for (std::size_t m = 0; m < criteria.size(); ++m) {
        double lo = instances.front().raw[m];
        double hi = lo;
        for (const SatelliteInstance& inst : instances) {
            lo = std::min(lo, inst.raw[m]);
            hi = std::max(hi, inst.raw[m]);
        }
        const double span = hi - lo;
        for (SatelliteInstance& inst : instances) {
            const double normalized = span > 0.0 ? (inst.raw[m] - lo) / span : 0.5;
            inst.utility[m] =
                criteria[m].evaluator.preference == Preference::LowerIsBetter ? normalized : 1.0 - normalized;
        }
    }
}

double edge_weight(const SatelliteInstance& instance, const CriteriaConfig& criteria) {
    if (instance.utility.size() != criteria.size())
        throw InvalidArgument("instance utilities do not match the criteria");
    double w = 0.0;
    for (std::size_t m = 0; m < criteria.size(); ++m) w += criteria[m].weight * instance.utility[m];
    return w;
}

void score_instances(std::span<SatelliteInstance> instances, const CriteriaConfig& criteria) {
    normalize_utilities(instances, criteria);
    for (SatelliteInstance& inst : instances) inst.weight = edge_weight(inst, criteria);
}

HandoverGraph::HandoverGraph(std::vector<SatelliteInstance> instances, std::size_t slot_count,
                             std::optional<SatId> pinned_start)
    : instances_(std::move(instances)), slot_count_(slot_count), pinned_(pinned_start) {
    if (slot_count_ == 0) throw InvalidArgument("graph needs at least one slot");
    for (const SatelliteInstance& inst : instances_)
        if (inst.slot < 1 || inst.slot > slot_count_)
            throw InvalidArgument("instance slot " + std::to_string(inst.slot) + " outside 1.." +
                                  std::to_string(slot_count_));
    std::stable_sort(instances_.begin(), instances_.end(), [](const SatelliteInstance& a, const SatelliteInstance& b) {
        return a.slot != b.slot ? a.slot < b.slot : a.sat_id < b.sat_id;
    });
    for (std::size_t i = 1; i < instances_.size(); ++i)
        if (instances_[i].slot == instances_[i - 1].slot && instances_[i].sat_id == instances_[i - 1].sat_id)
            throw InvalidArgument("duplicate instance for satellite " + std::to_string(instances_[i].sat_id.value) +
                                  " in slot " + std::to_string(instances_[i].slot));

    // layer_first_[L] = first node of layer L; layer 0 = begin, n+1 = end.
    layer_first_.assign(slot_count_ + 3, 0);
    layer_first_[0] = 0;
    std::size_t pos = 0;
    for (std::size_t slot = 1; slot <= slot_count_; ++slot) {
        layer_first_[slot] = pos + 1;
        const std::size_t before = pos;
        while (pos < instances_.size() && instances_[pos].slot == slot) ++pos;
        if (pos == before)
            throw CoverageGap(slot, "slot " + std::to_string(slot) + " has no eligible satellite");
    }
    layer_first_[slot_count_ + 1] = instances_.size() + 1;
    layer_first_[slot_count_ + 2] = instances_.size() + 2;

    if (pinned_) {
        const NodeRange first = layer(1);
        bool found = false;
        for (NodeId node = first.first; node < first.last; ++node) {
            if (instance(node).sat_id == *pinned_) {
                pinned_node_ = node;
                found = true;
                break;
            }
        }
        if (!found)
            throw CoverageGap(1, "start satellite " + std::to_string(pinned_->value) +
                                     " is not eligible for slot 1");
    }
}

std::size_t HandoverGraph::edge_count() const {
    std::size_t edges = pinned_ ? 1 : layer(1).size();
    for (std::size_t slot = 1; slot < slot_count_; ++slot) edges += layer(slot).size() * layer(slot + 1).size();
    edges += layer(slot_count_).size();
    return edges;
}

std::size_t HandoverGraph::layer_of(NodeId node) const {
    if (node >= node_count()) throw InvalidArgument("node id out of range");
    auto it = std::upper_bound(layer_first_.begin(), layer_first_.end() - 1, node);
    return static_cast<std::size_t>(it - layer_first_.begin()) - 1;
}

NodeRange HandoverGraph::layer(std::size_t layer_index) const {
    if (layer_index >= layer_count()) throw InvalidArgument("layer index out of range");
    return {layer_first_[layer_index], layer_first_[layer_index + 1]};
}

NodeRange HandoverGraph::successors(NodeId node) const {
    if (node == end_node()) return {end_node(), end_node()};
    if (node == begin_node() && pinned_) return {pinned_node_, pinned_node_ + 1};
    return layer(layer_of(node) + 1);
}

bool HandoverGraph::is_straight_edge(NodeId from, NodeId to) const {
    if (is_virtual(from) || is_virtual(to)) return false;
    return instance(from).sat_id == instance(to).sat_id;
}

HandoverGraph build_graph(std::vector<SatelliteInstance> instances, const CriteriaConfig& criteria,
                          std::size_t slot_count, std::optional<SatId> pinned_start) {
    score_instances(instances, criteria);
    return HandoverGraph(std::move(instances), slot_count, pinned_start);
}

void write_instance_table(std::span<const SatelliteInstance> instances, const CriteriaConfig& criteria,
                          std::ostream& out) {
    const auto delay = criteria.find("delay");
    const auto rate = criteria.find("rate");
    std::vector<const SatelliteInstance*> rows;
    rows.reserve(instances.size());
    for (const SatelliteInstance& inst : instances) rows.push_back(&inst);
    std::stable_sort(rows.begin(), rows.end(), [](const SatelliteInstance* a, const SatelliteInstance* b) {
        return a->sat_id != b->sat_id ? a->sat_id < b->sat_id : a->slot < b->slot;
    });
    auto utility = [](const SatelliteInstance& inst, std::optional<std::size_t> m) {
        return m && *m < inst.utility.size() ? format_double(inst.utility[*m]) : std::string();
    };
    out << "sat_id,slot,mean_rate_bps,mean_delay_s,u_d,u_r,w\n";
    for (const SatelliteInstance* inst : rows)
        out << inst->sat_id.value << ',' << inst->slot << ',' << format_double(inst->mean_rate_bps) << ','
            << format_double(inst->mean_delay_s) << ',' << utility(*inst, delay) << ',' << utility(*inst, rate) << ','
            << format_double(inst->weight) << '\n';
}

}  // namespace leoho
