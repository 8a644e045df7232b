#include "leoho/constellation.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <string>
#include <string_view>

#include "leoho/format.hpp"

namespace leoho {

namespace {

Vec3 circular_position(double a, double inclination, double raan, double initial_arg, double t_s) {
    const double u = initial_arg + std::sqrt(kEarthMu_m3s2 / (a * a * a)) * t_s;
    const double cu = std::cos(u), su = std::sin(u);
    const double co = std::cos(raan), so = std::sin(raan);
    const double ci = std::cos(inclination), si = std::sin(inclination);
    return {a * (cu * co - su * ci * so), a * (cu * so + su * ci * co), a * (su * si)};
}

std::vector<double> sample_epochs(double horizon_s, double step_s) {
    if (!(step_s > 0.0) || !std::isfinite(step_s)) throw InvalidArgument("ephemeris step must be positive");
    if (!(horizon_s >= 0.0) || !std::isfinite(horizon_s))
        throw InvalidArgument("ephemeris horizon must be non-negative");
    const auto steps = static_cast<std::size_t>(std::floor(horizon_s / step_s + 1e-9));
    std::vector<double> epochs;
    epochs.reserve(steps + 2);
    for (std::size_t j = 0; j <= steps; ++j) epochs.push_back(static_cast<double>(j) * step_s);
    if (epochs.back() < horizon_s - 1e-9) epochs.push_back(horizon_s);
    return epochs;
}

}  // namespace

void OrbitalShell::validate() const {
    if (planes < 1) throw InvalidArgument("shell needs at least one plane");
    if (sats_per_plane < 1) throw InvalidArgument("shell needs at least one satellite per plane");
    if (!(altitude_m > 0.0)) throw InvalidArgument("shell altitude must be positive");
    if (!(inclination_rad >= 0.0 && inclination_rad <= kPi)) throw InvalidArgument("inclination must lie in [0, pi]");
    if (!std::isfinite(phasing_offset)) throw InvalidArgument("phasing offset must be finite");
    if (!(raan_spread_rad >= 0.0 && raan_spread_rad <= kTwoPi)) throw InvalidArgument("raan spread must lie in [0, 2pi]");
}

double orbital_period_s(double semi_major_axis_m) {
    return kTwoPi * std::sqrt(semi_major_axis_m * semi_major_axis_m * semi_major_axis_m / kEarthMu_m3s2);
}

Vec3 propagate_circular(const OrbitalShell& shell, std::uint32_t plane_index, std::uint32_t slot_index, double t_s) {
    if (plane_index >= shell.planes) throw InvalidArgument("plane index out of range");
    if (slot_index >= shell.sats_per_plane) throw InvalidArgument("slot index out of range");
    const double spacing = kTwoPi / shell.sats_per_plane;
    const double raan = shell.raan_spread_rad * plane_index / shell.planes;
    const double phase = spacing * slot_index + shell.phasing_offset * spacing * plane_index;
    return circular_position(shell.semi_major_axis_m(), shell.inclination_rad, raan, phase, t_s);
}

Vec3 inertial_to_earth_fixed(Vec3 pos, double t_s) {
    const double theta = kEarthRotationRate_rads * t_s;
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * pos.x + s * pos.y, -s * pos.x + c * pos.y, pos.z};
}

ConstellationEphemeris::ConstellationEphemeris(std::vector<SatId> sat_ids, std::vector<double> epochs_s,
                                               std::vector<Vec3> positions)
    : sat_ids_(std::move(sat_ids)), epochs_(std::move(epochs_s)), positions_(std::move(positions)) {
    if (sat_ids_.empty()) throw InvalidArgument("ephemeris has no satellites");
    if (epochs_.empty()) throw InvalidArgument("ephemeris has no epochs");
    if (positions_.size() != sat_ids_.size() * epochs_.size())
        throw InvalidArgument("ephemeris needs a position for every satellite at every epoch");
    for (std::size_t e = 1; e < epochs_.size(); ++e)
        if (!(epochs_[e] > epochs_[e - 1])) throw InvalidArgument("ephemeris epochs must be strictly increasing");
    for (const Vec3& p : positions_)
        if (!(p.norm() > kEarthRadius_m)) throw InvalidArgument("ephemeris position inside the Earth");
    index_.reserve(sat_ids_.size());
    for (std::size_t s = 0; s < sat_ids_.size(); ++s)
        if (!index_.emplace(sat_ids_[s], s).second)
            throw InvalidArgument("duplicate satellite id " + std::to_string(sat_ids_[s].value));
}

std::size_t ConstellationEphemeris::index_of(SatId id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw InvalidArgument("unknown satellite id " + std::to_string(id.value));
    return it->second;
}

Vec3 ConstellationEphemeris::position_at(SatId id, double t_s) const { return position_at_index(index_of(id), t_s); }

Vec3 ConstellationEphemeris::position_at_index(std::size_t sat_index, double t_s) const {
    if (!(t_s >= epochs_.front() && t_s <= epochs_.back()))
        throw OutOfRange("epoch " + format_double(t_s) + " s outside ephemeris range [" +
                         format_double(epochs_.front()) + ", " + format_double(epochs_.back()) + "]");
    auto it = std::upper_bound(epochs_.begin(), epochs_.end(), t_s);
    const auto hi = static_cast<std::size_t>(it - epochs_.begin());
    const std::size_t lo = hi - 1;
    if (epochs_[lo] == t_s || hi == epochs_.size()) return at(lo, sat_index);
    const double f = (t_s - epochs_[lo]) / (epochs_[hi] - epochs_[lo]);
    const Vec3& p0 = at(lo, sat_index);
    const Vec3& p1 = at(hi, sat_index);
    return p0 + f * (p1 - p0);
}

bool operator==(const ConstellationEphemeris& a, const ConstellationEphemeris& b) {
    return a.sat_ids_ == b.sat_ids_ && a.epochs_ == b.epochs_ && a.positions_ == b.positions_;
}

ConstellationEphemeris generate_walker(const OrbitalShell& shell, double horizon_s, double step_s) {
    shell.validate();
    std::vector<double> epochs = sample_epochs(horizon_s, step_s);
    const std::uint32_t count = shell.satellite_count();
    std::vector<SatId> ids;
    ids.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) ids.emplace_back(i);

    std::vector<Vec3> positions;
    positions.reserve(epochs.size() * count);
    for (double t : epochs)
        for (std::uint32_t p = 0; p < shell.planes; ++p)
            for (std::uint32_t s = 0; s < shell.sats_per_plane; ++s)
                positions.push_back(inertial_to_earth_fixed(propagate_circular(shell, p, s, t), t));
    return {std::move(ids), std::move(epochs), std::move(positions)};
}

ConstellationEphemeris generate_random(std::uint32_t count, double altitude_m, std::uint64_t seed, double horizon_s,
                                       double step_s) {
    if (count < 1) throw InvalidArgument("random constellation needs at least one satellite");
    if (!(altitude_m > 0.0)) throw InvalidArgument("altitude must be positive");
    std::vector<double> epochs = sample_epochs(horizon_s, step_s);

    // Raw engine bits only: distribution objects are not portable across
    // standard libraries.
    std::mt19937_64 rng(seed);
    auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    struct Orbit {
        double inclination, raan, phase;
    };
    std::vector<Orbit> orbits(count);
    for (Orbit& o : orbits) {
        o.inclination = uniform() * kPi;
        o.raan = uniform() * kTwoPi;
        o.phase = uniform() * kTwoPi;
    }
    const double a = kEarthRadius_m + altitude_m;
    std::vector<SatId> ids;
    for (std::uint32_t i = 0; i < count; ++i) ids.emplace_back(i);
    std::vector<Vec3> positions;
    positions.reserve(epochs.size() * count);
    for (double t : epochs)
        for (const Orbit& o : orbits)
            positions.push_back(inertial_to_earth_fixed(circular_position(a, o.inclination, o.raan, o.phase, t), t));
    return {std::move(ids), std::move(epochs), std::move(positions)};
}

namespace {

constexpr std::string_view kEphemerisHeader = "t_s,sat_id,x_m,y_m,z_m";

}  // namespace

void write_ephemeris_csv(const ConstellationEphemeris& eph, std::ostream& out) {
    out << kEphemerisHeader << '\n';
    const auto ids = eph.sat_ids();
    const auto epochs = eph.epochs();
    for (std::size_t e = 0; e < epochs.size(); ++e) {
        const std::string t = format_double(epochs[e]);
        for (std::size_t s = 0; s < ids.size(); ++s) {
            const Vec3& p = eph.at(e, s);
            out << t << ',' << ids[s].value << ',' << format_double(p.x) << ',' << format_double(p.y) << ','
                << format_double(p.z) << '\n';
        }
    }
}

ConstellationEphemeris read_ephemeris_csv(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw ParseError(1, "empty ephemeris file");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kEphemerisHeader) throw ParseError(1, "expected header '" + std::string(kEphemerisHeader) + "'");

    std::vector<SatId> ids;
    std::unordered_map<SatId, std::size_t> index;
    std::vector<double> epochs;
    std::vector<Vec3> positions;
    std::vector<bool> seen;
    std::size_t block_rows = 0;
    std::size_t last_row = 1;

    // A short block is reported at its last row.
    auto close_block = [&]() {
        const std::size_t at_line = last_row;
        if (epochs.size() > 1 && block_rows != ids.size())
            throw ParseError(at_line, "epoch " + format_double(epochs.back()) + " has " + std::to_string(block_rows) +
                                          " of " + std::to_string(ids.size()) + " satellites");
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::string_view fields[5];
        std::size_t nfields = 0;
        std::string_view rest = line;
        while (true) {
            const auto comma = rest.find(',');
            if (nfields == 5) throw ParseError(lineno, "expected 5 fields");
            fields[nfields++] = rest.substr(0, comma);
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (nfields != 5) throw ParseError(lineno, "expected 5 fields");

        double t = 0.0;
        Vec3 p;
        if (!parse_double(fields[0], t) || !std::isfinite(t)) throw ParseError(lineno, "malformed t_s");
        std::uint32_t raw_id = 0;
        auto [ptr, ec] = std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), raw_id);
        if (ec != std::errc{} || ptr != fields[1].data() + fields[1].size() || fields[1].empty())
            throw ParseError(lineno, "malformed sat_id");
        if (!parse_double(fields[2], p.x) || !parse_double(fields[3], p.y) || !parse_double(fields[4], p.z) ||
            !std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
            throw ParseError(lineno, "malformed position");
        if (!(p.norm() > kEarthRadius_m)) throw ParseError(lineno, "position lies inside the Earth");
        const SatId id(raw_id);

        if (epochs.empty() || t != epochs.back()) {
            if (!epochs.empty() && !(t > epochs.back()))
                throw ParseError(lineno, "epochs must be strictly increasing (got " + format_double(t) + " after " +
                                             format_double(epochs.back()) + ")");
            close_block();
            epochs.push_back(t);
            block_rows = 0;
            if (epochs.size() > 1) {
                positions.resize(epochs.size() * ids.size());
                seen.assign(ids.size(), false);
            }
        }

        if (epochs.size() == 1) {
            if (!index.emplace(id, ids.size()).second)
                throw ParseError(lineno, "duplicate satellite " + std::to_string(raw_id) + " within epoch");
            ids.push_back(id);
            positions.push_back(p);
        } else {
            auto it = index.find(id);
            if (it == index.end())
                throw ParseError(lineno, "satellite " + std::to_string(raw_id) + " missing from the first epoch");
            if (seen[it->second])
                throw ParseError(lineno, "duplicate satellite " + std::to_string(raw_id) + " within epoch");
            seen[it->second] = true;
            positions[(epochs.size() - 1) * ids.size() + it->second] = p;
        }
        ++block_rows;
        last_row = lineno;
    }
    if (epochs.empty()) throw ParseError(lineno, "ephemeris has no rows");
    close_block();
    return {std::move(ids), std::move(epochs), std::move(positions)};
}

ConstellationEphemeris load_ephemeris(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open ephemeris file " + path.string());
    return read_ephemeris_csv(in);
}

}  // namespace leoho
