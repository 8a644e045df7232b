#pragma once

// Circular-orbit Walker constellation generator and the time-indexed
// Earth-fixed ephemeris table shared by every downstream stage.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <vector>

#include "leoho/types.hpp"

namespace leoho {

struct OrbitalShell {
    std::uint32_t planes = 22;
    std::uint32_t sats_per_plane = 72;
    double altitude_m = 550'000.0;
    double inclination_rad = deg2rad(53.0);
    // Fraction of the in-plane spacing by which plane p+1 leads plane p.
    double phasing_offset = 0.0;
    // Total right-ascension span across planes (2*pi = Walker delta).
    double raan_spread_rad = kTwoPi;

    std::uint32_t satellite_count() const { return planes * sats_per_plane; }
    double semi_major_axis_m() const { return kEarthRadius_m + altitude_m; }

    // Throws InvalidArgument when an invariant is violated.
    void validate() const;
};

// Keplerian period 2*pi*sqrt(a^3/mu) of a circular orbit with radius a.
double orbital_period_s(double semi_major_axis_m);

// Inertial position of satellite (plane_index, slot_index) at time t.
Vec3 propagate_circular(const OrbitalShell& shell, std::uint32_t plane_index, std::uint32_t slot_index,
                        double t_s);

// Rotates an inertial vector into the Earth-fixed frame at time t
// (Earth-fixed and inertial frames coincide at t = 0).
Vec3 inertial_to_earth_fixed(Vec3 pos, double t_s);

// Immutable table of Earth-fixed positions: one entry per (epoch, satellite).
class ConstellationEphemeris {
public:
    // positions is epoch-major: positions[e * sat_ids.size() + s].
    // Throws InvalidArgument when the table violates an invariant.
    ConstellationEphemeris(std::vector<SatId> sat_ids, std::vector<double> epochs_s, std::vector<Vec3> positions);

    std::span<const SatId> sat_ids() const { return sat_ids_; }
    std::span<const double> epochs() const { return epochs_; }
    std::size_t satellite_count() const { return sat_ids_.size(); }
    std::size_t epoch_count() const { return epochs_.size(); }
    double first_epoch() const { return epochs_.front(); }
    double last_epoch() const { return epochs_.back(); }

    bool contains(SatId id) const { return index_.contains(id); }
    // Throws InvalidArgument for an unknown id.
    std::size_t index_of(SatId id) const;

    const Vec3& at(std::size_t epoch_index, std::size_t sat_index) const {
        return positions_[epoch_index * sat_ids_.size() + sat_index];
    }

    // Linear interpolation between bracketing epochs, exact on grid epochs.
    // Throws OutOfRange outside [first_epoch, last_epoch].
    Vec3 position_at(SatId id, double t_s) const;
    Vec3 position_at_index(std::size_t sat_index, double t_s) const;

    friend bool operator==(const ConstellationEphemeris&, const ConstellationEphemeris&);

private:
    std::vector<SatId> sat_ids_;
    std::vector<double> epochs_;
    std::vector<Vec3> positions_;
    std::unordered_map<SatId, std::size_t> index_;
};

// Samples every satellite of the shell at each multiple of step in
// [0, horizon].
ConstellationEphemeris generate_walker(const OrbitalShell& shell, double horizon_s, double step_s);

// Random circular orbits (inclination, RAAN and phase uniform) at one
// altitude. Reproducible bit-for-bit for a given seed.
ConstellationEphemeris generate_random(std::uint32_t count, double altitude_m, std::uint64_t seed, double horizon_s,
                                       double step_s);

// CSV with header `t_s,sat_id,x_m,y_m,z_m`, rows grouped by epoch ascending.
void write_ephemeris_csv(const ConstellationEphemeris& eph, std::ostream& out);
ConstellationEphemeris read_ephemeris_csv(std::istream& in);
ConstellationEphemeris load_ephemeris(const std::filesystem::path& path);

}  // namespace leoho
