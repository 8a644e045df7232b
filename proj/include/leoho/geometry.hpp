#pragma once

// User-satellite geometry on a spherical Earth.

#include "leoho/types.hpp"

namespace leoho {

struct GroundUser {
    double latitude_rad = 0.0;
    double longitude_rad = 0.0;
    double altitude_m = 0.0;
    double min_elevation_rad = deg2rad(10.0);

    void validate() const;
};

struct LinkGeometry {
    double slant_range_m = 0.0;
    double elevation_rad = 0.0;
    bool visible = false;
};

Vec3 geodetic_to_ecef(const GroundUser& user);

double slant_range(Vec3 user_pos, Vec3 sat_pos);

// sqrt(h^2 + (x - o_x)^2 + (y - o_y)^2), with (o_x, o_y) the point directly
// below the satellite. Nadir-plane approximation of the slant range.
double planar_distance(double h_m, double x_m, double y_m, double o_x_m, double o_y_m);

// Angle of the user->satellite vector above the user's local horizon, in
// [-pi/2, pi/2].
double elevation_angle(Vec3 user_pos, Vec3 sat_pos);

LinkGeometry link_geometry(const GroundUser& user, Vec3 user_pos, Vec3 sat_pos);

}  // namespace leoho
