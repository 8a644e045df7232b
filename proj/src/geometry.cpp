#include "leoho/geometry.hpp"

#include <algorithm>

namespace leoho {

void GroundUser::validate() const {
    if (!(std::abs(latitude_rad) <= kPi / 2)) throw InvalidArgument("latitude must lie in [-90, 90] degrees");
    if (!std::isfinite(longitude_rad)) throw InvalidArgument("longitude must be finite");
    if (!std::isfinite(altitude_m) || altitude_m <= -kEarthRadius_m) throw InvalidArgument("altitude out of range");
    if (!(min_elevation_rad >= 0.0 && min_elevation_rad < kPi / 2))
        throw InvalidArgument("min elevation must lie in [0, 90) degrees");
}

Vec3 geodetic_to_ecef(const GroundUser& user) {
    const double r = kEarthRadius_m + user.altitude_m;
    const double cl = std::cos(user.latitude_rad);
    return {r * cl * std::cos(user.longitude_rad), r * cl * std::sin(user.longitude_rad),
            r * std::sin(user.latitude_rad)};
}

double slant_range(Vec3 user_pos, Vec3 sat_pos) { return (sat_pos - user_pos).norm(); }

double planar_distance(double h_m, double x_m, double y_m, double o_x_m, double o_y_m) {
    const double dx = x_m - o_x_m;
    const double dy = y_m - o_y_m;
    return std::sqrt(h_m * h_m + dx * dx + dy * dy);
}

double elevation_angle(Vec3 user_pos, Vec3 sat_pos) {
    const Vec3 los = sat_pos - user_pos;
    const double range = los.norm();
    if (range == 0.0) return kPi / 2;
    const double s = los.dot(user_pos) / (range * user_pos.norm());
    return std::asin(std::clamp(s, -1.0, 1.0));
}

LinkGeometry link_geometry(const GroundUser& user, Vec3 user_pos, Vec3 sat_pos) {
    LinkGeometry g;
    g.slant_range_m = slant_range(user_pos, sat_pos);
    g.elevation_rad = elevation_angle(user_pos, sat_pos);
    g.visible = g.elevation_rad >= user.min_elevation_rad;
    return g;
}

}  // namespace leoho
