#pragma once

// Shared value types, physical constants and the exception hierarchy used by
// every module of the planner core.

#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace leoho {

// Physical constants (SI).
inline constexpr double kEarthRadius_m = 6'371'000.0;
inline constexpr double kEarthMu_m3s2 = 3.986004418e14;
inline constexpr double kEarthRotationRate_rads = 7.2921159e-5;
inline constexpr double kSpeedOfLight_ms = 299'792'458.0;
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend constexpr Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
    friend constexpr bool operator==(Vec3, Vec3) = default;

    constexpr double dot(Vec3 o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }
};

// Satellite identifier. Walker-generated ids are plane * sats_per_plane + slot.
struct SatId {
    std::uint32_t value = 0;

    constexpr SatId() = default;
    constexpr explicit SatId(std::uint32_t v) : value(v) {}
    friend constexpr auto operator<=>(SatId, SatId) = default;
};

// Error hierarchy. The C API maps each class onto a status code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class OutOfRange : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// No eligible satellite for some part of the horizon; the plan is infeasible.
class CoverageGap : public Error {
public:
    CoverageGap(std::size_t slot, const std::string& what) : Error(what), slot_(slot) {}
    // 1-based slot index, or 0 when the gap is not slot-aligned.
    std::size_t slot() const { return slot_; }

private:
    std::size_t slot_;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class InvalidPlan : public Error {
public:
    using Error::Error;
};

}  // namespace leoho

template <>
struct std::hash<leoho::SatId> {
    std::size_t operator()(leoho::SatId id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
