#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "leoho/format.hpp"
#include "leoho/scenario.hpp"

namespace leoho {

namespace {

std::string trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return std::string(s);
}

template <class UInt>
bool parse_uint(std::string_view text, UInt& out) {
    const std::string t = trim(text);
    if (t.empty()) return false;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    return ec == std::errc{} && ptr == t.data() + t.size();
}

std::string join(const std::vector<std::string>& lines) {
    std::string out;
    for (const std::string& l : lines) {
        if (!out.empty()) out += '\n';
        out += l;
    }
    return out;
}

// Key handlers for one section: value text -> error message (empty = ok).
using Handler = std::function<std::string(const std::string&)>;

Handler number(double& target) {
    return [&target](const std::string& v) {
        double d = 0.0;
        if (!parse_double(v, d) || !std::isfinite(d)) return std::string("expected a finite number");
        target = d;
        return std::string();
    };
}

Handler degrees(double& target_rad) {
    return [&target_rad](const std::string& v) {
        double d = 0.0;
        if (!parse_double(v, d) || !std::isfinite(d)) return std::string("expected a finite number of degrees");
        target_rad = deg2rad(d);
        return std::string();
    };
}

Handler decibels(double& target_linear) {
    return [&target_linear](const std::string& v) {
        double d = 0.0;
        if (!parse_double(v, d) || !std::isfinite(d)) return std::string("expected a finite number of dB");
        target_linear = std::pow(10.0, d / 10.0);
        return std::string();
    };
}

template <class UInt>
Handler unsigned_int(UInt& target) {
    return [&target](const std::string& v) {
        UInt u = 0;
        if (!parse_uint(v, u)) return std::string("expected a non-negative integer");
        target = u;
        return std::string();
    };
}

}  // namespace

std::vector<double> parse_lambda_list(std::string_view text) {
    std::vector<double> out;
    std::string_view rest = text;
    while (true) {
        const auto comma = rest.find(',');
        double v = 0.0;
        if (!parse_double(rest.substr(0, comma), v) || !std::isfinite(v))
            throw ConfigError("planner.lambda_s: expected a comma separated list of seconds, got '" + std::string(text) +
                              "'");
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

ScenarioConfig parse_config(std::string_view text) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    {
        std::istringstream in{std::string(text)};
        try {
            pt::read_ini(in, tree);
        } catch (const pt::ini_parser_error& e) {
            throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
        }
    }

    ScenarioConfig cfg;
    std::vector<std::string> errors;
    auto& c = cfg.constellation;
    auto& p = cfg.planner;

    std::map<std::string, std::map<std::string, Handler>> sections;
    sections["constellation"] = {
        {"source",
         [&c](const std::string& v) {
             if (v == "walker") c.source = ConstellationSource::Walker;
             else if (v == "file") c.source = ConstellationSource::File;
             else if (v == "random") c.source = ConstellationSource::Random;
             else return std::string("expected one of walker, file, random");
             return std::string();
         }},
        {"planes", unsigned_int(c.shell.planes)},
        {"sats_per_plane", unsigned_int(c.shell.sats_per_plane)},
        {"altitude_m", number(c.shell.altitude_m)},
        {"inclination_deg", degrees(c.shell.inclination_rad)},
        {"phasing_offset", number(c.shell.phasing_offset)},
        {"raan_spread_deg", degrees(c.shell.raan_spread_rad)},
        {"step_s", number(c.step_s)},
        {"horizon_s",
         [&c](const std::string& v) {
             double d = 0.0;
             if (!parse_double(v, d) || !std::isfinite(d)) return std::string("expected a finite number");
             c.horizon_s = d;
             return std::string();
         }},
        {"ephemeris_file",
         [&c](const std::string& v) {
             c.ephemeris_file = v;
             return std::string();
         }},
        {"random_count", unsigned_int(c.random_count)},
    };
    sections["user"] = {
        {"latitude_deg", degrees(cfg.user.latitude_rad)},
        {"longitude_deg", degrees(cfg.user.longitude_rad)},
        {"altitude_m", number(cfg.user.altitude_m)},
        {"min_elevation_deg", degrees(cfg.user.min_elevation_rad)},
    };
    auto& ch = cfg.channel;
    sections["channel"] = {
        {"carrier_frequency_hz", number(ch.carrier_frequency_hz)},
        {"bandwidth_hz", number(ch.bandwidth_hz)},
        {"tx_power_dbw", decibels(ch.tx_power_w)},
        {"tx_gain_dbi", decibels(ch.tx_gain)},
        {"rx_gain_dbi", decibels(ch.rx_gain)},
        {"noise_psd_dbm_hz", number(ch.noise_psd_dbm_hz)},
        {"rain_attenuation_db_km", number(ch.rain_attenuation_db_km)},
        {"rician_factor_db", decibels(ch.rician_factor)},
        {"orbit_altitude_m", number(ch.orbit_altitude_m)},
        {"fading_sign",
         [&ch](const std::string& v) {
             if (v == "as-written") ch.fading_sign = FadingSign::AsWritten;
             else if (v == "attenuating") ch.fading_sign = FadingSign::Attenuating;
             else return std::string("expected as-written or attenuating");
             return std::string();
         }},
    };
    sections["planner"] = {
        {"horizon_s", number(p.horizon_s)},
        {"lambda_s",
         [&p](const std::string& v) {
             try {
                 p.lambdas_s = parse_lambda_list(v);
             } catch (const ConfigError&) {
                 return std::string("expected a comma separated list of seconds");
             }
             return std::string();
         }},
        {"weight_delay", number(p.weight_delay)},
        {"weight_rate", number(p.weight_rate)},
        {"start_sat",
         [&p](const std::string& v) {
             std::uint32_t id = 0;
             if (v == "auto") p.start = StartPolicy::Auto;
             else if (v == "none") p.start = StartPolicy::None;
             else if (parse_uint(v, id)) {
                 p.start = StartPolicy::Fixed;
                 p.start_sat = SatId(id);
             } else return std::string("expected auto, none or a satellite id");
             return std::string();
         }},
        {"sample_step_s", number(p.sample_step_s)},
    };
    sections["baseline"] = {
        {"threshold_deg", degrees(cfg.baseline.threshold_rad)},
        {"decision_step_s", number(cfg.baseline.decision_step_s)},
    };
    sections["output"] = {
        {"directory",
         [&cfg](const std::string& v) {
             cfg.output.directory = v;
             return std::string();
         }},
        {"emit_svg",
         [&cfg](const std::string& v) {
             if (v == "true") cfg.output.emit_svg = true;
             else if (v == "false") cfg.output.emit_svg = false;
             else return std::string("expected true or false");
             return std::string();
         }},
        {"seed", unsigned_int(cfg.output.seed)},
    };

    for (const auto& [section, body] : tree) {
        auto known = sections.find(section);
        if (known == sections.end()) {
            errors.push_back(section + ": unknown " + (body.data().empty() ? "section" : "top-level key"));
            continue;
        }
        for (const auto& [key, value] : body) {
            auto handler = known->second.find(key);
            if (handler == known->second.end()) {
                errors.push_back(section + "." + key + ": unknown key");
                continue;
            }
            const std::string msg = handler->second(trim(value.data()));
            if (!msg.empty()) errors.push_back(section + "." + key + ": " + msg);
        }
    }
    if (!errors.empty()) throw ConfigError(join(errors));
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    ScenarioConfig cfg = parse_config(text.str());
    auto& file = cfg.constellation.ephemeris_file;
    if (!file.empty() && file.is_relative() && path.has_parent_path()) file = path.parent_path() / file;
    return cfg;
}

std::vector<std::string> validate_config(const ScenarioConfig& cfg) {
    std::vector<std::string> errors;
    auto check = [&errors](bool ok, const std::string& path, const std::string& constraint) {
        if (!ok) errors.push_back(path + ": " + constraint);
    };

    const auto& c = cfg.constellation;
    switch (c.source) {
        case ConstellationSource::Walker:
            check(c.shell.planes >= 1, "constellation.planes", "must be at least 1");
            check(c.shell.sats_per_plane >= 1, "constellation.sats_per_plane", "must be at least 1");
            check(c.shell.inclination_rad >= 0.0 && c.shell.inclination_rad <= kPi, "constellation.inclination_deg",
                  "must lie in [0, 180]");
            check(c.shell.raan_spread_rad >= 0.0 && c.shell.raan_spread_rad <= kTwoPi + 1e-12,
                  "constellation.raan_spread_deg", "must lie in [0, 360]");
            [[fallthrough]];
        case ConstellationSource::Random:
            check(c.shell.altitude_m > 0.0, "constellation.altitude_m", "must be positive");
            check(c.step_s > 0.0, "constellation.step_s", "must be positive");
            if (c.source == ConstellationSource::Random)
                check(c.random_count >= 1, "constellation.random_count", "must be at least 1");
            break;
        case ConstellationSource::File:
            check(!c.ephemeris_file.empty(), "constellation.ephemeris_file", "required when source = file");
            break;
    }
    if (c.horizon_s) check(*c.horizon_s >= 0.0, "constellation.horizon_s", "must be non-negative");

    const auto& u = cfg.user;
    check(std::abs(u.latitude_rad) <= kPi / 2 + 1e-12, "user.latitude_deg", "must lie in [-90, 90]");
    check(u.altitude_m > -kEarthRadius_m, "user.altitude_m", "must be above the Earth's centre");
    check(u.min_elevation_rad >= 0.0 && u.min_elevation_rad < kPi / 2, "user.min_elevation_deg",
          "must lie in [0, 90)");

    const auto& ch = cfg.channel;
    check(ch.carrier_frequency_hz > 0.0, "channel.carrier_frequency_hz", "must be positive");
    check(ch.bandwidth_hz > 0.0, "channel.bandwidth_hz", "must be positive");
    check(ch.tx_power_w > 0.0, "channel.tx_power_dbw", "must be finite");
    check(ch.tx_gain > 0.0, "channel.tx_gain_dbi", "must be finite");
    check(ch.rx_gain > 0.0, "channel.rx_gain_dbi", "must be finite");
    check(ch.rician_factor > 0.0, "channel.rician_factor_db", "must be finite");
    check(ch.orbit_altitude_m > 0.0, "channel.orbit_altitude_m", "must be positive");

    const auto& p = cfg.planner;
    check(p.horizon_s > 0.0, "planner.horizon_s", "must be positive");
    check(!p.lambdas_s.empty(), "planner.lambda_s", "at least one value required");
    check(p.weight_delay >= 0.0, "planner.weight_delay", "must be non-negative");
    check(p.weight_rate >= 0.0, "planner.weight_rate", "must be non-negative");
    check(std::abs(p.weight_delay + p.weight_rate - 1.0) <= 1e-9, "planner.weight_delay",
          "weight_delay + weight_rate must equal 1");
    check(p.sample_step_s > 0.0, "planner.sample_step_s", "must be positive");
    std::set<std::string> labels;
    for (double lambda : p.lambdas_s) {
        const std::string where = "planner.lambda_s";
        if (!(lambda > 0.0)) {
            errors.push_back(where + ": " + format_double(lambda) + " must be positive");
            continue;
        }
        if (p.horizon_s > 0.0) {
            try {
                build_time_grid(p.horizon_s, lambda);
            } catch (const InvalidArgument& e) {
                errors.push_back(where + ": " + e.what());
            }
        }
        check(p.sample_step_s <= 2.0 * lambda, "planner.sample_step_s",
              "must not exceed 2*lambda = " + format_double(2.0 * lambda) + " s");
        check(labels.insert(gm_label(lambda)).second, where, "duplicate value " + format_double(lambda));
    }

    check(cfg.baseline.threshold_rad >= 0.0 && cfg.baseline.threshold_rad < kPi / 2, "baseline.threshold_deg",
          "must lie in [0, 90)");
    check(cfg.baseline.decision_step_s > 0.0, "baseline.decision_step_s", "must be positive");
    check(!cfg.output.directory.empty(), "output.directory", "must not be empty");
    return errors;
}

void require_valid(const ScenarioConfig& cfg) {
    const auto errors = validate_config(cfg);
    if (!errors.empty()) throw ConfigError(join(errors));
}

std::string gm_label(double lambda_s) { return "GM-" + format_double(2.0 * lambda_s / 60.0); }

}  // namespace leoho
