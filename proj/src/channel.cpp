#include "leoho/channel.hpp"

#include "leoho/geometry.hpp"

namespace leoho {

void ChannelParams::validate() const {
    if (!(carrier_frequency_hz > 0.0)) throw InvalidArgument("carrier frequency must be positive");
    if (!(bandwidth_hz > 0.0)) throw InvalidArgument("bandwidth must be positive");
    if (!(tx_power_w > 0.0)) throw InvalidArgument("transmit power must be positive");
    if (!(tx_gain > 0.0) || !(rx_gain > 0.0)) throw InvalidArgument("antenna gains must be positive");
    if (!(rician_factor > 0.0)) throw InvalidArgument("rician factor must be positive");
    if (!(orbit_altitude_m > 0.0)) throw InvalidArgument("orbit altitude must be positive");
    if (!std::isfinite(noise_psd_dbm_hz)) throw InvalidArgument("noise psd must be finite");
    if (!std::isfinite(rain_attenuation_db_km)) throw InvalidArgument("rain attenuation must be finite");
}

double atmospheric_fading(double distance_m, const ChannelParams& params) {
    // d and h both in km; only their ratio enters, chi stays in dB/km.
    const double d_km = distance_m / 1000.0;
    const double h_km = params.orbit_altitude_m / 1000.0;
    double exponent = 3.0 * d_km * params.rain_attenuation_db_km / (10.0 * h_km);
    if (params.fading_sign == FadingSign::Attenuating) exponent = -exponent;
    return std::pow(10.0, exponent);
}

double channel_gain(double distance_m, double fading, const ChannelParams& params) {
    const double fs = kSpeedOfLight_ms / (4.0 * kPi * distance_m * params.carrier_frequency_hz);
    return fs * fs * fading * params.rician_factor;
}

double received_power(double gain, const ChannelParams& params) {
    return params.tx_power_w * params.tx_gain * gain * params.rx_gain;
}

double noise_power(const ChannelParams& params) {
    return std::pow(10.0, (params.noise_psd_dbm_hz - 30.0) / 10.0) * params.bandwidth_hz;
}

double data_rate(double rx_power_w, double noise_power_w, const ChannelParams& params) {
    return params.bandwidth_hz * std::log2(1.0 + rx_power_w / noise_power_w);
}

double propagation_delay(double distance_m) { return distance_m / kSpeedOfLight_ms; }

LinkSample link_sample(Vec3 user_pos, Vec3 sat_pos, double t_s, const ChannelParams& params) {
    LinkSample s;
    s.t_s = t_s;
    s.distance_m = slant_range(user_pos, sat_pos);
    s.elevation_rad = elevation_angle(user_pos, sat_pos);
    const double gain = channel_gain(s.distance_m, atmospheric_fading(s.distance_m, params), params);
    s.rate_bps = data_rate(received_power(gain, params), noise_power(params), params);
    s.delay_s = propagation_delay(s.distance_m);
    return s;
}

}  // namespace leoho
