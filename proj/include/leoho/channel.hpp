#pragma once

// Downlink budget: atmospheric fading, free-space channel gain, received
// power, Shannon rate and propagation delay.

#include "leoho/types.hpp"

namespace leoho {

enum class FadingSign {
    // 10^(+3 d chi / (10 h)): the factor grows with distance.
    AsWritten,
    // 10^(-3 d chi / (10 h)): physically attenuating.
    Attenuating,
};

struct ChannelParams {
    double carrier_frequency_hz = 11.9e9;
    double bandwidth_hz = 10e6;
    double tx_power_w = 10.0;   // 10 dBW
    double tx_gain = 1.0;       // linear
    double rx_gain = 1.0;       // linear
    double noise_psd_dbm_hz = -173.0;
    double rain_attenuation_db_km = 0.05;
    double rician_factor = 100.0;  // 20 dB, deterministic
    double orbit_altitude_m = 550'000.0;
    FadingSign fading_sign = FadingSign::AsWritten;

    void validate() const;
};

struct LinkSample {
    double t_s = 0.0;
    double distance_m = 0.0;
    double rate_bps = 0.0;
    double delay_s = 0.0;
    double elevation_rad = 0.0;
};

double atmospheric_fading(double distance_m, const ChannelParams& params);

// (c / (4 pi d f_c))^2 * A * phi
double channel_gain(double distance_m, double fading, const ChannelParams& params);

double received_power(double gain, const ChannelParams& params);

double noise_power(const ChannelParams& params);

// B * log2(1 + P_rx / P_N)
double data_rate(double rx_power_w, double noise_power_w, const ChannelParams& params);

double propagation_delay(double distance_m);

// Full chain for one user/satellite pair. Visibility is the caller's concern.
LinkSample link_sample(Vec3 user_pos, Vec3 sat_pos, double t_s, const ChannelParams& params);

}  // namespace leoho
