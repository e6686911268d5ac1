#ifndef LNSS_GPS_HPP
#define LNSS_GPS_HPP

#include "lnss/frames.hpp"
#include "lnss/orbit.hpp"

#include <string>
#include <vector>

namespace lnss {

/** One YUMA almanac block. Angles in rad, sqrt_a in sqrt(meters). */
struct AlmanacRecord {
    int prn = 0;
    int health = 0;
    double eccentricity = 0.0;
    double toa_s = 0.0;
    double inclination_rad = 0.0;
    double raan_rate_radps = 0.0;
    double sqrt_a = 0.0;
    double raan_rad = 0.0;
    double arg_perigee_rad = 0.0;
    double mean_anomaly_rad = 0.0;
    double af0_s = 0.0;
    double af1_sps = 0.0;
    int week = 0;
};

enum class GpsBlock { IIR, IIRM, IIF, III };

std::string block_name(GpsBlock b);

/**
 * Azimuth-averaged transmit gain pattern: (off-boresight deg, gain dB) knots
 * on [16, 90], a constant fill below 16 deg, and a -30 dB floor past 90 deg.
 */
struct AntennaPattern {
    std::vector<std::pair<double, double>> knots;  // strictly increasing angles
    double fill_gain_below_16deg_db = -2.0;
};

struct GpsSatellite {
    AlmanacRecord elements;
    GpsBlock block = GpsBlock::IIR;
    double transmit_power_dbw = 15.0;
    AntennaPattern pattern;
};

/**
 * Parse YUMA almanac text ("******** Week N almanac for PRN-xx ********"
 * blocks of "key: value" lines). Unknown keys are ignored; unhealthy records
 * are retained with their health flag. Throws std::runtime_error on a
 * malformed numeric field or a block missing mandatory fields.
 */
std::vector<AlmanacRecord> parse_yuma(const std::string& text);

/** Serialize records back to YUMA text (round-trip partner of parse_yuma). */
std::string serialize_yuma(const std::vector<AlmanacRecord>& records);

/**
 * Synthetic 31-satellite constellation: near-circular, i=55 deg, a=26560 km,
 * six planes 60 deg apart, even in-plane phasing with cross-plane offsets.
 * Deterministic given the seed (small seeded phase jitter only).
 */
std::vector<AlmanacRecord> synthesize_constellation(int n_planes = 6, int n_sats = 31,
                                                    unsigned long long seed = 0);

/**
 * Deterministic block assignment in record order: 8 IIR, 7 IIRM, 12 IIF,
 * 4 III for 31 records, proportional boundaries otherwise. Attaches each
 * block's default pattern and transmit power.
 */
std::vector<GpsSatellite> assign_blocks(const std::vector<AlmanacRecord>& records);

/** Default azimuth-averaged parametric pattern for a block. */
AntennaPattern default_pattern(GpsBlock block);
double default_transmit_power_dbw(GpsBlock block);

/** Load a pattern CSV: header angle_deg,gain_db plus #fill_gain_db= / #tx_power_dbw= lines. */
AntennaPattern load_pattern_csv(const std::string& path, double* tx_power_dbw = nullptr);

/** Almanac elements propagated to the epoch; EARTH_INERTIAL state. */
StateVector gps_state_at(const GpsSatellite& sat, const Epoch& epoch);

/** Pattern lookup: fill below 16 deg, linear interpolation to 90, floor beyond. */
double transmit_gain(const AntennaPattern& p, double off_boresight_deg);

}  // namespace lnss

#endif
