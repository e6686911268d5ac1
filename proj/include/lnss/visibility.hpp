#ifndef LNSS_VISIBILITY_HPP
#define LNSS_VISIBILITY_HPP

#include "lnss/ephemeris.hpp"
#include "lnss/gps.hpp"
#include "lnss/propagator.hpp"

#include <string>
#include <vector>

namespace lnss {

/** Spaceborne Earth-GPS receiver, steering antenna pointed at Earth. */
struct ReceiverConfig {
    double peak_gain_dbi = 14.0;
    double beamwidth_3db_deg = 12.2;  // full width
    double gain_floor_dbi = -10.0;
    double lna_gain_db = 30.0;
    double noise_figure_db = 2.0;
    double antenna_noise_temp_k = 113.0;
    double acq_threshold_dbhz = 15.0;
    double min_track_duration_s = 40.0;
    double earth_mask_altitude_km = 100.0;  // Earth occultation radius inflation
};

enum class Blocker { None, Earth, Moon };

struct LinkSample {
    int prn = 0;
    double range_m = 0.0;
    double range_rate_mps = 0.0;
    double cn0_dbhz = 0.0;
    Blocker blocked_by = Blocker::None;
    bool tracked = false;
};

/** Per-epoch link records on a uniform grid; tracked channels carry the 15 dB-Hz / 40 s rule. */
struct VisibilityTimeline {
    std::vector<Epoch> epochs;
    double step_s = 60.0;
    std::vector<std::vector<LinkSample>> samples;  // all candidate links per epoch

    std::size_t size() const { return epochs.size(); }
    int tracked_count(std::size_t i) const;
    std::vector<const LinkSample*> tracked_at(std::size_t i) const;
};

/**
 * True iff the open segment p1-p2 passes within `radius` of `center` at a
 * point strictly interior to the segment (endpoints on the surface do not
 * block).
 */
bool segment_blocked_by_sphere(const Eigen::Vector3d& p1, const Eigen::Vector3d& p2,
                               const Eigen::Vector3d& center, double radius);

/** Parabolic steering-antenna gain: peak - 3 (theta/(bw/2))^2 dB, floored. */
double receiver_gain(const ReceiverConfig& cfg, double off_boresight_deg);

/** System noise temperature T_ant + 290 (10^(NF/10) - 1), in K. */
double system_noise_temp_k(const ReceiverConfig& cfg);

/** Link-budget C/N0 in dB-Hz at L1. */
double compute_cn0(double range_m, double tx_power_dbw, double tx_gain_db,
                   double rx_gain_dbi, const ReceiverConfig& cfg);

/**
 * Build the per-epoch visibility timeline for an LNSS trajectory
 * (MOON_INERTIAL, uniform grid) against the Earth-GPS segment. A channel is
 * tracked when unblocked, above the C/N0 threshold, and inside a contiguous
 * above-threshold run of at least ceil(min_track_duration/step) samples.
 */
VisibilityTimeline build_visibility_timeline(const Trajectory& lnss_traj,
                                             const std::vector<GpsSatellite>& segment,
                                             const EphemerisModel& eph,
                                             const ReceiverConfig& cfg);

/** Longest run of epochs with zero tracked satellites, in seconds. */
double max_ecop(const VisibilityTimeline& tl);

/** Percent of epochs with at least k tracked satellites. */
double visibility_percent(const VisibilityTimeline& tl, int k);

/** CSV export: epoch_s, n_tracked, then per-PRN cn0_dbhz (empty when untracked). */
void write_timeline_csv(const VisibilityTimeline& tl, const std::string& path);

}  // namespace lnss

#endif
