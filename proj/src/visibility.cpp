#include "lnss/visibility.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

namespace lnss {

int VisibilityTimeline::tracked_count(std::size_t i) const {
    int n = 0;
    for (const auto& s : samples.at(i)) n += s.tracked ? 1 : 0;
    return n;
}

std::vector<const LinkSample*> VisibilityTimeline::tracked_at(std::size_t i) const {
    std::vector<const LinkSample*> out;
    for (const auto& s : samples.at(i)) {
        if (s.tracked) out.push_back(&s);
    }
    return out;
}

bool segment_blocked_by_sphere(const Eigen::Vector3d& p1, const Eigen::Vector3d& p2,
                               const Eigen::Vector3d& center, double radius) {
    const Eigen::Vector3d d = p2 - p1;
    const double len2 = d.squaredNorm();
    if (len2 == 0.0) throw std::invalid_argument("degenerate segment");
    const double t = (center - p1).dot(d) / len2;
    // Closest point must be strictly interior to block.
    if (t <= 0.0 || t >= 1.0) return false;
    const Eigen::Vector3d closest = p1 + t * d;
    return (center - closest).norm() < radius;
}

double receiver_gain(const ReceiverConfig& cfg, double off_boresight_deg) {
    const double half_bw = 0.5 * cfg.beamwidth_3db_deg;
    const double g = cfg.peak_gain_dbi - 3.0 * (off_boresight_deg / half_bw) *
                                             (off_boresight_deg / half_bw);
    return std::max(g, cfg.gain_floor_dbi);
}

double system_noise_temp_k(const ReceiverConfig& cfg) {
    return cfg.antenna_noise_temp_k +
           290.0 * (std::pow(10.0, cfg.noise_figure_db / 10.0) - 1.0);
}

double compute_cn0(double range_m, double tx_power_dbw, double tx_gain_db,
                   double rx_gain_dbi, const ReceiverConfig& cfg) {
    if (!(range_m > 0.0)) throw std::invalid_argument("range must be positive");
    const double fspl_db =
        20.0 * std::log10(4.0 * PI * range_m * L1_FREQUENCY_HZ / SPEED_OF_LIGHT);
    const double n0_dbw_hz = 10.0 * std::log10(BOLTZMANN * system_noise_temp_k(cfg));
    return tx_power_dbw + tx_gain_db + rx_gain_dbi - fspl_db - n0_dbw_hz;
}

VisibilityTimeline build_visibility_timeline(const Trajectory& lnss_traj,
                                             const std::vector<GpsSatellite>& segment,
                                             const EphemerisModel& eph,
                                             const ReceiverConfig& cfg) {
    const std::size_t n_epochs = lnss_traj.size();
    if (n_epochs == 0) throw std::invalid_argument("empty trajectory");
    const double dt = lnss_traj.sample_step_s;

    VisibilityTimeline tl;
    tl.step_s = dt;
    tl.epochs.reserve(n_epochs);
    tl.samples.resize(n_epochs);

    const double earth_block_radius = EARTH_RADIUS_KM + cfg.earth_mask_altitude_km;

    // above-threshold-and-unblocked candidate flags per satellite
    std::vector<std::vector<char>> candidate(segment.size(),
                                             std::vector<char>(n_epochs, 0));

    for (std::size_t k = 0; k < n_epochs; ++k) {
        const StateVector& lnss = lnss_traj.at(k);
        const Epoch epoch = lnss.epoch;
        tl.epochs.push_back(epoch);
        const auto [earth, sun] = earth_sun_states(eph, epoch);
        (void)sun;
        const Eigen::Vector3d to_earth = earth.position_km - lnss.position_km;

        auto& row = tl.samples[k];
        row.reserve(segment.size());
        for (std::size_t si = 0; si < segment.size(); ++si) {
            const GpsSatellite& sat = segment[si];
            const StateVector gps_ec = gps_state_at(sat, epoch);
            // Earth-centered -> Moon-centered by adding the Earth state.
            const Eigen::Vector3d gps_pos = earth.position_km + gps_ec.position_km;
            const Eigen::Vector3d gps_vel = earth.velocity_kmps + gps_ec.velocity_kmps;

            const Eigen::Vector3d los = gps_pos - lnss.position_km;
            const double range_km = los.norm();
            const Eigen::Vector3d rel_vel = gps_vel - lnss.velocity_kmps;

            LinkSample s;
            s.prn = sat.elements.prn;
            s.range_m = range_km * 1000.0;
            s.range_rate_mps = rel_vel.dot(los) / range_km * 1000.0;

            if (segment_blocked_by_sphere(lnss.position_km, gps_pos,
                                          Eigen::Vector3d::Zero(), MOON_RADIUS_KM)) {
                s.blocked_by = Blocker::Moon;
            } else if (segment_blocked_by_sphere(lnss.position_km, gps_pos,
                                                 earth.position_km, earth_block_radius)) {
                s.blocked_by = Blocker::Earth;
            }

            // Transmit boresight: GPS nadir (toward Earth center).
            const Eigen::Vector3d nadir = -gps_ec.position_km;
            const double tx_off_deg =
                std::acos(std::clamp(nadir.normalized().dot(-los.normalized()), -1.0, 1.0)) *
                RAD2DEG;
            // Receiver boresight: toward Earth center (ideal steering).
            const double rx_off_deg =
                std::acos(std::clamp(to_earth.normalized().dot(los.normalized()), -1.0, 1.0)) *
                RAD2DEG;

            s.cn0_dbhz = compute_cn0(s.range_m, sat.transmit_power_dbw,
                                     transmit_gain(sat.pattern, tx_off_deg),
                                     receiver_gain(cfg, rx_off_deg), cfg);

            candidate[si][k] = (s.blocked_by == Blocker::None &&
                                s.cn0_dbhz >= cfg.acq_threshold_dbhz)
                                   ? 1
                                   : 0;
            row.push_back(s);
        }
    }

    // 15 dB-Hz for >= min_track_duration: mark runs of sufficient length.
    const std::size_t min_run =
        static_cast<std::size_t>(std::ceil(cfg.min_track_duration_s / dt));
    for (std::size_t si = 0; si < segment.size(); ++si) {
        std::size_t k = 0;
        while (k < n_epochs) {
            if (!candidate[si][k]) {
                ++k;
                continue;
            }
            std::size_t end = k;
            while (end < n_epochs && candidate[si][end]) ++end;
            if (end - k >= min_run) {
                for (std::size_t j = k; j < end; ++j) tl.samples[j][si].tracked = true;
            }
            k = end;
        }
    }
    return tl;
}

double max_ecop(const VisibilityTimeline& tl) {
    if (tl.size() == 0) throw std::invalid_argument("empty timeline");
    std::size_t longest = 0, run = 0;
    for (std::size_t k = 0; k < tl.size(); ++k) {
        if (tl.tracked_count(k) == 0) {
            ++run;
            longest = std::max(longest, run);
        } else {
            run = 0;
        }
    }
    return static_cast<double>(longest) * tl.step_s;
}

double visibility_percent(const VisibilityTimeline& tl, int k) {
    if (tl.size() == 0) throw std::invalid_argument("empty timeline");
    std::size_t count = 0;
    for (std::size_t i = 0; i < tl.size(); ++i) {
        if (tl.tracked_count(i) >= k) ++count;
    }
    return 100.0 * static_cast<double>(count) / static_cast<double>(tl.size());
}

void write_timeline_csv(const VisibilityTimeline& tl, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);

    // Column set: every PRN that appears in the timeline.
    std::map<int, std::size_t> prn_col;
    if (!tl.samples.empty()) {
        for (const auto& s : tl.samples.front()) {
            prn_col.emplace(s.prn, prn_col.size());
        }
    }
    out << "epoch_s,n_tracked";
    for (const auto& [prn, col] : prn_col) out << ",prn" << prn << "_cn0_dbhz";
    out << '\n';
    out.precision(10);
    for (std::size_t k = 0; k < tl.size(); ++k) {
        out << tl.epochs[k].seconds << ',' << tl.tracked_count(k);
        std::vector<const LinkSample*> cols(prn_col.size(), nullptr);
        for (const auto& s : tl.samples[k]) {
            const auto it = prn_col.find(s.prn);
            if (it != prn_col.end() && s.tracked) cols[it->second] = &s;
        }
        for (const auto* s : cols) {
            out << ',';
            if (s) out << s->cn0_dbhz;
        }
        out << '\n';
    }
}

}  // namespace lnss
