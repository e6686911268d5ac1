#ifndef LNSS_FILTER_HPP
#define LNSS_FILTER_HPP

#include "lnss/clock.hpp"
#include "lnss/measurement.hpp"
#include "lnss/visibility.hpp"

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

namespace lnss {

/** Clock estimate: bias in m, drift in m/s. */
using TimingState = Eigen::Vector2d;
using TimingCovariance = Eigen::Matrix2d;

struct FilterConfig {
    double tau_s = 60.0;
    int m = 1;  // measurement sampling period = m * tau
    TimingState initial_state = TimingState::Zero();
    TimingCovariance initial_covariance =
        (Eigen::Vector2d(100.0, 1e-4)).asDiagonal();
};

/** Time update: x <- A x, P <- A P A^T + Q(spec, tau), re-symmetrized. */
void time_update(TimingState& x, TimingCovariance& p, const ClockSpec& spec,
                 double tau_s);

/**
 * Kalman measurement update against the 2N residual vector (bias maps to
 * all pseudoranges, drift to all rates). r_diag is the diagonal measurement
 * covariance. Throws on a degenerate innovation covariance.
 */
void measurement_update(TimingState& x, TimingCovariance& p,
                        const MeasurementBatch& batch, const Eigen::VectorXd& r_diag);

struct FilterHistoryRow {
    double epoch_s = 0.0;
    double est_bias_m = 0.0;
    double est_drift_mps = 0.0;
    double true_bias_m = 0.0;
    double true_drift_mps = 0.0;
    double p11 = 0.0;  // bias variance, m^2
    double p22 = 0.0;  // drift variance, (m/s)^2
    int n_meas_used = 0;
};

using FilterHistory = std::vector<FilterHistoryRow>;

/**
 * Run the timing filter over a visibility timeline and a matching truth
 * series: a time update every epoch, plus a measurement update at epoch
 * index k when k mod m == 0 and at least one satellite is tracked. The
 * initial state is the truth perturbed per the initial covariance.
 * Deterministic given the seed. Throws on grid mismatch.
 */
FilterHistory run_filter(const VisibilityTimeline& timeline,
                         const ClockTruthSeries& truth, const ClockSpec& spec,
                         const FilterConfig& cfg, const ErrorBudget& budget,
                         const TrackingLoopConfig& loopcfg, std::uint64_t seed);

void write_history_csv(const FilterHistory& history, const std::string& path);

}  // namespace lnss

#endif
