#ifndef LNSS_MEASUREMENT_HPP
#define LNSS_MEASUREMENT_HPP

#include "lnss/constants.hpp"
#include "lnss/visibility.hpp"

#include <Eigen/Core>
#include <cstdint>
#include <vector>

namespace lnss {

/** DLL/PLL tracking-loop parameters. */
struct TrackingLoopConfig {
    double dll_bandwidth_hz = 0.5;
    double correlator_spacing_chips = 0.3;
    double integration_time_s = 0.02;
    double frontend_bandwidth_hz = 26.0e6;
    double pll_bandwidth_hz = 0.5;
    double chip_length_m = CA_CHIP_LENGTH_M;
    double carrier_wavelength_m = L1_WAVELENGTH_M;
};

/** 1-sigma ranging error components, meters. */
struct ErrorBudget {
    double sigma_uere_earth_m = 0.5;
    double sigma_eph_lnss_m = 3.0;
    double sigma_gd_m = 0.15;
    double sigma_rec_m = 0.1;
};

/** Simulated residual channels at one epoch. */
struct MeasurementBatch {
    std::vector<int> prns;
    std::vector<double> pseudorange_residual_m;
    std::vector<double> rate_residual_mps;
    std::vector<double> cn0_dbhz;
    double shared_eph_error_m = 0.0;

    std::size_t channels() const { return prns.size(); }
};

/**
 * Thermal-noise variance of a non-coherent early-late power DLL
 * discriminator, converted to m^2. cn0_linear in Hz.
 */
double dll_variance(double cn0_linear, const TrackingLoopConfig& cfg);

/** PLL/FLL thermal frequency-error variance mapped to (m/s)^2. */
double pll_rate_variance(double cn0_linear, const TrackingLoopConfig& cfg);

inline double cn0_dbhz_to_linear(double cn0_dbhz) {
    return std::pow(10.0, cn0_dbhz / 10.0);
}

/**
 * Simulate one epoch of residuals from the tracked channels: pseudorange
 * residual = true bias + shared ephemeris draw + per-channel noise; rate
 * residual = true drift + per-channel noise. Deterministic given seed.
 * Throws on an empty channel list.
 */
MeasurementBatch simulate_batch(const std::vector<const LinkSample*>& tracked,
                                double true_bias_m, double true_drift_mps,
                                const ErrorBudget& budget,
                                const TrackingLoopConfig& cfg, std::uint64_t seed);

/**
 * Diagonal 2N measurement covariance, ordered [pseudoranges; rates]:
 * sigma_rho^2 = dll + uere_earth^2 + eph_lnss^2, sigma_rhodot^2 = pll.
 * Off-diagonals are zero even though the simulated ephemeris error is
 * correlated across channels (deliberate filter/truth mismatch).
 */
Eigen::VectorXd measurement_covariance_diag(const MeasurementBatch& batch,
                                            const ErrorBudget& budget,
                                            const TrackingLoopConfig& cfg);

}  // namespace lnss

#endif
