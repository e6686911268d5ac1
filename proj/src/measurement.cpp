#include "lnss/measurement.hpp"

#include "lnss/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace lnss {

double dll_variance(double cn0_linear, const TrackingLoopConfig& cfg) {
    if (!(cn0_linear > 0.0)) throw std::invalid_argument("c/n0 must be positive");
    const double b = cfg.dll_bandwidth_hz;
    const double d = cfg.correlator_spacing_chips;
    const double t = cfg.integration_time_s;
    // Non-coherent early-late power discriminator, wide-band condition.
    const double var_chips2 =
        (b * d) / (2.0 * cn0_linear) * (1.0 + 2.0 / ((2.0 - d) * t * cn0_linear));
    return var_chips2 * cfg.chip_length_m * cfg.chip_length_m;
}

double pll_rate_variance(double cn0_linear, const TrackingLoopConfig& cfg) {
    if (!(cn0_linear > 0.0)) throw std::invalid_argument("c/n0 must be positive");
    const double t = cfg.integration_time_s;
    const double sigma_f_hz =
        1.0 / (2.0 * PI * t) *
        std::sqrt(4.0 * cfg.pll_bandwidth_hz / cn0_linear * (1.0 + 1.0 / (t * cn0_linear)));
    const double sigma_mps = cfg.carrier_wavelength_m * sigma_f_hz;
    return sigma_mps * sigma_mps;
}

MeasurementBatch simulate_batch(const std::vector<const LinkSample*>& tracked,
                                double true_bias_m, double true_drift_mps,
                                const ErrorBudget& budget,
                                const TrackingLoopConfig& cfg, std::uint64_t seed) {
    if (tracked.empty()) throw std::invalid_argument("no tracked channels");

    GaussianRng rng(seed);
    MeasurementBatch batch;
    batch.shared_eph_error_m = budget.sigma_eph_lnss_m * rng.normal();

    for (const LinkSample* s : tracked) {
        const double cn0 = cn0_dbhz_to_linear(s->cn0_dbhz);
        const double sigma_rho =
            std::sqrt(dll_variance(cn0, cfg) +
                      budget.sigma_uere_earth_m * budget.sigma_uere_earth_m);
        const double sigma_rate = std::sqrt(pll_rate_variance(cn0, cfg));
        batch.prns.push_back(s->prn);
        batch.cn0_dbhz.push_back(s->cn0_dbhz);
        batch.pseudorange_residual_m.push_back(true_bias_m + batch.shared_eph_error_m +
                                               sigma_rho * rng.normal());
        batch.rate_residual_mps.push_back(true_drift_mps + sigma_rate * rng.normal());
    }
    return batch;
}

Eigen::VectorXd measurement_covariance_diag(const MeasurementBatch& batch,
                                            const ErrorBudget& budget,
                                            const TrackingLoopConfig& cfg) {
    const std::size_t n = batch.channels();
    Eigen::VectorXd diag(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        const double cn0 = cn0_dbhz_to_linear(batch.cn0_dbhz[i]);
        diag(static_cast<long>(i)) =
            dll_variance(cn0, cfg) +
            budget.sigma_uere_earth_m * budget.sigma_uere_earth_m +
            budget.sigma_eph_lnss_m * budget.sigma_eph_lnss_m;
        diag(static_cast<long>(n + i)) = pll_rate_variance(cn0, cfg);
    }
    return diag;
}

}  // namespace lnss
