#ifndef LNSS_CLOCK_HPP
#define LNSS_CLOCK_HPP

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

namespace lnss {

/** One clock grade: Allan-deviation PSD coefficients plus SWaP metadata. */
struct ClockSpec {
    std::string name;
    double h0 = 0.0;        // s (white FM)
    double h_minus1 = 0.0;  // unitless (flicker FM)
    double h_minus2 = 0.0;  // 1/s (random-walk FM)
    double tdev_per_day_s = 0.0;
    double size_cm3 = 0.0;
    double weight_kg = 0.0;
    double power_w = 0.0;
};

/** The five catalog grades, ordered by increasing SWaP. */
std::vector<ClockSpec> clock_catalog();

/** Look up a catalog clock by (case-insensitive) name. */
ClockSpec clock_by_name(const std::string& name);

/** Load additional specs from CSV: name,h0,hm1,hm2,tdev_day,size,weight,power. */
std::vector<ClockSpec> load_clock_csv(const std::string& path);

/**
 * Two-state process noise over an interval tau, in meters units (includes
 * c^2). Transcribed with the h_minus2 squared tau^3 term as printed in the
 * source material; set `squared_h2_term=false` for the conventional linear
 * form.
 */
Eigen::Matrix2d process_noise_q(const ClockSpec& spec, double tau_s,
                                bool squared_h2_term = true);

/** True clock-error series: bias (m) and drift (m/s) per epoch. */
struct ClockTruthSeries {
    std::vector<double> bias_m;
    std::vector<double> drift_mps;
    std::uint64_t seed = 0;
};

/**
 * Simulate the true clock: constant deterministic drift c*TDEV/86400 m/s,
 * advanced by the [[1,tau],[0,1]] transition plus zero-mean Gaussian
 * increments with covariance process_noise_q(spec, tau). Deterministic per
 * seed. Throws if Q is not positive semi-definite.
 */
ClockTruthSeries simulate_truth(const ClockSpec& spec, std::size_t n_epochs,
                                double tau_s, std::uint64_t seed);

/**
 * Overlapping Allan deviation of a clock-bias series (meters), evaluated at
 * the requested multiples of the base interval tau0. Returns (tau, adev)
 * pairs. Throws when the series is too short for a requested tau.
 */
std::vector<std::pair<double, double>> allan_deviation(
    const std::vector<double>& bias_m, double tau0_s, const std::vector<double>& taus_s);

}  // namespace lnss

#endif
