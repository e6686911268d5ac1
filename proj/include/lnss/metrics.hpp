#ifndef LNSS_METRICS_HPP
#define LNSS_METRICS_HPP

#include <vector>

namespace lnss {

struct ErrorBudget;

/** Root-mean-square of a non-empty series. */
double rms(const std::vector<double>& values);

struct UereBreakdown {
    double sigma_clk_m = 0.0;
    double sigma_gd_m = 0.0;
    double sigma_eph_m = 0.0;
    double sigma_rec_m = 0.0;
    double total_m = 0.0;
};

/** Root-sum-square lunar UERE from the clock term and the fixed budget. */
UereBreakdown lunar_uere(double sigma_clk_m, const ErrorBudget& budget);

}  // namespace lnss

#endif
