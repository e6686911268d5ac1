#include "lnss/metrics.hpp"

#include "lnss/measurement.hpp"

#include <cmath>
#include <stdexcept>

namespace lnss {

double rms(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("rms of empty series");
    double acc = 0.0;
    for (const double v : values) acc += v * v;
    return std::sqrt(acc / static_cast<double>(values.size()));
}

UereBreakdown lunar_uere(double sigma_clk_m, const ErrorBudget& budget) {
    if (sigma_clk_m < 0.0) throw std::invalid_argument("negative clock sigma");
    UereBreakdown b;
    b.sigma_clk_m = sigma_clk_m;
    b.sigma_gd_m = budget.sigma_gd_m;
    b.sigma_eph_m = budget.sigma_eph_lnss_m;
    b.sigma_rec_m = budget.sigma_rec_m;
    b.total_m = std::sqrt(b.sigma_clk_m * b.sigma_clk_m + b.sigma_gd_m * b.sigma_gd_m +
                          b.sigma_eph_m * b.sigma_eph_m + b.sigma_rec_m * b.sigma_rec_m);
    return b;
}

}  // namespace lnss
