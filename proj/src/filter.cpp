#include "lnss/filter.hpp"

#include "lnss/rng.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace lnss {

namespace {
void resymmetrize(TimingCovariance& p) { p = 0.5 * (p + p.transpose()).eval(); }
}  // namespace

void time_update(TimingState& x, TimingCovariance& p, const ClockSpec& spec,
                 double tau_s) {
    Eigen::Matrix2d a;
    a << 1.0, tau_s, 0.0, 1.0;
    x = a * x;
    p = a * p * a.transpose() + process_noise_q(spec, tau_s);
    resymmetrize(p);
}

void measurement_update(TimingState& x, TimingCovariance& p,
                        const MeasurementBatch& batch, const Eigen::VectorXd& r_diag) {
    const long n = static_cast<long>(batch.channels());
    if (n == 0) throw std::invalid_argument("empty measurement batch");
    if (r_diag.size() != 2 * n) throw std::invalid_argument("R size mismatch");

    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2 * n, 2);
    c.col(0).head(n).setOnes();
    c.col(1).tail(n).setOnes();

    Eigen::VectorXd z(2 * n);
    for (long i = 0; i < n; ++i) {
        z(i) = batch.pseudorange_residual_m[static_cast<std::size_t>(i)];
        z(n + i) = batch.rate_residual_mps[static_cast<std::size_t>(i)];
    }

    Eigen::MatrixXd s = c * p * c.transpose();
    s.diagonal() += r_diag;
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(s);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
        throw std::runtime_error("innovation covariance not invertible");
    }
    const Eigen::Matrix<double, 2, Eigen::Dynamic> k =
        (ldlt.solve(c * p)).transpose();

    x += k * (z - c * x);
    p = (Eigen::Matrix2d::Identity() - k * c) * p;
    resymmetrize(p);
}

FilterHistory run_filter(const VisibilityTimeline& timeline,
                         const ClockTruthSeries& truth, const ClockSpec& spec,
                         const FilterConfig& cfg, const ErrorBudget& budget,
                         const TrackingLoopConfig& loopcfg, std::uint64_t seed) {
    const std::size_t n = timeline.size();
    if (truth.bias_m.size() != n || truth.drift_mps.size() != n) {
        throw std::invalid_argument("timeline/truth grid mismatch");
    }
    if (cfg.m < 1) throw std::invalid_argument("m must be >= 1");

    // Initial estimate: truth perturbed per the initial covariance.
    GaussianRng init_rng(mix_seed(seed, 0xf117));
    TimingState x(truth.bias_m[0] + std::sqrt(cfg.initial_covariance(0, 0)) * init_rng.normal(),
                  truth.drift_mps[0] + std::sqrt(cfg.initial_covariance(1, 1)) * init_rng.normal());
    TimingCovariance p = cfg.initial_covariance;

    FilterHistory history;
    history.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) time_update(x, p, spec, cfg.tau_s);

        int n_meas = 0;
        if (k % static_cast<std::size_t>(cfg.m) == 0) {
            const auto tracked = timeline.tracked_at(k);
            if (!tracked.empty()) {
                const MeasurementBatch batch =
                    simulate_batch(tracked, truth.bias_m[k], truth.drift_mps[k], budget,
                                   loopcfg, mix_seed(seed, k));
                const Eigen::VectorXd r = measurement_covariance_diag(batch, budget, loopcfg);
                measurement_update(x, p, batch, r);
                n_meas = static_cast<int>(batch.channels());
            }
        }

        history.push_back({timeline.epochs[k].seconds, x(0), x(1), truth.bias_m[k],
                           truth.drift_mps[k], p(0, 0), p(1, 1), n_meas});
    }
    return history;
}

void write_history_csv(const FilterHistory& history, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "epoch_s,est_bias_m,est_drift_mps,true_bias_m,true_drift_mps,p11,p22,n_meas_used\n";
    out.precision(12);
    for (const auto& row : history) {
        out << row.epoch_s << ',' << row.est_bias_m << ',' << row.est_drift_mps << ','
            << row.true_bias_m << ',' << row.true_drift_mps << ',' << row.p11 << ','
            << row.p22 << ',' << row.n_meas_used << '\n';
    }
}

}  // namespace lnss
