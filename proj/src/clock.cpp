#include "lnss/clock.hpp"

#include "lnss/constants.hpp"
#include "lnss/rng.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lnss {

std::vector<ClockSpec> clock_catalog() {
    return {
        {"CSAC", 1.3e-20, 1.0e-24, 3.7e-29, 1.5e-6, 17.0, 0.035, 0.1},
        {"MAC", 4.7e-22, 1.2e-25, 1.7e-30, 1.7e-7, 50.0, 0.084, 5.0},
        {"PRS-10", 1.3e-22, 2.3e-26, 3.3e-31, 7.0e-8, 155.0, 0.6, 14.4},
        {"RAFS", 8.0e-24, 0.0, 0.0, 4.8e-9, 1645.0, 6.35, 39.0},
        {"DSAC", 1.8e-27, 0.0, 0.0, 4.0e-11, 17000.0, 16.0, 47.0},
    };
}

ClockSpec clock_by_name(const std::string& name) {
    std::string want = name;
    std::transform(want.begin(), want.end(), want.begin(), ::toupper);
    for (const auto& spec : clock_catalog()) {
        std::string have = spec.name;
        std::transform(have.begin(), have.end(), have.begin(), ::toupper);
        if (have == want) return spec;
    }
    throw std::invalid_argument("unknown clock: " + name);
}

std::vector<ClockSpec> load_clock_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open clock file " + path);
    std::vector<ClockSpec> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("name", 0) == 0) continue;
        std::istringstream row(line);
        ClockSpec s;
        std::string field;
        std::getline(row, s.name, ',');
        auto next = [&]() {
            if (!std::getline(row, field, ',')) {
                throw std::runtime_error("short clock CSV row: " + line);
            }
            return std::stod(field);
        };
        s.h0 = next();
        s.h_minus1 = next();
        s.h_minus2 = next();
        s.tdev_per_day_s = next();
        s.size_cm3 = next();
        s.weight_kg = next();
        s.power_w = next();
        out.push_back(std::move(s));
    }
    return out;
}

Eigen::Matrix2d process_noise_q(const ClockSpec& spec, double tau_s,
                                bool squared_h2_term) {
    if (!(tau_s > 0.0)) throw std::invalid_argument("tau must be positive");
    const double t = tau_s;
    const double pi2 = PI * PI;
    const double h0 = spec.h0, h1 = spec.h_minus1, h2 = spec.h_minus2;
    const double c2 = SPEED_OF_LIGHT * SPEED_OF_LIGHT;

    const double h2_top = squared_h2_term ? h2 * h2 : h2;
    Eigen::Matrix2d q;
    q(0, 0) = h0 / 2.0 * t + 2.0 * h1 * t * t + (2.0 / 3.0) * pi2 * h2_top * t * t * t;
    q(0, 1) = h1 * t + pi2 * h2 * t * t;
    q(1, 0) = q(0, 1);
    q(1, 1) = h0 / (2.0 * t) + 4.0 * h1 + (8.0 / 3.0) * pi2 * h2 * t;
    return c2 * q;
}

ClockTruthSeries simulate_truth(const ClockSpec& spec, std::size_t n_epochs,
                                double tau_s, std::uint64_t seed) {
    if (n_epochs < 1) throw std::invalid_argument("need at least one epoch");
    Eigen::Matrix2d q = process_noise_q(spec, tau_s);
    // The filter's drift variance carries an h0/(2*tau) accounting term, but
    // white FM produces no physical frequency diffusion: feeding it into the
    // truth would random-walk the drift and break the white-FM Allan slope.
    // The simulated drift diffuses only through the flicker/random-walk terms.
    q(1, 1) = SPEED_OF_LIGHT * SPEED_OF_LIGHT *
              (4.0 * spec.h_minus1 + (8.0 / 3.0) * PI * PI * spec.h_minus2 * tau_s);

    // Matrix square root via LDLT-free eigen decomposition (Q may be singular).
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(q);
    if (es.eigenvalues().minCoeff() < -1e-12 * std::max(1.0, q.norm())) {
        throw std::runtime_error("process noise covariance not PSD for clock " + spec.name);
    }
    const Eigen::Matrix2d sqrt_q =
        es.eigenvectors() *
        es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
        es.eigenvectors().transpose();

    const double drift0 = SPEED_OF_LIGHT * spec.tdev_per_day_s / 86400.0;

    ClockTruthSeries out;
    out.seed = seed;
    out.bias_m.reserve(n_epochs);
    out.drift_mps.reserve(n_epochs);

    GaussianRng rng(mix_seed(seed, 0x10c5));
    Eigen::Vector2d x(0.0, drift0);
    out.bias_m.push_back(x(0));
    out.drift_mps.push_back(x(1));
    for (std::size_t k = 1; k < n_epochs; ++k) {
        const Eigen::Vector2d w(rng.normal(), rng.normal());
        x(0) += tau_s * x(1);
        x += sqrt_q * w;
        out.bias_m.push_back(x(0));
        out.drift_mps.push_back(x(1));
    }
    return out;
}

std::vector<std::pair<double, double>> allan_deviation(
    const std::vector<double>& bias_m, double tau0_s,
    const std::vector<double>& taus_s) {
    const std::size_t n = bias_m.size();
    std::vector<std::pair<double, double>> out;
    for (const double tau : taus_s) {
        const auto m = static_cast<std::size_t>(std::lround(tau / tau0_s));
        if (m < 1 || n < 3 * m) {
            throw std::invalid_argument("series too short for tau " + std::to_string(tau));
        }
        // Overlapping Allan variance on phase x = bias/c.
        double acc = 0.0;
        const std::size_t terms = n - 2 * m;
        for (std::size_t i = 0; i < terms; ++i) {
            const double d =
                (bias_m[i + 2 * m] - 2.0 * bias_m[i + m] + bias_m[i]) / SPEED_OF_LIGHT;
            acc += d * d;
        }
        const double t = m * tau0_s;
        const double avar = acc / (2.0 * t * t * static_cast<double>(terms));
        out.emplace_back(t, std::sqrt(avar));
    }
    return out;
}

}  // namespace lnss
