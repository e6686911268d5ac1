#include "lnss/measurement.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace lnss;

namespace {

std::vector<LinkSample> make_links(const std::vector<double>& cn0s) {
    std::vector<LinkSample> links;
    int prn = 1;
    for (double cn0 : cn0s) {
        LinkSample s;
        s.prn = prn++;
        s.cn0_dbhz = cn0;
        s.tracked = true;
        links.push_back(s);
    }
    return links;
}

std::vector<const LinkSample*> pointers(const std::vector<LinkSample>& links) {
    std::vector<const LinkSample*> out;
    for (const auto& s : links) out.push_back(&s);
    return out;
}

}  // namespace

TEST_CASE("code-loop thermal noise at 20 dB-Hz") {
    TrackingLoopConfig cfg;
    const double var = dll_variance(100.0, cfg);
    CHECK(std::sqrt(var) / cfg.chip_length_m == doctest::Approx(0.0345).epsilon(2e-3));
    CHECK(std::sqrt(var) == doctest::Approx(10.1).epsilon(2e-3));
}

TEST_CASE("loop noise vanishes at high carrier power and grows monotonically below") {
    TrackingLoopConfig cfg;
    CHECK(dll_variance(1e12, cfg) < 1e-7);
    CHECK(pll_rate_variance(1e12, cfg) < 1e-10);
    double prev_dll = dll_variance(10.0, cfg);
    double prev_pll = pll_rate_variance(10.0, cfg);
    for (double cn0 = 15.0; cn0 < 2000.0; cn0 *= 1.5) {
        const double d = dll_variance(cn0, cfg);
        const double p = pll_rate_variance(cn0, cfg);
        CHECK(d < prev_dll);
        CHECK(p < prev_pll);
        prev_dll = d;
        prev_pll = p;
    }
    CHECK_THROWS(dll_variance(0.0, cfg));
    CHECK_THROWS(pll_rate_variance(-5.0, cfg));
}

TEST_CASE("carrier-loop regression value and bandwidth scaling") {
    TrackingLoopConfig cfg;
    // Frozen closed-form evaluation at c/n0 = 100 Hz with defaults.
    CHECK(pll_rate_variance(100.0, cfg) == doctest::Approx(0.0687979).epsilon(1e-3));
    // At large c/n0 the variance is linear in the loop bandwidth.
    TrackingLoopConfig half = cfg;
    half.pll_bandwidth_hz = cfg.pll_bandwidth_hz / 2.0;
    const double cn0 = 1.0e6;
    CHECK(pll_rate_variance(cn0, half) / pll_rate_variance(cn0, cfg) ==
          doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("noiseless batch reproduces bias and drift exactly") {
    const auto links = make_links({25.0, 30.0, 35.0});
    TrackingLoopConfig cfg;
    cfg.dll_bandwidth_hz = 0.0;
    cfg.pll_bandwidth_hz = 0.0;
    ErrorBudget budget;
    budget.sigma_uere_earth_m = 0.0;
    budget.sigma_eph_lnss_m = 0.0;
    const auto batch = simulate_batch(pointers(links), 123.4, -0.56, budget, cfg, 9);
    REQUIRE(batch.channels() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(batch.pseudorange_residual_m[i] == doctest::Approx(123.4));
        CHECK(batch.rate_residual_mps[i] == doctest::Approx(-0.56));
    }
}

TEST_CASE("ephemeris error draw is shared across channels") {
    const auto links = make_links({25.0, 30.0, 35.0, 40.0});
    TrackingLoopConfig cfg;
    cfg.dll_bandwidth_hz = 0.0;
    ErrorBudget budget;
    budget.sigma_uere_earth_m = 0.0;  // leave only the shared draw
    const auto batch = simulate_batch(pointers(links), 10.0, 0.0, budget, cfg, 21);
    for (std::size_t i = 0; i < batch.channels(); ++i) {
        CHECK(batch.pseudorange_residual_m[i] - 10.0 ==
              doctest::Approx(batch.shared_eph_error_m));
    }
    CHECK(batch.shared_eph_error_m != doctest::Approx(0.0));
}

TEST_CASE("ensemble residual variance matches the error model") {
    const auto links = make_links({25.0});
    TrackingLoopConfig cfg;
    ErrorBudget budget;
    const double cn0 = cn0_dbhz_to_linear(25.0);
    const double expected_var = budget.sigma_eph_lnss_m * budget.sigma_eph_lnss_m +
                                dll_variance(cn0, cfg) +
                                budget.sigma_uere_earth_m * budget.sigma_uere_earth_m;
    double sum = 0.0, sum2 = 0.0;
    const int n = 10000;
    for (int k = 0; k < n; ++k) {
        const auto batch = simulate_batch(pointers(links), 50.0, 0.0, budget, cfg,
                                          static_cast<std::uint64_t>(k));
        const double r = batch.pseudorange_residual_m[0] - 50.0;
        sum += r;
        sum2 += r * r;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(var == doctest::Approx(expected_var).epsilon(0.05));
    // Mean-correct within 3 sigma / sqrt(n).
    CHECK(std::abs(mean) < 3.0 * std::sqrt(expected_var / n));
}

TEST_CASE("batch generation is deterministic per seed and rejects empty input") {
    const auto links = make_links({28.0, 33.0});
    TrackingLoopConfig cfg;
    ErrorBudget budget;
    const auto a = simulate_batch(pointers(links), 1.0, 0.1, budget, cfg, 77);
    const auto b = simulate_batch(pointers(links), 1.0, 0.1, budget, cfg, 77);
    CHECK(a.pseudorange_residual_m == b.pseudorange_residual_m);
    CHECK(a.rate_residual_mps == b.rate_residual_mps);
    CHECK_THROWS(simulate_batch({}, 0.0, 0.0, budget, cfg, 0));
}

TEST_CASE("measurement covariance layout and floors") {
    const auto links = make_links({25.0, 25.0, 40.0});
    TrackingLoopConfig cfg;
    ErrorBudget budget;
    const auto batch = simulate_batch(pointers(links), 0.0, 0.0, budget, cfg, 3);
    const auto diag = measurement_covariance_diag(batch, budget, cfg);
    REQUIRE(diag.size() == 6);
    for (int i = 0; i < 6; ++i) CHECK(diag(i) > 0.0);
    // Pseudorange entries never dip below the 3 m ephemeris floor.
    for (int i = 0; i < 3; ++i) CHECK(diag(i) >= 9.0);
    // Equal c/n0 channels get equal entries.
    CHECK(diag(0) == doctest::Approx(diag(1)));
    CHECK(diag(3) == doctest::Approx(diag(4)));
    // Higher c/n0 shrinks both loop terms.
    CHECK(diag(2) < diag(0));
    CHECK(diag(5) < diag(3));
}
