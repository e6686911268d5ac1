#include "lnss/measurement.hpp"
#include "lnss/metrics.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace lnss;

TEST_CASE("rms arithmetic") {
    CHECK(rms({3.0, 4.0, 0.0}) == doctest::Approx(std::sqrt(25.0 / 3.0)));
    CHECK(rms({-7.5, -7.5, -7.5}) == doctest::Approx(7.5));
    CHECK(rms({0.0}) == doctest::Approx(0.0));
    CHECK_THROWS(rms({}));
}

TEST_CASE("rms dominates the mean magnitude") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> g(0.5, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> v(100);
        double mean = 0.0;
        for (auto& x : v) {
            x = g(rng);
            mean += x;
        }
        mean /= static_cast<double>(v.size());
        CHECK(rms(v) >= std::abs(mean) - 1e-12);
    }
}

TEST_CASE("lunar ranging error with a perfect clock") {
    const auto u = lunar_uere(0.0, ErrorBudget{});
    CHECK(u.total_m == doctest::Approx(3.0054).epsilon(1e-4));
    CHECK(u.sigma_clk_m == 0.0);
    CHECK(u.sigma_eph_m == doctest::Approx(3.0));
    CHECK(u.sigma_gd_m == doctest::Approx(0.15));
    CHECK(u.sigma_rec_m == doctest::Approx(0.1));
}

TEST_CASE("lunar ranging error with a 12.142 m clock term") {
    const auto u = lunar_uere(12.142, ErrorBudget{});
    CHECK(u.total_m == doctest::Approx(12.51).epsilon(1e-3));
}

TEST_CASE("total equals the explicit root-sum-square") {
    ErrorBudget budget;
    for (double clk : {0.0, 0.5, 2.0, 11.0, 300.0}) {
        const auto u = lunar_uere(clk, budget);
        const double rss = std::sqrt(clk * clk + 0.15 * 0.15 + 9.0 + 0.01);
        CHECK(u.total_m == doctest::Approx(rss).epsilon(1e-12));
    }
}

TEST_CASE("total is strictly increasing in the clock term") {
    ErrorBudget budget;
    double prev = lunar_uere(0.0, budget).total_m;
    for (double clk = 0.5; clk < 50.0; clk += 0.5) {
        const double t = lunar_uere(clk, budget).total_m;
        CHECK(t > prev);
        prev = t;
    }
}

TEST_CASE("clock-dominated regime approaches the clock term") {
    ErrorBudget budget;
    CHECK(lunar_uere(1.0e8, budget).total_m - 1.0e8 ==
          doctest::Approx(0.0).epsilon(1e-6).scale(1.0));
    CHECK_THROWS(lunar_uere(-1.0, budget));
}
