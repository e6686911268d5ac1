#include "lnss/ephemeris.hpp"
#include "lnss/frames.hpp"

#include <doctest.h>

#include <random>

using namespace lnss;

namespace {

StateVector earth_at(double t) {
    EphemerisModel eph;
    return earth_sun_states(eph, Epoch(t)).first;
}

StateVector rotating_state(const Eigen::Vector3d& r, const Eigen::Vector3d& v,
                           double t = 0.0) {
    StateVector s;
    s.position_km = r;
    s.velocity_kmps = v;
    s.frame = FrameId::MoonEmRotating;
    s.epoch = Epoch(t);
    return s;
}

}  // namespace

TEST_CASE("origin is frame-invariant") {
    const auto out = em_rotating_to_moon_inertial(
        rotating_state(Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero()), earth_at(0.0));
    CHECK(out.position_km.norm() == doctest::Approx(0.0));
    CHECK(out.velocity_kmps.norm() == doctest::Approx(0.0));
    CHECK(out.frame == FrameId::MoonInertial);
}

TEST_CASE("rotation preserves position norm") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-5e4, 5e4);
    for (int i = 0; i < 50; ++i) {
        const Eigen::Vector3d r(u(rng), u(rng), u(rng));
        const Eigen::Vector3d v(u(rng) * 1e-4, u(rng) * 1e-4, u(rng) * 1e-4);
        const auto earth = earth_at(u(rng) + 1e5);
        const auto out = em_rotating_to_moon_inertial(rotating_state(r, v, earth.epoch.seconds), earth);
        CHECK(out.position_km.norm() ==
              doctest::Approx(r.norm()).epsilon(1e-12));
    }
}

TEST_CASE("round-trip rotating -> inertial -> rotating is identity") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-5e4, 5e4);
    for (int i = 0; i < 50; ++i) {
        const Eigen::Vector3d r(u(rng), u(rng), u(rng));
        const Eigen::Vector3d v(u(rng) * 1e-4, u(rng) * 1e-4, u(rng) * 1e-4);
        const auto earth = earth_at(std::abs(u(rng)) * 10.0);
        const auto s0 = rotating_state(r, v, earth.epoch.seconds);
        const auto inertial = em_rotating_to_moon_inertial(s0, earth);
        const auto back = moon_inertial_to_em_rotating(inertial, earth);
        CHECK((back.position_km - r).norm() <= 1e-10 * std::max(1.0, r.norm()));
        CHECK((back.velocity_kmps - v).norm() <= 1e-10 * std::max(1.0, v.norm()));
    }
}

TEST_CASE("zero rotating velocity maps to omega x r") {
    const auto earth = earth_at(1234.0);
    const Eigen::Vector3d r(2000.0, -3000.0, 1500.0);
    const auto out = em_rotating_to_moon_inertial(rotating_state(r, Eigen::Vector3d::Zero(), 1234.0), earth);
    const Eigen::Vector3d omega =
        earth.position_km.cross(earth.velocity_kmps) / earth.position_km.squaredNorm();
    const Eigen::Vector3d expected = omega.cross(out.position_km);
    CHECK((out.velocity_kmps - expected).norm() < 1e-12);
}

TEST_CASE("frame mismatch and degenerate basis are rejected") {
    StateVector wrong = rotating_state(Eigen::Vector3d::UnitX(), Eigen::Vector3d::Zero());
    wrong.frame = FrameId::MoonInertial;
    CHECK_THROWS(em_rotating_to_moon_inertial(wrong, earth_at(0.0)));

    StateVector degenerate_earth;
    degenerate_earth.frame = FrameId::MoonInertial;
    CHECK_THROWS(em_rotating_to_moon_inertial(
        rotating_state(Eigen::Vector3d::UnitX(), Eigen::Vector3d::Zero()),
        degenerate_earth));
}

TEST_CASE("translate_frame_center") {
    StateVector a;
    a.position_km = {1.0, 2.0, 3.0};
    a.velocity_kmps = {0.1, 0.2, 0.3};
    a.frame = FrameId::EarthInertial;

    SUBCASE("recenter about itself") {
        const auto out = translate_frame_center(a, a, FrameId::EarthInertial);
        CHECK(out.position_km.norm() == doctest::Approx(0.0));
        CHECK(out.velocity_kmps.norm() == doctest::Approx(0.0));
    }
    SUBCASE("recenter then invert is identity") {
        StateVector c;
        c.position_km = {-5.0, 7.0, 2.0};
        c.velocity_kmps = {0.01, -0.02, 0.03};
        c.frame = FrameId::EarthInertial;
        auto shifted = translate_frame_center(a, c, FrameId::MoonInertial);
        StateVector minus_c;
        minus_c.position_km = -c.position_km;
        minus_c.velocity_kmps = -c.velocity_kmps;
        minus_c.frame = FrameId::MoonInertial;
        const auto back = translate_frame_center(shifted, minus_c, FrameId::EarthInertial);
        CHECK((back.position_km - a.position_km).norm() < 1e-12);
        CHECK((back.velocity_kmps - a.velocity_kmps).norm() < 1e-12);
    }
    SUBCASE("hand-checked vector arithmetic") {
        StateVector moon;
        moon.position_km = {384400.0, 0.0, 0.0};
        moon.velocity_kmps = {0.0, 1.0, 0.0};
        moon.frame = FrameId::EarthInertial;
        const auto out = translate_frame_center(a, moon, FrameId::MoonInertial);
        CHECK(out.position_km.x() == doctest::Approx(1.0 - 384400.0));
        CHECK(out.velocity_kmps.y() == doctest::Approx(0.2 - 1.0));
    }
    SUBCASE("epoch mismatch rejected") {
        StateVector late = a;
        late.epoch = Epoch(5.0);
        CHECK_THROWS(translate_frame_center(a, late, FrameId::MoonInertial));
    }
}
