#include "lnss/orbit.hpp"

#include <doctest.h>

#include <cmath>

using namespace lnss;

namespace {

KeplerianElements llo() {
    KeplerianElements el;
    el.semi_major_axis_km = 1837.4;
    el.eccentricity = 0.0;
    el.inclination_deg = 28.5;
    return el;
}

KeplerianElements elfo() {
    KeplerianElements el;
    el.semi_major_axis_km = 1737.4 + 9750.5;
    el.eccentricity = 0.7;
    el.inclination_deg = 63.5;
    el.arg_perigee_deg = 90.0;
    return el;
}

}  // namespace

TEST_CASE("circular orbit radius equals semi-major axis") {
    const auto s = kepler_to_cartesian(llo());
    CHECK(s.position_km.norm() == doctest::Approx(1837.4).epsilon(1e-12));
}

TEST_CASE("Kepler equation with e=0 gives E = M") {
    for (double m = 0.0; m < 6.2; m += 0.37) {
        CHECK(solve_kepler(m, 0.0) == doctest::Approx(m).epsilon(1e-14));
    }
}

TEST_CASE("ELFO satisfies the vis-viva identity") {
    auto el = elfo();
    for (double m_deg : {0.0, 45.0, 120.0, 250.0}) {
        el.mean_anomaly_deg = m_deg;
        const auto s = kepler_to_cartesian(el);
        const double energy_from_elements = -el.mu / (2.0 * el.semi_major_axis_km);
        const double energy_from_state =
            0.5 * s.velocity_kmps.squaredNorm() - el.mu / s.position_km.norm();
        CHECK(energy_from_state ==
              doctest::Approx(energy_from_elements).epsilon(1e-10));
    }
}

TEST_CASE("propagation over one period recovers the initial state") {
    const auto el = elfo();
    const auto s0 = kepler_to_cartesian(el);
    const auto s1 = propagate_kepler(el, el.period_s());
    CHECK((s1.position_km - s0.position_km).norm() <=
          1e-9 * s0.position_km.norm());
    CHECK((s1.velocity_kmps - s0.velocity_kmps).norm() <=
          1e-9 * s0.velocity_kmps.norm());
}

TEST_CASE("dt=0 propagation equals direct conversion") {
    const auto el = elfo();
    const auto a = kepler_to_cartesian(el);
    const auto b = propagate_kepler(el, 0.0);
    CHECK((a.position_km - b.position_km).norm() < 1e-12);
}

TEST_CASE("circular orbit quarter period rotates the position 90 degrees") {
    const auto el = llo();
    const auto s0 = kepler_to_cartesian(el);
    const auto sq = propagate_kepler(el, el.period_s() / 4.0);
    const double cosang =
        s0.position_km.normalized().dot(sq.position_km.normalized());
    CHECK(cosang == doctest::Approx(0.0).epsilon(1e-9));
    // In-plane: progress should be along the initial velocity direction.
    CHECK(s0.velocity_kmps.normalized().dot(sq.position_km.normalized()) ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("invalid elements are rejected") {
    KeplerianElements el = llo();
    el.semi_major_axis_km = -1.0;
    CHECK_THROWS(kepler_to_cartesian(el));
    el = llo();
    el.eccentricity = 1.2;
    CHECK_THROWS(kepler_to_cartesian(el));
}

TEST_CASE("angles are normalized to [0,360)") {
    KeplerianElements el = llo();
    el.mean_anomaly_deg = -90.0;
    validate_elements(el);
    CHECK(el.mean_anomaly_deg == doctest::Approx(270.0));
}
