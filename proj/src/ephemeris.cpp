#include "lnss/ephemeris.hpp"

namespace lnss {

std::pair<StateVector, StateVector> earth_sun_states(const EphemerisModel& eph,
                                                     const Epoch& epoch) {
    const double t = epoch.seconds;

    const double th = eph.em_phase0_rad + eph.em_rate_radps * t;
    StateVector earth;
    earth.position_km =
        eph.em_distance_km * Eigen::Vector3d(std::cos(th), std::sin(th), 0.0);
    earth.velocity_kmps = eph.em_distance_km * eph.em_rate_radps *
                          Eigen::Vector3d(-std::sin(th), std::cos(th), 0.0);
    earth.frame = FrameId::MoonInertial;
    earth.epoch = epoch;

    // Earth-Moon barycenter in Moon-centered coordinates, then the Sun on its
    // circular heliocentric track about that barycenter.
    const double bary_frac = 1.0 - EARTH_MOON_MASS_RATIO;  // m_E/(m_E+m_M)
    const double ph = eph.sun_phase0_rad + eph.sun_rate_radps * t;
    StateVector sun;
    sun.position_km =
        bary_frac * earth.position_km +
        eph.sun_distance_km * Eigen::Vector3d(std::cos(ph), std::sin(ph), 0.0);
    sun.velocity_kmps =
        bary_frac * earth.velocity_kmps +
        eph.sun_distance_km * eph.sun_rate_radps *
            Eigen::Vector3d(-std::sin(ph), std::cos(ph), 0.0);
    sun.frame = FrameId::MoonInertial;
    sun.epoch = epoch;

    return {earth, sun};
}

}  // namespace lnss
