#ifndef LNSS_EPHEMERIS_HPP
#define LNSS_EPHEMERIS_HPP

#include "lnss/constants.hpp"
#include "lnss/frames.hpp"

#include <cmath>
#include <utility>

namespace lnss {

/**
 * Analytic circular ephemeris: the Earth moves on a circle of fixed radius
 * about the Moon at the Earth-Moon mean motion; the Sun follows the circular
 * heliocentric motion of the Earth-Moon barycenter. Stand-in for planetary
 * ephemerides, sized for visibility statistics rather than precision orbits.
 */
struct EphemerisModel {
    double em_distance_km = EARTH_MOON_DISTANCE_KM;
    // Mean motion of the Earth-Moon system (sidereal month ~27.3 d).
    double em_rate_radps = std::sqrt((MU_EARTH + MU_MOON) /
                                     (EARTH_MOON_DISTANCE_KM * EARTH_MOON_DISTANCE_KM *
                                      EARTH_MOON_DISTANCE_KM));
    double em_phase0_rad = 0.0;   // Earth direction at epoch 0 (+x by default)
    double sun_distance_km = AU_KM;
    double sun_rate_radps = 2.0 * PI / (365.25 * 86400.0);
    double sun_phase0_rad = 0.0;
};

/** Earth and Sun states in MOON_INERTIAL at the given epoch. */
std::pair<StateVector, StateVector> earth_sun_states(const EphemerisModel& eph,
                                                     const Epoch& epoch);

}  // namespace lnss

#endif
