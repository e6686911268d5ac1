#ifndef LNSS_ORBIT_HPP
#define LNSS_ORBIT_HPP

#include "lnss/constants.hpp"
#include "lnss/frames.hpp"

namespace lnss {

/** Classical orbital elements; angles in degrees, normalized to [0, 360). */
struct KeplerianElements {
    double semi_major_axis_km = 0.0;
    double eccentricity = 0.0;
    double inclination_deg = 0.0;
    double arg_perigee_deg = 0.0;
    double raan_deg = 0.0;
    double mean_anomaly_deg = 0.0;
    double mu = MU_MOON;  // km^3/s^2

    double mean_motion_radps() const;
    double period_s() const;
};

/** Validate ranges (a > 0, 0 <= e < 1) and normalize angles in place. */
void validate_elements(KeplerianElements& el);

/**
 * Solve Kepler's equation M = E - e sin E for the eccentric anomaly by
 * Newton iteration to 1e-12 rad. Throws std::runtime_error after 50
 * iterations without convergence.
 */
double solve_kepler(double mean_anomaly_rad, double eccentricity);

/** Elements -> Cartesian state in the given frame at the given epoch. */
StateVector kepler_to_cartesian(const KeplerianElements& el,
                                FrameId frame = FrameId::MoonInertial,
                                const Epoch& epoch = Epoch{});

/** Advance the mean anomaly by n*dt and convert. */
StateVector propagate_kepler(const KeplerianElements& el, double dt_s,
                             FrameId frame = FrameId::MoonInertial,
                             const Epoch& epoch0 = Epoch{});

}  // namespace lnss

#endif
