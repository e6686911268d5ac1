#ifndef LNSS_PROPAGATOR_HPP
#define LNSS_PROPAGATOR_HPP

#include "lnss/constants.hpp"
#include "lnss/ephemeris.hpp"
#include "lnss/frames.hpp"

#include <string>
#include <vector>

namespace lnss {

struct ForceModelConfig {
    bool include_earth_third_body = true;
    bool include_sun_third_body = true;
    double mu_moon = MU_MOON;
    double mu_earth = MU_EARTH;
    double mu_sun = MU_SUN;
    double step_s = 30.0;  // RK4 integrator step
};

/** StateVector series on a uniform epoch grid. */
struct Trajectory {
    std::vector<StateVector> samples;
    double sample_step_s = 60.0;

    std::size_t size() const { return samples.size(); }
    const StateVector& at(std::size_t i) const { return samples.at(i); }
};

/**
 * Point-mass acceleration on a Moon-centered state: Moon two-body plus
 * optional Earth/Sun third-body terms (direct + indirect). km/s^2.
 */
Eigen::Vector3d gravitational_accel(const Eigen::Vector3d& r_km, const Epoch& epoch,
                                    const ForceModelConfig& cfg,
                                    const EphemerisModel& eph);

/**
 * Fixed-step RK4 propagation of a MOON_INERTIAL state, sampled every
 * sample_step_s seconds (the integrator step must divide the sample step).
 * Throws on divergence (non-finite state).
 */
Trajectory propagate_numeric(const StateVector& s0, double duration_s,
                             const ForceModelConfig& cfg, const EphemerisModel& eph,
                             double sample_step_s = 60.0);

/** CSV export: epoch_s, x_km, ..., vz_kmps, frame. */
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

}  // namespace lnss

#endif
