#ifndef LNSS_CR3BP_HPP
#define LNSS_CR3BP_HPP

#include "lnss/constants.hpp"

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <vector>

namespace lnss {

/**
 * Nondimensional CR3BP state in the barycentric rotating frame. Primaries sit
 * on the x-axis: the larger at (-mu, 0, 0), the smaller at (1-mu, 0, 0);
 * distance, angular rate and total mass are unity.
 */
struct Cr3bpState {
    Eigen::Vector3d position = Eigen::Vector3d::Zero();
    Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
    double mass_ratio = EARTH_MOON_MASS_RATIO;
};

struct Cr3bpSample {
    double time = 0.0;
    Cr3bpState state;
};

/** Rotating-frame acceleration of the CR3BP equations of motion. */
Eigen::Vector3d cr3bp_accel(const Cr3bpState& s);

/** Jacobi constant C = 2U - v^2. */
double jacobi_constant(const Cr3bpState& s);

/** x-coordinate of the collinear L2 point (beyond the smaller primary). */
double l2_point(double mass_ratio);

/** Fixed-step RK4 integration; samples every `step` in nondimensional time. */
std::vector<Cr3bpSample> propagate_cr3bp(const Cr3bpState& s0, double duration,
                                         double step = 1e-3);

/** State plus 6x6 state transition matrix, for differential correction. */
struct Cr3bpStm {
    Cr3bpState state;
    Eigen::Matrix<double, 6, 6> stm;
    double time = 0.0;
};

/** Integrate state and variational equations to the given time. */
Cr3bpStm propagate_with_stm(const Cr3bpState& s0, double duration, double step = 1e-4);

struct PeriodicOrbit {
    Cr3bpState initial_state;
    double period = 0.0;
};

/**
 * Single-shooting differential correction of a symmetric halo orbit. The
 * guess must start on the x-z plane with a (near) perpendicular crossing;
 * x0 and vy0 are Newton-iterated using the STM until the next x-z plane
 * crossing has |vx| and |vz| < 1e-11. Throws std::runtime_error if 25
 * iterations do not converge or the update matrix is singular.
 */
PeriodicOrbit refine_periodic_nrho(const Cr3bpState& guess, double half_period_guess);

}  // namespace lnss

#endif
