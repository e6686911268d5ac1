#ifndef LNSS_FRAMES_HPP
#define LNSS_FRAMES_HPP

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <string>

namespace lnss {

/**
 * Scenario time: seconds past the scenario start epoch.
 * The calendar anchor (a UTC date-time string) is stored once per scenario;
 * all dynamics run on this single uniform time scale.
 */
struct Epoch {
    double seconds = 0.0;

    Epoch() = default;
    explicit Epoch(double s) : seconds(s) {}

    Epoch operator+(double dt) const { return Epoch(seconds + dt); }
    double operator-(const Epoch& other) const { return seconds - other.seconds; }
    auto operator<=>(const Epoch&) const = default;
};

enum class FrameId {
    MoonInertial,    // Moon-centered, inertially fixed axes
    MoonEmRotating,  // Moon-centered, x toward the Earth-Moon line, rotating
    EarthInertial,   // Earth-centered, same axis orientation as MoonInertial
};

std::string frame_name(FrameId id);

/** Position/velocity of a body in a named frame at an epoch. */
struct StateVector {
    Eigen::Vector3d position_km = Eigen::Vector3d::Zero();
    Eigen::Vector3d velocity_kmps = Eigen::Vector3d::Zero();
    FrameId frame = FrameId::MoonInertial;
    Epoch epoch;
};

/**
 * Express a Moon-centered Earth-Moon-rotating state in the Moon-inertial
 * frame. The rotating basis is built from the instantaneous Earth state:
 * x along the Earth->Moon direction, z along the Earth-Moon orbital angular
 * momentum. Includes the omega x r transport term in velocity.
 *
 * earth_state_moon_inertial must be the Earth's Moon-centered inertial state
 * at the same epoch. Throws std::invalid_argument on frame mismatch or a
 * degenerate (zero-length) Earth-Moon vector.
 */
StateVector em_rotating_to_moon_inertial(const StateVector& state,
                                         const StateVector& earth_state_moon_inertial);

/** Inverse of em_rotating_to_moon_inertial. */
StateVector moon_inertial_to_em_rotating(const StateVector& state,
                                         const StateVector& earth_state_moon_inertial);

/**
 * Re-express a state about a new center by vector subtraction. Both states
 * must share the same inertial axis orientation and epoch; the output keeps
 * the axes and takes the frame tag new_frame.
 */
StateVector translate_frame_center(const StateVector& state,
                                   const StateVector& new_center_state,
                                   FrameId new_frame);

}  // namespace lnss

#endif
