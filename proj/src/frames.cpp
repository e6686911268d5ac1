#include "lnss/frames.hpp"

#include <cmath>
#include <stdexcept>

namespace lnss {

std::string frame_name(FrameId id) {
    switch (id) {
        case FrameId::MoonInertial: return "MOON_INERTIAL";
        case FrameId::MoonEmRotating: return "MOON_EM_ROTATING";
        case FrameId::EarthInertial: return "EARTH_INERTIAL";
    }
    return "UNKNOWN";
}

namespace {

struct RotatingBasis {
    Eigen::Matrix3d R;           // columns: rotating x,y,z expressed in inertial axes
    Eigen::Vector3d omega_radps; // frame angular velocity, inertial axes
};

RotatingBasis make_basis(const StateVector& earth) {
    const Eigen::Vector3d re = earth.position_km;
    const double d = re.norm();
    if (d < 1.0) {
        throw std::invalid_argument("degenerate Earth-Moon vector");
    }
    // x axis along Earth->Moon, i.e. opposite the Moon-centered Earth position.
    const Eigen::Vector3d xhat = -re / d;
    const Eigen::Vector3d h = re.cross(earth.velocity_kmps);
    if (h.norm() < 1e-12) {
        throw std::invalid_argument("degenerate Earth-Moon angular momentum");
    }
    const Eigen::Vector3d zhat = h.normalized();
    const Eigen::Vector3d yhat = zhat.cross(xhat);
    RotatingBasis b;
    b.R.col(0) = xhat;
    b.R.col(1) = yhat;
    b.R.col(2) = zhat;
    b.omega_radps = h / (d * d);
    return b;
}

}  // namespace

StateVector em_rotating_to_moon_inertial(const StateVector& state,
                                         const StateVector& earth_state_moon_inertial) {
    if (state.frame != FrameId::MoonEmRotating) {
        throw std::invalid_argument("em_rotating_to_moon_inertial: state not in MOON_EM_ROTATING");
    }
    if (earth_state_moon_inertial.frame != FrameId::MoonInertial) {
        throw std::invalid_argument("em_rotating_to_moon_inertial: Earth state not in MOON_INERTIAL");
    }
    const RotatingBasis b = make_basis(earth_state_moon_inertial);
    StateVector out;
    out.position_km = b.R * state.position_km;
    out.velocity_kmps = b.R * state.velocity_kmps + b.omega_radps.cross(out.position_km);
    out.frame = FrameId::MoonInertial;
    out.epoch = state.epoch;
    return out;
}

StateVector moon_inertial_to_em_rotating(const StateVector& state,
                                         const StateVector& earth_state_moon_inertial) {
    if (state.frame != FrameId::MoonInertial) {
        throw std::invalid_argument("moon_inertial_to_em_rotating: state not in MOON_INERTIAL");
    }
    const RotatingBasis b = make_basis(earth_state_moon_inertial);
    StateVector out;
    out.position_km = b.R.transpose() * state.position_km;
    out.velocity_kmps =
        b.R.transpose() * (state.velocity_kmps - b.omega_radps.cross(state.position_km));
    out.frame = FrameId::MoonEmRotating;
    out.epoch = state.epoch;
    return out;
}

StateVector translate_frame_center(const StateVector& state,
                                   const StateVector& new_center_state,
                                   FrameId new_frame) {
    if (std::abs(state.epoch - new_center_state.epoch) > 1e-9) {
        throw std::invalid_argument("translate_frame_center: epoch mismatch");
    }
    StateVector out;
    out.position_km = state.position_km - new_center_state.position_km;
    out.velocity_kmps = state.velocity_kmps - new_center_state.velocity_kmps;
    out.frame = new_frame;
    out.epoch = state.epoch;
    return out;
}

}  // namespace lnss
