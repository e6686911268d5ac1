#include "lnss/orbit.hpp"

#include <Eigen/Geometry>
#include <cmath>
#include <stdexcept>

namespace lnss {

namespace {
double wrap360(double deg) {
    double w = std::fmod(deg, 360.0);
    if (w < 0.0) w += 360.0;
    return w;
}
}  // namespace

double KeplerianElements::mean_motion_radps() const {
    const double a = semi_major_axis_km;
    return std::sqrt(mu / (a * a * a));
}

double KeplerianElements::period_s() const { return 2.0 * PI / mean_motion_radps(); }

void validate_elements(KeplerianElements& el) {
    if (!(el.semi_major_axis_km > 0.0)) {
        throw std::invalid_argument("semi-major axis must be positive");
    }
    if (!(el.eccentricity >= 0.0 && el.eccentricity < 1.0)) {
        throw std::invalid_argument("eccentricity must lie in [0, 1)");
    }
    if (!(el.mu > 0.0)) {
        throw std::invalid_argument("gravitational parameter must be positive");
    }
    el.inclination_deg = wrap360(el.inclination_deg);
    el.arg_perigee_deg = wrap360(el.arg_perigee_deg);
    el.raan_deg = wrap360(el.raan_deg);
    el.mean_anomaly_deg = wrap360(el.mean_anomaly_deg);
}

double solve_kepler(double mean_anomaly_rad, double eccentricity) {
    const double e = eccentricity;
    double E = (e < 0.8) ? mean_anomaly_rad : PI;
    for (int it = 0; it < 50; ++it) {
        const double f = E - e * std::sin(E) - mean_anomaly_rad;
        const double fp = 1.0 - e * std::cos(E);
        const double dE = f / fp;
        E -= dE;
        if (std::abs(dE) < 1e-12) return E;
    }
    throw std::runtime_error("Kepler solver failed to converge");
}

StateVector kepler_to_cartesian(const KeplerianElements& el, FrameId frame,
                                const Epoch& epoch) {
    KeplerianElements v = el;
    validate_elements(v);

    const double a = v.semi_major_axis_km;
    const double e = v.eccentricity;
    const double M = v.mean_anomaly_deg * DEG2RAD;
    const double E = solve_kepler(M, e);

    const double cosE = std::cos(E);
    const double sinE = std::sin(E);
    const double r = a * (1.0 - e * cosE);
    const double b_over_a = std::sqrt(1.0 - e * e);

    // Perifocal position/velocity.
    const Eigen::Vector3d r_pf(a * (cosE - e), a * b_over_a * sinE, 0.0);
    const double Edot = v.mean_motion_radps() / (1.0 - e * cosE);
    const Eigen::Vector3d v_pf(-a * sinE * Edot, a * b_over_a * cosE * Edot, 0.0);
    (void)r;

    const double inc = v.inclination_deg * DEG2RAD;
    const double argp = v.arg_perigee_deg * DEG2RAD;
    const double raan = v.raan_deg * DEG2RAD;
    const Eigen::Matrix3d R =
        (Eigen::AngleAxisd(raan, Eigen::Vector3d::UnitZ()) *
         Eigen::AngleAxisd(inc, Eigen::Vector3d::UnitX()) *
         Eigen::AngleAxisd(argp, Eigen::Vector3d::UnitZ()))
            .toRotationMatrix();

    StateVector out;
    out.position_km = R * r_pf;
    out.velocity_kmps = R * v_pf;
    out.frame = frame;
    out.epoch = epoch;
    return out;
}

StateVector propagate_kepler(const KeplerianElements& el, double dt_s, FrameId frame,
                             const Epoch& epoch0) {
    KeplerianElements adv = el;
    adv.mean_anomaly_deg = el.mean_anomaly_deg + el.mean_motion_radps() * dt_s * RAD2DEG;
    return kepler_to_cartesian(adv, frame, epoch0 + dt_s);
}

}  // namespace lnss
