#include "lnss/propagator.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace lnss {

namespace {

Eigen::Vector3d third_body_accel(const Eigen::Vector3d& r, const Eigen::Vector3d& r_body,
                                 double mu) {
    // Direct + indirect terms for a perturbing body at r_body (Moon-centered).
    const Eigen::Vector3d d = r_body - r;
    const double dn = d.norm();
    const double bn = r_body.norm();
    return mu * (d / (dn * dn * dn) - r_body / (bn * bn * bn));
}

}  // namespace

Eigen::Vector3d gravitational_accel(const Eigen::Vector3d& r_km, const Epoch& epoch,
                                    const ForceModelConfig& cfg,
                                    const EphemerisModel& eph) {
    const double rn = r_km.norm();
    Eigen::Vector3d a = -cfg.mu_moon * r_km / (rn * rn * rn);
    if (cfg.include_earth_third_body || cfg.include_sun_third_body) {
        const auto [earth, sun] = earth_sun_states(eph, epoch);
        if (cfg.include_earth_third_body) {
            a += third_body_accel(r_km, earth.position_km, cfg.mu_earth);
        }
        if (cfg.include_sun_third_body) {
            a += third_body_accel(r_km, sun.position_km, cfg.mu_sun);
        }
    }
    return a;
}

Trajectory propagate_numeric(const StateVector& s0, double duration_s,
                             const ForceModelConfig& cfg, const EphemerisModel& eph,
                             double sample_step_s) {
    if (s0.frame != FrameId::MoonInertial) {
        throw std::invalid_argument("propagate_numeric: state must be MOON_INERTIAL");
    }
    if (!(cfg.step_s > 0.0) || !(sample_step_s > 0.0)) {
        throw std::invalid_argument("propagate_numeric: steps must be positive");
    }
    const double ratio = sample_step_s / cfg.step_s;
    const long steps_per_sample = std::lround(ratio);
    if (steps_per_sample < 1 ||
        std::abs(ratio - static_cast<double>(steps_per_sample)) > 1e-9) {
        throw std::invalid_argument(
            "propagate_numeric: integrator step must divide sample interval");
    }

    using Vec6 = Eigen::Matrix<double, 6, 1>;
    auto deriv = [&](const Vec6& y, double t) -> Vec6 {
        Vec6 dy;
        dy.head<3>() = y.tail<3>();
        dy.tail<3>() = gravitational_accel(y.head<3>(), Epoch(t), cfg, eph);
        return dy;
    };

    Vec6 y;
    y << s0.position_km, s0.velocity_kmps;
    double t = s0.epoch.seconds;
    const double h = cfg.step_s;

    Trajectory traj;
    traj.sample_step_s = sample_step_s;
    const long n_samples = std::lround(duration_s / sample_step_s);
    traj.samples.reserve(static_cast<std::size_t>(n_samples) + 1);

    auto push = [&](const Vec6& yy, double tt) {
        StateVector s;
        s.position_km = yy.head<3>();
        s.velocity_kmps = yy.tail<3>();
        s.frame = FrameId::MoonInertial;
        s.epoch = Epoch(tt);
        traj.samples.push_back(s);
    };
    push(y, t);

    for (long k = 0; k < n_samples; ++k) {
        for (long j = 0; j < steps_per_sample; ++j) {
            const Vec6 k1 = deriv(y, t);
            const Vec6 k2 = deriv(y + 0.5 * h * k1, t + 0.5 * h);
            const Vec6 k3 = deriv(y + 0.5 * h * k2, t + 0.5 * h);
            const Vec6 k4 = deriv(y + h * k3, t + h);
            y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t += h;
        }
        if (!y.allFinite()) {
            throw std::runtime_error("propagate_numeric: trajectory diverged");
        }
        push(y, t);
    }
    return traj;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "epoch_s,x_km,y_km,z_km,vx_kmps,vy_kmps,vz_kmps,frame\n";
    out.precision(15);
    for (const auto& s : traj.samples) {
        out << s.epoch.seconds << ',' << s.position_km.x() << ',' << s.position_km.y()
            << ',' << s.position_km.z() << ',' << s.velocity_kmps.x() << ','
            << s.velocity_kmps.y() << ',' << s.velocity_kmps.z() << ','
            << frame_name(s.frame) << '\n';
    }
}

}  // namespace lnss
