#include "lnss/cr3bp.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace lnss {

namespace {

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

Vec6 pack(const Cr3bpState& s) {
    Vec6 y;
    y << s.position, s.velocity;
    return y;
}

Cr3bpState unpack(const Vec6& y, double mu) {
    Cr3bpState s;
    s.position = y.head<3>();
    s.velocity = y.tail<3>();
    s.mass_ratio = mu;
    return s;
}

Vec6 eom(const Vec6& y, double mu) {
    const double x = y(0), yy = y(1), z = y(2);
    const Eigen::Vector3d r1(x + mu, yy, z);
    const Eigen::Vector3d r2(x - 1.0 + mu, yy, z);
    const double d1 = r1.norm(), d2 = r2.norm();
    const double c1 = (1.0 - mu) / (d1 * d1 * d1);
    const double c2 = mu / (d2 * d2 * d2);

    Vec6 dy;
    dy.head<3>() = y.tail<3>();
    dy(3) = 2.0 * y(4) + x - c1 * r1.x() - c2 * r2.x();
    dy(4) = -2.0 * y(3) + yy - c1 * r1.y() - c2 * r2.y();
    dy(5) = -c1 * r1.z() - c2 * r2.z();
    return dy;
}

/** Jacobian of the equations of motion (pseudo-potential Hessian + Coriolis). */
Mat6 eom_jacobian(const Vec6& y, double mu) {
    const double x = y(0), yy = y(1), z = y(2);
    const Eigen::Vector3d r1(x + mu, yy, z);
    const Eigen::Vector3d r2(x - 1.0 + mu, yy, z);
    const double d1 = r1.norm(), d2 = r2.norm();
    const double d13 = d1 * d1 * d1, d23 = d2 * d2 * d2;
    const double d15 = d13 * d1 * d1, d25 = d23 * d2 * d2;
    const double m1 = 1.0 - mu, m2 = mu;

    Eigen::Matrix3d U = Eigen::Matrix3d::Zero();
    U(0, 0) = 1.0 - m1 / d13 - m2 / d23 + 3.0 * m1 * r1.x() * r1.x() / d15 +
              3.0 * m2 * r2.x() * r2.x() / d25;
    U(1, 1) = 1.0 - m1 / d13 - m2 / d23 + 3.0 * m1 * yy * yy / d15 +
              3.0 * m2 * yy * yy / d25;
    U(2, 2) = -m1 / d13 - m2 / d23 + 3.0 * m1 * z * z / d15 + 3.0 * m2 * z * z / d25;
    U(0, 1) = 3.0 * m1 * r1.x() * yy / d15 + 3.0 * m2 * r2.x() * yy / d25;
    U(0, 2) = 3.0 * m1 * r1.x() * z / d15 + 3.0 * m2 * r2.x() * z / d25;
    U(1, 2) = 3.0 * m1 * yy * z / d15 + 3.0 * m2 * yy * z / d25;
    U(1, 0) = U(0, 1);
    U(2, 0) = U(0, 2);
    U(2, 1) = U(1, 2);

    Mat6 A = Mat6::Zero();
    A.block<3, 3>(0, 3) = Eigen::Matrix3d::Identity();
    A.block<3, 3>(3, 0) = U;
    A(3, 4) = 2.0;
    A(4, 3) = -2.0;
    return A;
}

Vec6 rk4_step(const Vec6& y, double h, double mu) {
    const Vec6 k1 = eom(y, mu);
    const Vec6 k2 = eom(y + 0.5 * h * k1, mu);
    const Vec6 k3 = eom(y + 0.5 * h * k2, mu);
    const Vec6 k4 = eom(y + h * k3, mu);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct StmNode {
    Vec6 y;
    Mat6 phi;
};

StmNode rk4_step_stm(const StmNode& n, double h, double mu) {
    auto deriv = [mu](const StmNode& s) {
        StmNode d;
        d.y = eom(s.y, mu);
        d.phi = eom_jacobian(s.y, mu) * s.phi;
        return d;
    };
    auto axpy = [](const StmNode& a, double c, const StmNode& b) {
        StmNode r;
        r.y = a.y + c * b.y;
        r.phi = a.phi + c * b.phi;
        return r;
    };
    const StmNode k1 = deriv(n);
    const StmNode k2 = deriv(axpy(n, 0.5 * h, k1));
    const StmNode k3 = deriv(axpy(n, 0.5 * h, k2));
    const StmNode k4 = deriv(axpy(n, h, k3));
    StmNode out;
    out.y = n.y + (h / 6.0) * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
    out.phi = n.phi + (h / 6.0) * (k1.phi + 2.0 * k2.phi + 2.0 * k3.phi + k4.phi);
    return out;
}

void check_mass_ratio(double mu) {
    if (!(mu > 0.0 && mu < 1.0)) {
        throw std::invalid_argument("CR3BP mass ratio must lie in (0, 1)");
    }
}

}  // namespace

Eigen::Vector3d cr3bp_accel(const Cr3bpState& s) {
    return eom(pack(s), s.mass_ratio).tail<3>();
}

double jacobi_constant(const Cr3bpState& s) {
    const double mu = s.mass_ratio;
    const double x = s.position.x(), y = s.position.y(), z = s.position.z();
    const double d1 = Eigen::Vector3d(x + mu, y, z).norm();
    const double d2 = Eigen::Vector3d(x - 1.0 + mu, y, z).norm();
    return x * x + y * y + 2.0 * (1.0 - mu) / d1 + 2.0 * mu / d2 -
           s.velocity.squaredNorm();
}

double l2_point(double mass_ratio) {
    check_mass_ratio(mass_ratio);
    const double mu = mass_ratio;
    // Gradient of the pseudo-potential along x, beyond the smaller primary.
    auto ux = [mu](double x) {
        return x - (1.0 - mu) / ((x + mu) * (x + mu)) - mu / ((x - 1.0 + mu) * (x - 1.0 + mu));
    };
    double lo = 1.0 - mu + 1e-6, hi = 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (ux(mid) < 0.0) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<Cr3bpSample> propagate_cr3bp(const Cr3bpState& s0, double duration,
                                         double step) {
    check_mass_ratio(s0.mass_ratio);
    if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
    const double mu = s0.mass_ratio;
    const long n = std::lround(duration / step);

    std::vector<Cr3bpSample> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    Vec6 y = pack(s0);
    double t = 0.0;
    out.push_back({t, unpack(y, mu)});
    for (long k = 0; k < n; ++k) {
        // Substep near the smaller primary, where the dynamics stiffen.
        const double d2 = (y.head<3>() - Eigen::Vector3d(1.0 - mu, 0, 0)).norm();
        const int sub = d2 < 0.1 ? 20 : 1;
        const double h = step / sub;
        for (int j = 0; j < sub; ++j) y = rk4_step(y, h, mu);
        t += step;
        if (!y.allFinite()) throw std::runtime_error("CR3BP propagation diverged");
        out.push_back({t, unpack(y, mu)});
    }
    return out;
}

Cr3bpStm propagate_with_stm(const Cr3bpState& s0, double duration, double step) {
    check_mass_ratio(s0.mass_ratio);
    const double mu = s0.mass_ratio;
    StmNode n{pack(s0), Mat6::Identity()};
    const long full = static_cast<long>(duration / step);
    double t = 0.0;
    for (long k = 0; k < full; ++k) {
        const double d2 = (n.y.head<3>() - Eigen::Vector3d(1.0 - mu, 0, 0)).norm();
        const int sub = d2 < 0.1 ? 10 : 1;
        for (int j = 0; j < sub; ++j) n = rk4_step_stm(n, step / sub, mu);
        t += step;
    }
    const double rem = duration - t;
    if (rem > 1e-15) {
        n = rk4_step_stm(n, rem, mu);
        t += rem;
    }
    if (!n.y.allFinite()) throw std::runtime_error("CR3BP STM propagation diverged");
    return {unpack(n.y, mu), n.phi, t};
}

namespace {

/**
 * Integrate state+STM from an x-z plane state until the next x-z plane
 * crossing (y sign change), then Newton-refine the crossing time.
 */
Cr3bpStm integrate_to_crossing(const Cr3bpState& s0, double t_guess, double step) {
    const double mu = s0.mass_ratio;
    StmNode n{pack(s0), Mat6::Identity()};
    double t = 0.0;
    const double t_min = 0.2 * t_guess;
    const double t_max = 4.0 * t_guess;

    StmNode prev = n;
    double t_prev = t;
    bool found = false;
    while (t < t_max) {
        prev = n;
        t_prev = t;
        const double d2 = (n.y.head<3>() - Eigen::Vector3d(1.0 - mu, 0, 0)).norm();
        const int sub = d2 < 0.1 ? 10 : 1;
        for (int j = 0; j < sub; ++j) n = rk4_step_stm(n, step / sub, mu);
        t += step;
        if (t > t_min && prev.y(1) * n.y(1) <= 0.0 && prev.y(1) != n.y(1)) {
            found = true;
            break;
        }
    }
    if (!found) throw std::runtime_error("no x-z plane crossing found");

    // Newton on the remaining step from the pre-crossing node.
    double dt = step;
    StmNode c = n;
    for (int it = 0; it < 30; ++it) {
        c = prev;
        const int sub = 4;
        for (int j = 0; j < sub; ++j) c = rk4_step_stm(c, dt / sub, mu);
        const double yv = c.y(1);
        const double vy = c.y(4);
        if (std::abs(yv) < 1e-13) break;
        dt -= yv / vy;
    }
    return {unpack(c.y, mu), c.phi, t_prev + dt};
}

}  // namespace

PeriodicOrbit refine_periodic_nrho(const Cr3bpState& guess, double half_period_guess) {
    check_mass_ratio(guess.mass_ratio);
    Cr3bpState s = guess;
    // Enforce the symmetric start: on the x-z plane, velocity perpendicular.
    s.position.y() = 0.0;
    s.velocity.x() = 0.0;
    s.velocity.z() = 0.0;

    const double step = 1e-4;
    double t_half = half_period_guess;
    for (int it = 0; it < 25; ++it) {
        const Cr3bpStm cross = integrate_to_crossing(s, t_half, step);
        const double vx = cross.state.velocity.x();
        const double vz = cross.state.velocity.z();
        if (std::abs(vx) < 1e-11 && std::abs(vz) < 1e-11) {
            return {s, 2.0 * cross.time};
        }
        const Vec6 f = eom(pack(cross.state), s.mass_ratio);
        const double vy = cross.state.velocity.y();
        if (std::abs(vy) < 1e-12) {
            throw std::runtime_error("degenerate crossing (vy ~ 0)");
        }
        const auto& phi = cross.stm;
        // Unknowns (x0, vy0), holding z0 fixed; this pair stays well
        // conditioned for near-rectilinear geometry, where sensitivity to z0
        // nearly parallels the crossing-time direction. The crossing time is
        // eliminated through the y = 0 condition.
        Eigen::Matrix2d M;
        M(0, 0) = phi(3, 0) - f(3) * phi(1, 0) / vy;
        M(0, 1) = phi(3, 4) - f(3) * phi(1, 4) / vy;
        M(1, 0) = phi(5, 0) - f(5) * phi(1, 0) / vy;
        M(1, 1) = phi(5, 4) - f(5) * phi(1, 4) / vy;
        const double det = M.determinant();
        if (!std::isfinite(det) || std::abs(det) < 1e-14) {
            throw std::runtime_error("singular differential-correction matrix");
        }
        Eigen::Vector2d delta = M.inverse() * Eigen::Vector2d(-vx, -vz);
        // Trust-region cap: far from the solution the full Newton step can
        // overshoot the orbit family entirely.
        const double cap = 2e-3;
        const double mag = delta.cwiseAbs().maxCoeff();
        if (mag > cap) delta *= cap / mag;
        s.position.x() += delta(0);
        s.velocity.y() += delta(1);
        t_half = cross.time;
    }
    throw std::runtime_error("differential correction did not converge in 25 iterations");
}

}  // namespace lnss
