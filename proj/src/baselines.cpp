#include "fftseso/baselines.hpp"

#include <cmath>

namespace fftseso {

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
constexpr double kCosPitchFloor = 1e-3;

double unwrap_toward(double angle, double previous) {
    while (angle - previous > kTwoPi / 2.0) angle -= kTwoPi;
    while (angle - previous < -kTwoPi / 2.0) angle += kTwoPi;
    return angle;
}

bool channel_diverged(const LesoChannel& c) {
    return std::abs(c.z1) > kBaselineDivergence || std::abs(c.z2) > kBaselineDivergence ||
           std::abs(c.z3) > kBaselineDivergence || !std::isfinite(c.z1) ||
           !std::isfinite(c.z2) || !std::isfinite(c.z3);
}

LesoChannel channel_step(const LesoChannel& c, double y, double u0, double omega, double h) {
    const double e = c.z1 - y;
    LesoChannel out;
    out.z1 = c.z1 + h * (c.z2 - 3.0 * omega * e);
    out.z2 = c.z2 + h * (c.z3 - 3.0 * omega * omega * e + u0);
    out.z3 = c.z3 + h * (-omega * omega * omega * e);
    return out;
}

// sign(x) |x|^a, elementwise.
Vec3 signed_pow(const Vec3& x, double a) {
    Vec3 out;
    for (int i = 0; i < 3; ++i) {
        out(i) = std::copysign(std::pow(std::abs(x(i)), a), x(i));
    }
    return out;
}

} // namespace

Vec3 euler_zyx(const Mat3& r) {
    const double pitch = -std::asin(std::clamp(r(2, 0), -1.0, 1.0));
    const double roll = std::atan2(r(2, 1), r(2, 2));
    const double yaw = std::atan2(r(1, 0), r(0, 0));
    return Vec3(roll, pitch, yaw);
}

Mat3 euler_rate_matrix(const Vec3& euler, bool* near_singular) {
    const double sr = std::sin(euler.x());
    const double cr = std::cos(euler.x());
    const double cp = std::cos(euler.y());
    const double tp = std::tan(euler.y());
    double inv_cp;
    if (std::abs(cp) < kCosPitchFloor) {
        if (near_singular != nullptr) {
            *near_singular = true;
        }
        inv_cp = std::copysign(1.0 / kCosPitchFloor, cp == 0.0 ? 1.0 : cp);
    } else {
        inv_cp = 1.0 / cp;
    }
    const double tp_clamped = std::abs(cp) < kCosPitchFloor
                                  ? std::sin(euler.y()) * inv_cp
                                  : tp;
    Mat3 w;
    w << 1.0, sr * tp_clamped, cr * tp_clamped,
         0.0, cr, -sr,
         0.0, sr * inv_cp, cr * inv_cp;
    return w;
}

Mat3 euler_rate_matrix_inv(const Vec3& euler) {
    const double sr = std::sin(euler.x());
    const double cr = std::cos(euler.x());
    const double sp = std::sin(euler.y());
    const double cp = std::cos(euler.y());
    Mat3 e;
    e << 1.0, 0.0, -sp,
         0.0, cr, sr * cp,
         0.0, -sr, cr * cp;
    return e;
}

Vec3 LesoState::force_estimate(const RigidBodyParams& p) const {
    return p.m * Vec3(translational[0].z3, translational[1].z3, translational[2].z3);
}

Vec3 LesoState::torque_estimate(const RigidBodyParams& p) const {
    const Vec3 z3(attitude[0].z3, attitude[1].z3, attitude[2].z3);
    return p.J * (euler_rate_matrix_inv(euler) * z3);
}

LesoState leso_init(const Measurements& meas, const Vec3& phi_d, const Vec3& tau_d,
                    const RigidBodyParams& p) {
    LesoState s;
    for (int i = 0; i < 3; ++i) {
        s.translational[i].z1 = meas.b(i);
        s.translational[i].z2 = meas.v(i);
        s.translational[i].z3 = phi_d(i) / p.m;
    }
    s.euler = euler_zyx(meas.R.matrix());
    s.has_euler = true;
    bool near = false;
    const Mat3 w = euler_rate_matrix(s.euler, &near);
    s.euler_singularity = near;
    const Vec3 euler_rates = w * meas.Omega;
    const Vec3 sigma = w * (p.J.inverse() * tau_d);
    for (int i = 0; i < 3; ++i) {
        s.attitude[i].z1 = s.euler(i);
        s.attitude[i].z2 = euler_rates(i);
        s.attitude[i].z3 = sigma(i);
    }
    return s;
}

LesoState leso_step(const LesoState& s, const Measurements& meas, double thrust_f,
                    const Vec3& control_tau, const LesoGains& gains, const RigidBodyParams& p,
                    double h) {
    if (s.diverged) {
        return s;
    }
    LesoState out = s;

    // Translational channels: y = position, known input is the modeled
    // specific force.
    const Vec3 u0_trans =
        p.grav * Vec3::UnitZ() - (thrust_f / p.m) * (meas.R.matrix().col(2));
    for (int i = 0; i < 3; ++i) {
        out.translational[i] =
            channel_step(s.translational[i], meas.b(i), u0_trans(i), gains.omega_translational, h);
    }

    // Attitude channels: y = unwrapped ZYX Euler angles. The singularity
    // flag is raised (and the kinematic map clamped) before anything can
    // overflow, so the failure mode is graceful divergence, never NaN.
    Vec3 euler_now = euler_zyx(meas.R.matrix());
    for (int i = 0; i < 3; ++i) {
        euler_now(i) = unwrap_toward(euler_now(i), s.euler(i));
    }
    out.euler = euler_now;
    bool near = false;
    const Mat3 w = euler_rate_matrix(euler_now, &near);
    if (near) {
        out.euler_singularity = true;
    }
    const Vec3 gyro = (p.J * meas.Omega).cross(meas.Omega);
    const Vec3 u0_att = w * (p.J.inverse() * (gyro + control_tau));
    for (int i = 0; i < 3; ++i) {
        out.attitude[i] =
            channel_step(s.attitude[i], euler_now(i), u0_att(i), gains.omega_attitude, h);
    }

    for (int i = 0; i < 3; ++i) {
        if (channel_diverged(out.translational[i]) || channel_diverged(out.attitude[i])) {
            out.diverged = true;
            return out;
        }
    }
    return out;
}

FxtsdoState fxtsdo_init(const Measurements& meas, const Vec3& phi_d, const Vec3& tau_d) {
    FxtsdoState s;
    s.force_estimate = phi_d;
    s.torque_estimate = tau_d;
    s.prev_v = meas.v;
    s.prev_omega = meas.Omega;
    s.has_prev = true;
    return s;
}

Vec3 fd_disturbance(const Vec3& v_now, const Vec3& v_prev, const Vec3& model_accel, double h,
                    const Mat3& scale) {
    return scale * ((v_now - v_prev) / h - model_accel);
}

FxtsdoState fxtsdo_step(const FxtsdoState& s, const Vec3& velocity_meas, const Vec3& omega_meas,
                        const Vec3& model_accel_trans, const Vec3& model_accel_rot,
                        const RigidBodyParams& p, const FxtsdoGains& g, double h) {
    if (!(h > 0.0)) {
        throw DomainError("fxtsdo_step: step size must be positive");
    }
    if (s.diverged) {
        return s;
    }
    FxtsdoState out = s;
    out.prev_v = velocity_meas;
    out.prev_omega = omega_meas;
    out.has_prev = true;
    if (!s.has_prev) {
        return out;
    }

    const Vec3 raw_force = fd_disturbance(velocity_meas, s.prev_v, model_accel_trans, h,
                                          Mat3(p.m * Mat3::Identity()));
    const Vec3 raw_torque = fd_disturbance(omega_meas, s.prev_omega, model_accel_rot, h, p.J);

    const Vec3 sf = raw_force - s.force_estimate;
    const Vec3 st = raw_torque - s.torque_estimate;
    out.force_estimate =
        s.force_estimate + h * (g.l1 * signed_pow(sf, 0.5) + g.l2 * signed_pow(sf, 1.5) +
                                g.l3 * sf);
    out.torque_estimate =
        s.torque_estimate + h * (g.l1 * signed_pow(st, 0.5) + g.l2 * signed_pow(st, 1.5) +
                                 g.l3 * st);

    if (!out.force_estimate.allFinite() || !out.torque_estimate.allFinite() ||
        out.force_estimate.cwiseAbs().maxCoeff() > kBaselineDivergence ||
        out.torque_estimate.cwiseAbs().maxCoeff() > kBaselineDivergence) {
        out.diverged = true;
    }
    return out;
}

} // namespace fftseso
