#pragma once

#include <array>

#include "fftseso/geometry.hpp"
#include "fftseso/plant.hpp"

namespace fftseso {

/// Divergence latch threshold for both comparison observers.
inline constexpr double kBaselineDivergence = 1e9;

/// ZYX Euler angles (roll, pitch, yaw) of a rotation matrix.
Vec3 euler_zyx(const Mat3& r);

/// W(Theta): body rates -> Euler-angle rates. Contains tan(pitch) and
/// 1/cos(pitch); near |pitch| = 90 deg the 1/cos factor is clamped at 1e3
/// and *near_singular is set.
Mat3 euler_rate_matrix(const Vec3& euler, bool* near_singular);

/// Inverse map, Euler-angle rates -> body rates (bounded everywhere).
Mat3 euler_rate_matrix_inv(const Vec3& euler);

/// One scalar channel of a third-order linear ESO with bandwidth w:
/// gains (3w, 3w^2, w^3).
struct LesoChannel {
    double z1 = 0.0;
    double z2 = 0.0;
    double z3 = 0.0;
};

struct LesoGains {
    double omega_translational = 10.0; // rad/s
    double omega_attitude = 10.0;      // rad/s
};

/**
 * @brief Linear ESO baseline: three position channels plus three ZYX
 * Euler-angle channels extracted from the measured attitude.
 *
 * The attitude channels inherit the representation singularity at 90 deg
 * pitch; proximity latches euler_singularity before any state can become
 * non-finite, and any state magnitude above 1e9 latches diverged and
 * freezes the observer.
 */
struct LesoState {
    std::array<LesoChannel, 3> translational;
    std::array<LesoChannel, 3> attitude;
    Vec3 euler = Vec3::Zero(); // unwrapped measurement memory
    bool has_euler = false;
    bool euler_singularity = false;
    bool diverged = false;

    /// Disturbance force estimate m z3 (N).
    Vec3 force_estimate(const RigidBodyParams& p) const;
    /// Disturbance torque estimate J W^-1(Theta) z3 (N*m).
    Vec3 torque_estimate(const RigidBodyParams& p) const;
};

/// Start at the truth: channels carry the measured pose/rates and the exact
/// initial disturbance terms.
LesoState leso_init(const Measurements& meas, const Vec3& phi_d, const Vec3& tau_d,
                    const RigidBodyParams& p);

/// One forward-Euler update of all six channels.
LesoState leso_step(const LesoState& s, const Measurements& meas, double thrust_f,
                    const Vec3& control_tau, const LesoGains& gains, const RigidBodyParams& p,
                    double h);

/// Correction gains of the fixed-time-style disturbance observer
/// reconstruction: d_hat' = l1 |s|^(1/2) sgn(s) + l2 |s|^(3/2) sgn(s) + l3 s.
struct FxtsdoGains {
    double l1 = 5.0;
    double l2 = 2.0;
    double l3 = 30.0;
};

/**
 * @brief Fixed-time disturbance-observer baseline whose innovation needs
 * accelerations, obtained here by backward-differencing measured
 * velocities. The 1/h difference amplifies measurement noise by
 * construction; that structural weakness is the point of the comparison.
 */
struct FxtsdoState {
    Vec3 force_estimate = Vec3::Zero();  // N
    Vec3 torque_estimate = Vec3::Zero(); // N*m
    Vec3 prev_v = Vec3::Zero();
    Vec3 prev_omega = Vec3::Zero();
    bool has_prev = false;
    bool diverged = false;
};

FxtsdoState fxtsdo_init(const Measurements& meas, const Vec3& phi_d, const Vec3& tau_d);

/// scale ((v_now - v_prev)/h - model_accel): the acceleration-from-
/// differences innovation. On white measurement noise of variance s^2 the
/// difference quotient has variance 2 s^2 / h^2.
Vec3 fd_disturbance(const Vec3& v_now, const Vec3& v_prev, const Vec3& model_accel, double h,
                    const Mat3& scale);

/// model_accel_* are the known parts of the accelerations:
/// g e3 - (f/m) R e3 for translation and J^-1((J W)x W + tau) for rotation.
FxtsdoState fxtsdo_step(const FxtsdoState& s, const Vec3& velocity_meas, const Vec3& omega_meas,
                        const Vec3& model_accel_trans, const Vec3& model_accel_rot,
                        const RigidBodyParams& p, const FxtsdoGains& g, double h);

} // namespace fftseso
