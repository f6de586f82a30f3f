#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fftseso/geometry.hpp"
#include "fftseso/rng.hpp"

namespace fftseso {

/// Mass, inertia and gravity of the simulated vehicle.
struct RigidBodyParams {
    RigidBodyParams(double mass, const Mat3& inertia, double gravity = 9.81);

    double m;    // kg
    Mat3 J;      // kg m^2, symmetric positive definite
    double grav; // m/s^2
};

/// Ground-truth state: pose, inertial velocity, body angular velocity.
struct RigidBodyState {
    Pose pose;
    Vec3 v = Vec3::Zero();     // m/s, inertial frame
    Vec3 Omega = Vec3::Zero(); // rad/s, body frame

    /// Body-frame translational velocity nu = R' v.
    Vec3 nu() const { return pose.rotation.matrix().transpose() * v; }
};

struct RigidBodyRates {
    Vec3 b;
    Vec3 v;
    Mat3 R;
    Vec3 Omega;
};

/// Piecewise-constant disturbance force/torque profile. Switch times must be
/// strictly increasing with the first segment starting at t = 0; each value
/// holds from its switch time onward.
class DisturbanceProfile {
  public:
    using Segment = std::pair<double, Vec3>;

    DisturbanceProfile(std::vector<Segment> force_segments, std::vector<Segment> torque_segments);

    Vec3 force(double t) const { return eval(force_, t); }
    Vec3 torque(double t) const { return eval(torque_, t); }
    std::pair<Vec3, Vec3> operator()(double t) const { return {force(t), torque(t)}; }

    const std::vector<Segment>& force_segments() const { return force_; }
    const std::vector<Segment>& torque_segments() const { return torque_; }

  private:
    static Vec3 eval(const std::vector<Segment>& segments, double t);

    std::vector<Segment> force_;
    std::vector<Segment> torque_;
};

std::pair<Vec3, Vec3> eval_disturbance(const DisturbanceProfile& d, double t);

/// Rigid-body vector field with thrust f along -R e3, gravity +m g e3 and
/// additive disturbances. Raw-matrix overload for mid-stage evaluation.
RigidBodyRates plant_rhs(const Mat3& r, const Vec3& v, const Vec3& omega, double f,
                         const Vec3& tau, const DisturbanceProfile& d, double t,
                         const RigidBodyParams& p);

inline RigidBodyRates plant_rhs(const RigidBodyState& s, double f, const Vec3& tau,
                                const DisturbanceProfile& d, double t,
                                const RigidBodyParams& p) {
    return plant_rhs(s.pose.rotation.matrix(), s.v, s.Omega, f, tau, d, t, p);
}

/// The four reference trajectories flown in the comparison study.
enum class ScenarioKind { Hovering, SlowSwing, FastSwing, HighPitch };

const char* scenario_name(ScenarioKind k);
std::optional<ScenarioKind> scenario_from_name(const std::string& name);

struct ReferencePoint {
    Vec3 position;     // m
    Vec3 velocity;     // m/s
    Vec3 acceleration; // m/s^2
};

/// Closed-form reference with analytic derivatives.
ReferencePoint reference(ScenarioKind kind, double t);

/// Measurement noise levels as power spectral densities; discretized at step
/// h with per-sample variance PSD/h.
struct NoiseSpec {
    double psd_b = 0.0;
    double psd_v = 0.0;
    double psd_R = 0.0;
    double psd_Omega = 0.0;
};

struct Measurements {
    Vec3 b;
    Vec3 v;
    Rotation R;
    Vec3 Omega;
};

/// b + mu_b, v + mu_v, R exp(mu_R), Omega + mu_Omega with each component
/// drawn i.i.d. N(0, PSD/h). Draw order is fixed (b, v, R, Omega).
Measurements sense(const RigidBodyState& s, const NoiseSpec& noise, double h, Rng& rng);

/// Gains of the geometric tracking controller used to fly the scenarios.
/// This controller is support machinery, not part of the observer design;
/// defaults are tuned once so all four scenarios fly stably.
struct ControlGains {
    double kx = 69.44;     // N/m      (16 m)
    double kv = 34.72;     // N s/m    (8 m)
    double kR = 8.81;      // N m
    double kOmega = 1.6;   // N m s
    double rate_ff_limit = 60.0; // rad/s clamp on the desired-rate feedforward
    Vec3 heading = Vec3::UnitX();
    std::optional<double> f_max;   // saturation disabled by default
    std::optional<double> tau_max;
};

struct ControlCommand {
    double f = 0.0; // N
    Vec3 tau = Vec3::Zero();
};

/**
 * @brief Position PD -> desired thrust vector -> desired attitude -> attitude
 * PD on SO(3), with optional disturbance-estimate feedforward.
 *
 * Keeps the previous desired attitude to finite-difference the desired body
 * rate. fb_phi/fb_tau are subtracted from the force/torque requests, which
 * realizes disturbance rejection when they carry observer estimates.
 */
class TrackingController {
  public:
    explicit TrackingController(ControlGains gains) : gains_(gains) {}

    ControlCommand compute(const Measurements& meas, const ReferencePoint& ref,
                           const Vec3& fb_phi, const Vec3& fb_tau, const RigidBodyParams& p,
                           double dt);

    void reset() { prev_rd_.reset(); }

  private:
    ControlGains gains_;
    std::optional<Mat3> prev_rd_;
};

} // namespace fftseso
