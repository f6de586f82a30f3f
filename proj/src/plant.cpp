#include "fftseso/plant.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fftseso {

namespace {
constexpr double kPi = 3.14159265358979323846;
} // namespace

RigidBodyParams::RigidBodyParams(double mass, const Mat3& inertia, double gravity)
    : m(mass), J(inertia), grav(gravity) {
    if (!(mass > 0.0)) {
        throw DomainError("RigidBodyParams: mass must be positive");
    }
    if ((inertia - inertia.transpose()).norm() > 1e-12 * (1.0 + inertia.norm())) {
        throw NotSpd("RigidBodyParams: inertia must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Mat3> eig(inertia);
    if (!(eig.eigenvalues().minCoeff() > 0.0)) {
        throw NotSpd("RigidBodyParams: inertia must be positive definite");
    }
}

DisturbanceProfile::DisturbanceProfile(std::vector<Segment> force_segments,
                                       std::vector<Segment> torque_segments)
    : force_(std::move(force_segments)), torque_(std::move(torque_segments)) {
    for (const auto* segments : {&force_, &torque_}) {
        if (segments->empty() || segments->front().first != 0.0) {
            throw DomainError("DisturbanceProfile: first segment must start at t = 0");
        }
        for (std::size_t i = 1; i < segments->size(); ++i) {
            if (!((*segments)[i].first > (*segments)[i - 1].first)) {
                throw DomainError("DisturbanceProfile: switch times must strictly increase");
            }
        }
    }
}

Vec3 DisturbanceProfile::eval(const std::vector<Segment>& segments, double t) {
    Vec3 value = segments.front().second;
    for (const auto& [time, v] : segments) {
        if (t >= time) {
            value = v;
        } else {
            break;
        }
    }
    return value;
}

std::pair<Vec3, Vec3> eval_disturbance(const DisturbanceProfile& d, double t) {
    return d(t);
}

RigidBodyRates plant_rhs(const Mat3& r, const Vec3& v, const Vec3& omega, double f,
                         const Vec3& tau, const DisturbanceProfile& d, double t,
                         const RigidBodyParams& p) {
    const auto [phi_d, tau_d] = d(t);
    RigidBodyRates rates;
    rates.b = v;
    rates.v = p.grav * Vec3::UnitZ() - (f / p.m) * (r * Vec3::UnitZ()) + phi_d / p.m;
    rates.R = r * hat(omega);
    rates.Omega = p.J.inverse() * ((p.J * omega).cross(omega) + tau + tau_d);
    return rates;
}

const char* scenario_name(ScenarioKind k) {
    switch (k) {
    case ScenarioKind::Hovering: return "hover";
    case ScenarioKind::SlowSwing: return "slow_swing";
    case ScenarioKind::FastSwing: return "fast_swing";
    case ScenarioKind::HighPitch: return "high_pitch";
    }
    return "unknown";
}

std::optional<ScenarioKind> scenario_from_name(const std::string& name) {
    for (const ScenarioKind k : {ScenarioKind::Hovering, ScenarioKind::SlowSwing,
                                 ScenarioKind::FastSwing, ScenarioKind::HighPitch}) {
        if (name == scenario_name(k)) {
            return k;
        }
    }
    return std::nullopt;
}

ReferencePoint reference(ScenarioKind kind, double t) {
    ReferencePoint ref;
    switch (kind) {
    case ScenarioKind::Hovering:
        ref.position = Vec3(0.0, 0.0, -3.0);
        ref.velocity = Vec3::Zero();
        ref.acceleration = Vec3::Zero();
        break;
    case ScenarioKind::SlowSwing: {
        const double w = 0.1 * kPi;
        ref.position = Vec3(10.0 * std::sin(w * t), 0.0, -3.0);
        ref.velocity = Vec3(10.0 * w * std::cos(w * t), 0.0, 0.0);
        ref.acceleration = Vec3(-10.0 * w * w * std::sin(w * t), 0.0, 0.0);
        break;
    }
    case ScenarioKind::FastSwing: {
        const double w = 0.5 * kPi;
        ref.position = Vec3(5.0 * std::sin(w * t), 0.0, -3.0);
        ref.velocity = Vec3(5.0 * w * std::cos(w * t), 0.0, 0.0);
        ref.acceleration = Vec3(-5.0 * w * w * std::sin(w * t), 0.0, 0.0);
        break;
    }
    case ScenarioKind::HighPitch: {
        const double w = 0.5 * kPi;
        ref.position = Vec3(10.0 * std::sin(w * t), 10.0 * std::cos(w * t), -3.0);
        ref.velocity = Vec3(10.0 * w * std::cos(w * t), -10.0 * w * std::sin(w * t), 0.0);
        ref.acceleration =
            Vec3(-10.0 * w * w * std::sin(w * t), -10.0 * w * w * std::cos(w * t), 0.0);
        break;
    }
    }
    return ref;
}

Measurements sense(const RigidBodyState& s, const NoiseSpec& noise, double h, Rng& rng) {
    if (!(h > 0.0)) {
        throw DomainError("sense: step size must be positive");
    }
    Measurements m;
    m.b = s.pose.position + rng.gaussian3(std::sqrt(noise.psd_b / h));
    m.v = s.v + rng.gaussian3(std::sqrt(noise.psd_v / h));
    const Vec3 mu_r = rng.gaussian3(std::sqrt(noise.psd_R / h));
    m.R = s.pose.rotation * exp_so3(mu_r);
    m.Omega = s.Omega + rng.gaussian3(std::sqrt(noise.psd_Omega / h));
    return m;
}

ControlCommand TrackingController::compute(const Measurements& meas, const ReferencePoint& ref,
                                           const Vec3& fb_phi, const Vec3& fb_tau,
                                           const RigidBodyParams& p, double dt) {
    const Vec3 e_x = meas.b - ref.position;
    const Vec3 e_v = meas.v - ref.velocity;

    // Force request; thrust must realize -f R e3 = f_req.
    Vec3 f_req = p.m * ref.acceleration - gains_.kx * e_x - gains_.kv * e_v -
                 p.m * p.grav * Vec3::UnitZ() - fb_phi;
    if (f_req.norm() < 1e-6) {
        f_req = -1e-6 * Vec3::UnitZ();
    }

    const Mat3 r = meas.R.matrix();
    double f = -f_req.dot(r.col(2));

    // Desired attitude from the thrust direction and the heading hint.
    const Vec3 b3d = -f_req.normalized();
    Vec3 b2d = b3d.cross(gains_.heading);
    if (b2d.norm() < 1e-6) {
        b2d = b3d.cross(Vec3::UnitY());
    }
    b2d.normalize();
    const Vec3 b1d = b2d.cross(b3d);
    Mat3 rd;
    rd.col(0) = b1d;
    rd.col(1) = b2d;
    rd.col(2) = b3d;

    // Desired body rate by finite-differencing the desired attitude.
    Vec3 omega_d = Vec3::Zero();
    if (prev_rd_ && dt > 0.0) {
        omega_d = log_so3(Rotation(prev_rd_->transpose() * rd)) / dt;
        if (omega_d.norm() > gains_.rate_ff_limit) {
            omega_d *= gains_.rate_ff_limit / omega_d.norm();
        }
    }
    prev_rd_ = rd;

    const Vec3 e_r = 0.5 * vee(rd.transpose() * r - r.transpose() * rd);
    const Vec3 e_omega = meas.Omega - r.transpose() * rd * omega_d;
    Vec3 tau = -gains_.kR * e_r - gains_.kOmega * e_omega +
               meas.Omega.cross(p.J * meas.Omega) - fb_tau;

    if (gains_.f_max) {
        f = std::clamp(f, 0.0, *gains_.f_max);
    }
    if (gains_.tau_max && tau.norm() > *gains_.tau_max) {
        tau *= *gains_.tau_max / tau.norm();
    }
    return {f, tau};
}

} // namespace fftseso
