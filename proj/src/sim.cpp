#include "fftseso/sim.hpp"

#include <cmath>

#include "fftseso/rng.hpp"

namespace fftseso {

VecN heun_step(const std::function<VecN(double, const VecN&)>& rhs, const VecN& x, double t,
               double h) {
    if (!(h > 0.0)) {
        throw DomainError("heun_step: step size must be positive");
    }
    const VecN k1 = rhs(t, x);
    const VecN k2 = rhs(t + h, x + h * k1);
    VecN out = x + 0.5 * h * (k1 + k2);
    if (!out.allFinite()) {
        throw NonFinite("heun_step: state became non-finite");
    }
    return out;
}

SimConfig::SimConfig()
    : gains_t(3.0, 2.0, 6.0, 0.8, HolderExponent(1.2)),
      gains_a(3.0, 2.0, 4.0, 0.6, HolderExponent(1.2), MorseWeights(3.0, 2.0, 1.0)),
      params(4.34, Vec3(0.0820, 0.0845, 0.1377).asDiagonal()),
      disturbance({{0.0, Vec3(5.0, 10.0, 0.0)}, {10.0, Vec3(9.0, 15.0, 5.0)}},
                  {{0.0, Vec3(-0.1, 0.1, 0.1)}, {20.0, Vec3(0.0, 0.0, 0.2)}}) {
    initial_state.pose.rotation = Rotation::identity();
    initial_state.pose.position = Vec3(0.01, 0.0, 0.0);
    initial_state.v = Vec3(5.0 * 3.14159265358979323846, 0.0, 0.0);
    initial_state.Omega = Vec3::Zero();
}

SimConfig SimConfig::defaults() {
    return SimConfig();
}

namespace {

// Flat layout of the coupled truth + observer continuous states.
struct CoupledRaw {
    Vec3 b, v;
    Mat3 R;
    Vec3 Omega;
    Vec3 bh, vh, ph;
    Mat3 Rh;
    Vec3 Oh, th;
};

CoupledRaw operator+(const CoupledRaw& a, const CoupledRaw& b) {
    return {a.b + b.b, a.v + b.v, a.R + b.R, a.Omega + b.Omega, a.bh + b.bh,
            a.vh + b.vh, a.ph + b.ph, a.Rh + b.Rh, a.Oh + b.Oh, a.th + b.th};
}

CoupledRaw operator*(double s, const CoupledRaw& a) {
    return {s * a.b, s * a.v, s * a.R, s * a.Omega, s * a.bh,
            s * a.vh, s * a.ph, s * a.Rh, s * a.Oh, s * a.th};
}

bool all_finite(const CoupledRaw& a) {
    return a.b.allFinite() && a.v.allFinite() && a.R.allFinite() && a.Omega.allFinite() &&
           a.bh.allFinite() && a.vh.allFinite() && a.ph.allFinite() && a.Rh.allFinite() &&
           a.Oh.allFinite() && a.th.allFinite();
}

// Per-step frozen noise offsets (zero-order-held over both Heun stages).
struct NoiseSample {
    Vec3 mu_b = Vec3::Zero();
    Vec3 mu_v = Vec3::Zero();
    Mat3 exp_mu_r = Mat3::Identity();
    Vec3 mu_omega = Vec3::Zero();
};

} // namespace

SimRecord run_scenario(const SimConfig& cfg) {
    if (!(cfg.h > 0.0) || !(cfg.duration >= cfg.h)) {
        throw DomainError("run_scenario: need h > 0 and duration >= h");
    }
    validate_gains_t(cfg.gains_t);
    validate_gains_a(cfg.gains_a);

    const auto n_steps = static_cast<std::size_t>(std::floor(cfg.duration / cfg.h));
    SimRecord rec;
    rec.scenario = cfg.scenario;
    rec.noise_on = cfg.noise_on;
    rec.baselines_on = cfg.baselines_on;
    rec.h = cfg.h;
    rec.seed = cfg.seed;
    rec.steps.reserve(n_steps + 1);

    const RigidBodyParams& p = cfg.params;
    const NoiseSpec noise = cfg.noise_on ? cfg.noise : NoiseSpec{};
    Rng rng(cfg.seed);

    CoupledRaw x;
    x.b = cfg.initial_state.pose.position;
    x.v = cfg.initial_state.v;
    x.R = cfg.initial_state.pose.rotation.matrix();
    x.Omega = cfg.initial_state.Omega;
    // Observers start identical to the pose, velocities and disturbance.
    x.bh = x.b;
    x.vh = x.v;
    x.ph = cfg.disturbance.force(0.0);
    x.Rh = x.R;
    x.Oh = x.Omega;
    x.th = cfg.disturbance.torque(0.0);

    TrackingController controller(cfg.control);

    const Measurements meas0{x.b, x.v, Rotation(x.R), x.Omega};
    LesoState leso = leso_init(meas0, cfg.disturbance.force(0.0), cfg.disturbance.torque(0.0), p);
    FxtsdoState fxtsdo =
        fxtsdo_init(meas0, cfg.disturbance.force(0.0), cfg.disturbance.torque(0.0));

    bool frozen = false; // set after a non-finite step; states stop advancing

    auto snapshot = [&](double t) {
        SimStep row;
        row.t = t;
        row.truth.pose.position = x.b;
        row.truth.pose.rotation = Rotation(x.R);
        row.truth.v = x.v;
        row.truth.Omega = x.Omega;
        row.teso = {x.bh, x.vh, x.ph};
        row.reso = {Rotation(x.Rh), x.Oh, x.th};
        const auto [phi_d, tau_d] = cfg.disturbance(t);
        row.errors = compute_eso_errors(x.b, x.v, row.truth.pose.rotation, x.Omega, phi_d, tau_d,
                                        row.teso, row.reso);
        row.v_t = lyapunov_monitor_t(row.errors, cfg.gains_t, p.m);
        row.v_a = lyapunov_monitor_a(row.errors, cfg.gains_a, p.J);
        if (cfg.baselines_on) {
            row.leso_e_phi = phi_d - leso.force_estimate(p);
            row.leso_e_tau = tau_d - leso.torque_estimate(p);
            row.fxtsdo_e_phi = phi_d - fxtsdo.force_estimate;
            row.fxtsdo_e_tau = tau_d - fxtsdo.torque_estimate;
            row.flags.leso_singularity = leso.euler_singularity;
            row.flags.leso_diverged = leso.diverged;
            row.flags.fxtsdo_diverged = fxtsdo.diverged;
        }
        row.flags.nonfinite = frozen;
        rec.flags.leso_singularity |= row.flags.leso_singularity;
        rec.flags.leso_diverged |= row.flags.leso_diverged;
        rec.flags.fxtsdo_diverged |= row.flags.fxtsdo_diverged;
        rec.flags.nonfinite |= frozen;
        rec.max_orthogonality_residual =
            std::max({rec.max_orthogonality_residual,
                      (x.R.transpose() * x.R - Mat3::Identity()).norm(),
                      (x.Rh.transpose() * x.Rh - Mat3::Identity()).norm()});
        rec.steps.push_back(std::move(row));
    };

    for (std::size_t k = 0; k < n_steps; ++k) {
        const double t = static_cast<double>(k) * cfg.h;

        // Noise is sampled once per step and held over both stages; draw
        // order (b, v, R, Omega) is part of the determinism contract.
        NoiseSample ns;
        if (cfg.noise_on) {
            ns.mu_b = rng.gaussian3(std::sqrt(noise.psd_b / cfg.h));
            ns.mu_v = rng.gaussian3(std::sqrt(noise.psd_v / cfg.h));
            ns.exp_mu_r = exp_so3(rng.gaussian3(std::sqrt(noise.psd_R / cfg.h))).matrix();
            ns.mu_omega = rng.gaussian3(std::sqrt(noise.psd_Omega / cfg.h));
        }

        const Measurements meas{x.b + ns.mu_b, x.v + ns.mu_v, Rotation(Mat3(x.R * ns.exp_mu_r)),
                                x.Omega + ns.mu_omega};

        snapshot(t);

        const Vec3 fb_phi = cfg.reject_on ? x.ph : Vec3::Zero();
        const Vec3 fb_tau = cfg.reject_on ? x.th : Vec3::Zero();
        const ControlCommand cmd =
            controller.compute(meas, reference(cfg.scenario, t), fb_phi, fb_tau, p, cfg.h);

        if (cfg.baselines_on) {
            leso = leso_step(leso, meas, cmd.f, cmd.tau, cfg.leso, p, cfg.h);
            const Vec3 model_trans =
                p.grav * Vec3::UnitZ() - (cmd.f / p.m) * meas.R.matrix().col(2);
            const Vec3 model_rot =
                p.J.inverse() * ((p.J * meas.Omega).cross(meas.Omega) + cmd.tau);
            fxtsdo = fxtsdo_step(fxtsdo, meas.v, meas.Omega, model_trans, model_rot, p,
                                 cfg.fxtsdo, cfg.h);
        }

        if (frozen) {
            continue; // keep emitting rows; states hold their last value
        }

        // Coupled truth + observer dynamics; measurements follow the stage
        // truth while the additive noise stays frozen within the step.
        auto rhs = [&](const CoupledRaw& y, double time) {
            CoupledRaw dy;
            const RigidBodyRates rr =
                plant_rhs(y.R, y.v, y.Omega, cmd.f, cmd.tau, cfg.disturbance, time, p);
            dy.b = rr.b;
            dy.v = rr.v;
            dy.R = rr.R;
            dy.Omega = rr.Omega;
            const Vec3 mb = y.b + ns.mu_b;
            const Vec3 mv = y.v + ns.mu_v;
            const Mat3 mr = y.R * ns.exp_mu_r;
            const Vec3 mo = y.Omega + ns.mu_omega;
            const TranslationalEsoRates tr = translational_eso_rhs(
                {y.bh, y.vh, y.ph}, mb, mv, mr, cmd.f, cfg.gains_t, p.m, p.grav);
            dy.bh = tr.b_hat;
            dy.vh = tr.v_hat;
            dy.ph = tr.phi_hat;
            const RotationalEsoRates ra =
                rotational_eso_rhs(y.Rh, y.Oh, y.th, mr, mo, cmd.tau, cfg.gains_a, p.J);
            dy.Rh = ra.R_hat;
            dy.Oh = ra.Omega_hat;
            dy.th = ra.tau_hat;
            return dy;
        };

        const CoupledRaw k1 = rhs(x, t);
        const CoupledRaw k2 = rhs(x + cfg.h * k1, t + cfg.h);
        CoupledRaw next = x + (0.5 * cfg.h) * (k1 + k2);

        if (!all_finite(next)) {
            frozen = true; // flagged diverged, not aborted
            continue;
        }
        next.R = project_to_so3(next.R);
        next.Rh = project_to_so3(next.Rh);
        x = next;
    }
    snapshot(static_cast<double>(n_steps) * cfg.h);
    return rec;
}

} // namespace fftseso
