#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fftseso/baselines.hpp"
#include "fftseso/observer.hpp"
#include "fftseso/plant.hpp"

namespace fftseso {

/// One fixed-size Heun (ODE2) step: predictor-corrector with global order 2.
/// Throws NonFinite when the result contains NaN or infinity.
VecN heun_step(const std::function<VecN(double, const VecN&)>& rhs, const VecN& x, double t,
               double h);

/// Everything a single run needs. h > 0, duration >= h, and both gain
/// certificates must validate before the run starts.
struct SimConfig {
    ScenarioKind scenario = ScenarioKind::Hovering;
    double h = 1e-3;        // s
    double duration = 30.0; // s
    bool noise_on = false;
    NoiseSpec noise{3e-8, 3e-7, 3e-8, 3e-7}; // PSDs applied when noise_on
    std::uint64_t seed = 1;
    bool baselines_on = true;
    bool reject_on = false; // feed disturbance estimates to the controller

    TranslationalEsoGains gains_t;
    RotationalEsoGains gains_a;
    ControlGains control;
    LesoGains leso;
    FxtsdoGains fxtsdo;
    RigidBodyParams params;
    DisturbanceProfile disturbance;
    RigidBodyState initial_state;

    /// Simulation defaults: inertia/mass, gains, initial states, step
    /// disturbances and noise levels of the comparison study.
    static SimConfig defaults();

  private:
    SimConfig();
};

struct SimFlags {
    bool leso_singularity = false;
    bool leso_diverged = false;
    bool fxtsdo_diverged = false;
    bool nonfinite = false;
};

/// One recorded step: states, errors, monitors and flags at time t.
struct SimStep {
    double t = 0.0;
    RigidBodyState truth;
    TranslationalEsoState teso;
    RotationalEsoState reso;
    EsoErrors errors;
    Vec3 leso_e_phi = Vec3::Zero();
    Vec3 leso_e_tau = Vec3::Zero();
    Vec3 fxtsdo_e_phi = Vec3::Zero();
    Vec3 fxtsdo_e_tau = Vec3::Zero();
    double v_t = 0.0;
    double v_a = 0.0;
    SimFlags flags;
};

struct SimRecord {
    ScenarioKind scenario = ScenarioKind::Hovering;
    bool noise_on = false;
    bool baselines_on = false;
    double h = 0.0;
    std::uint64_t seed = 0;
    std::vector<SimStep> steps;
    SimFlags flags; // latched over the run
    double max_orthogonality_residual = 0.0;
};

/// Full closed loop, one fixed step per sample: sense -> baselines ->
/// controller (zero-order hold) -> coupled truth+observer Heun step ->
/// manifold projection. Deterministic for a given (config, seed).
SimRecord run_scenario(const SimConfig& cfg);

} // namespace fftseso
