#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fftseso/differentiator.hpp"
#include "fftseso/geometry.hpp"
#include "fftseso/lyapunov.hpp"

namespace fftseso {

/// Norm below which the singular H-term of the observer corrections is
/// replaced by its velocity part alone. Along exact trajectories the term
/// stays finite; the guard only activates inside the numerical floor.
inline constexpr double kHTermGuard = 1e-9;

/// Gains of the translational observer. kt1/kt2/kt3 and p parameterize the
/// underlying differentiator; kappa_t shapes the sliding variable psi_t;
/// mu_t is an analysis constant used by the Lyapunov monitor and the gain
/// window, never by the dynamics. It defaults to half its upper bound.
struct TranslationalEsoGains {
    TranslationalEsoGains(double kt1, double kt2, double kt3, double kappa_t, HolderExponent p,
                          std::optional<double> mu = std::nullopt);

    DifferentiatorGains diff() const { return {kt1, kt2, kt3, p}; }

    /// Upper end of the admissible mu_t window.
    double mu_upper() const {
        return kt3 * kt3 * kt3 * certificate.lambda_min_P * certificate.lambda_min_Q /
               certificate.lambda_max_P;
    }

    double kt1;
    double kt2;
    double kt3;
    double kappa_t;
    HolderExponent p;
    double mu_t;
    LyapunovCertificate certificate; // from [[-kt1, 1], [-kt2, 0]], Q = I
};

/// Gains of the rotational observer; the mu window carries an extra factor 2.
struct RotationalEsoGains {
    RotationalEsoGains(double ka1, double ka2, double ka3, double kappa_a, HolderExponent p,
                       MorseWeights weights, std::optional<double> mu = std::nullopt);

    DifferentiatorGains diff() const { return {ka1, ka2, ka3, p}; }

    double mu_upper() const {
        return 2.0 * ka3 * ka3 * ka3 * certificate.lambda_min_P * certificate.lambda_min_Q /
               certificate.lambda_max_P;
    }

    double ka1;
    double ka2;
    double ka3;
    double kappa_a;
    HolderExponent p;
    MorseWeights K;
    double mu_a;
    LyapunovCertificate certificate;
};

/// Constants certified by a gain set, plus any violated constraints.
struct EsoGainReport {
    LyapunovCertificate certificate;
    double mu = 0.0;
    double mu_upper = 0.0;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double Gamma1 = 0.0;
    double Gamma2 = 0.0;
    /// Corollary 1/2 ask gamma1 >= lmax(P)/lmin(P); equality is flagged,
    /// not decided.
    bool gamma1_meets_ratio = false;
    bool gamma1_ratio_tight = false;
    std::vector<std::string> violations;

    bool valid() const { return violations.empty(); }
};

/// Recompute the certificate and constraint set for the translational gains.
/// Throws InvalidGains listing every violated constraint.
EsoGainReport validate_gains_t(const TranslationalEsoGains& g);

/// Rotational counterpart (factor-2 mu window, kappa_a > 1/2).
EsoGainReport validate_gains_a(const RotationalEsoGains& g);

/// e_v + kappa [e_b + (e_b'e_b)^((1-p)/p) e_b], continuous at e_b = 0.
Vec3 psi_t(const Vec3& e_b, const Vec3& e_v, const TranslationalEsoGains& g);

/// e_Omega + kappa [e_R + (e_R'e_R)^((1-p)/p) e_R].
Vec3 psi_a(const Vec3& e_r, const Vec3& e_omega, const RotationalEsoGains& g);

/// d/dt s_K(E_R) along E_R' = E_R hat(e_Omega):
/// sum_i K_i e_i x (e_Omega x E_R' e_i).
Vec3 e_w(const Mat3& e_r_mat, const Vec3& e_omega, const MorseWeights& k);
inline Vec3 e_w(const Rotation& e_r, const Vec3& e_omega, const MorseWeights& k) {
    return e_w(e_r.matrix(), e_omega, k);
}

struct TranslationalEsoState {
    Vec3 b_hat = Vec3::Zero();   // m
    Vec3 v_hat = Vec3::Zero();   // m/s
    Vec3 phi_hat = Vec3::Zero(); // N
};

struct TranslationalEsoRates {
    Vec3 b_hat;
    Vec3 v_hat;
    Vec3 phi_hat;
};

/// Observer vector field for the translational motion, driven by position,
/// velocity and attitude measurements plus the commanded thrust. The raw
/// overload accepts the attitude as it occurs mid integrator stage.
TranslationalEsoRates translational_eso_rhs(const TranslationalEsoState& est, const Vec3& meas_b,
                                            const Vec3& meas_v, const Mat3& meas_r,
                                            double thrust_f, const TranslationalEsoGains& g,
                                            double mass, double grav);

inline TranslationalEsoRates translational_eso_rhs(const TranslationalEsoState& est,
                                                   const Vec3& meas_b, const Vec3& meas_v,
                                                   const Rotation& meas_r, double thrust_f,
                                                   const TranslationalEsoGains& g, double mass,
                                                   double grav) {
    return translational_eso_rhs(est, meas_b, meas_v, meas_r.matrix(), thrust_f, g, mass, grav);
}

struct RotationalEsoState {
    Rotation R_hat;
    Vec3 Omega_hat = Vec3::Zero(); // rad/s
    Vec3 tau_hat = Vec3::Zero();   // N*m
};

/// Attitude rate is reported as a raw matrix; the integrator projects back
/// onto SO(3) once per step.
struct RotationalEsoRates {
    Mat3 R_hat;
    Vec3 Omega_hat;
    Vec3 tau_hat;
};

/// Raw-matrix core used mid integrator stage, where R_hat and the measured
/// attitude drift slightly off the manifold.
RotationalEsoRates rotational_eso_rhs(const Mat3& r_hat, const Vec3& omega_hat,
                                      const Vec3& tau_hat, const Mat3& meas_r,
                                      const Vec3& meas_omega, const Vec3& control_tau,
                                      const RotationalEsoGains& g, const Mat3& inertia);

inline RotationalEsoRates rotational_eso_rhs(const RotationalEsoState& est, const Rotation& meas_r,
                                             const Vec3& meas_omega, const Vec3& control_tau,
                                             const RotationalEsoGains& g, const Mat3& inertia) {
    return rotational_eso_rhs(est.R_hat.matrix(), est.Omega_hat, est.tau_hat, meas_r.matrix(),
                              meas_omega, control_tau, g, inertia);
}

/// Estimation errors of both observers against ground truth.
struct EsoErrors {
    Vec3 e_b = Vec3::Zero();
    Vec3 e_v = Vec3::Zero();
    Vec3 e_phi = Vec3::Zero();
    Rotation E_R;
    Vec3 e_Omega = Vec3::Zero();
    Vec3 e_tau = Vec3::Zero();
};

EsoErrors compute_eso_errors(const Vec3& b, const Vec3& v, const Rotation& r, const Vec3& omega,
                             const Vec3& phi_d, const Vec3& tau_d,
                             const TranslationalEsoState& test, const RotationalEsoState& rest);

/// V_t = zeta_t' P_t zeta_t + mu_t e_b'e_b with zeta_t = [phi1(psi_t)', (e_phi/m)']'.
double lyapunov_monitor_t(const EsoErrors& e, const TranslationalEsoGains& g, double mass);

/// V_a = zeta_a' P_a zeta_a + mu_a <K, I - E_R> with zeta_a = [phi1(psi_a)', (J^-1 e_tau)']'.
double lyapunov_monitor_a(const EsoErrors& e, const RotationalEsoGains& g, const Mat3& inertia);

} // namespace fftseso
