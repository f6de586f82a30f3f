#include "fftseso/observer.hpp"

#include <cmath>

namespace fftseso {

namespace {

// kappa [x + (x'x)^((1-p)/p) x] + y, the sliding variable of both observers.
Vec3 sliding_variable(const Vec3& x, const Vec3& y, double kappa, const HolderExponent& p) {
    if (x.squaredNorm() == 0.0) {
        return y;
    }
    return y + kappa * (x + pow_floored(x.squaredNorm(), p.qp()) * x);
}

// (x'x)^((1-p)/p) H(x, (p-1)/p) y + y, guarded near x = 0 where the
// fractional factor is singular.
Vec3 h_term_bracket(const Vec3& x, const Vec3& y, const HolderExponent& p) {
    const double s = x.squaredNorm();
    if (s < kHTermGuard * kHTermGuard) {
        return y;
    }
    return pow_floored(s, p.qp()) * (h_matrix(x, (p.p - 1.0) / p.p) * y) + y;
}

} // namespace

TranslationalEsoGains::TranslationalEsoGains(double kt1, double kt2, double kt3, double kappa_t,
                                             HolderExponent p, std::optional<double> mu)
    : kt1(kt1), kt2(kt2), kt3(kt3), kappa_t(kappa_t), p(p), mu_t(0.0),
      certificate(solve_lyapunov_2x2(diff())) {
    mu_t = mu.value_or(mu_upper() / 2.0);
}

RotationalEsoGains::RotationalEsoGains(double ka1, double ka2, double ka3, double kappa_a,
                                       HolderExponent p, MorseWeights weights,
                                       std::optional<double> mu)
    : ka1(ka1), ka2(ka2), ka3(ka3), kappa_a(kappa_a), p(p), K(weights), mu_a(0.0),
      certificate(solve_lyapunov_2x2(diff())) {
    mu_a = mu.value_or(mu_upper() / 2.0);
}

namespace {

EsoGainReport build_report(const LyapunovCertificate& cert, double k3, double kappa, double mu,
                           double mu_upper, double mu_window_factor, double kappa_coeff,
                           const HolderExponent& p) {
    EsoGainReport r;
    r.certificate = cert;
    r.mu = mu;
    r.mu_upper = mu_upper;
    r.gamma1 = cert.gamma1;
    r.gamma2 = cert.gamma2;
    r.gamma1_meets_ratio = cert.gamma1_meets_ratio();
    r.gamma1_ratio_tight = std::abs(cert.gamma1 - cert.eigenvalue_ratio()) <= 1e-12;

    if (!(kappa > 0.5)) {
        r.violations.push_back("kappa <= 1/2");
    }
    if (!(mu > 0.0 && mu < mu_upper)) {
        r.violations.push_back("mu outside ]0, " + std::to_string(mu_upper) + "[ window");
    }

    // Gamma1 = min{gamma1 - mu/(factor k3^2 lmin(P)), kappa_coeff (2kappa-1)/...}
    const double gamma1_slack =
        cert.gamma1 - mu / (mu_window_factor * k3 * k3 * cert.lambda_min_P);
    r.Gamma1 = std::min(gamma1_slack, kappa_coeff * (kappa - 0.5));
    r.Gamma2 = std::min(cert.gamma2,
                        kappa_coeff * kappa * pow_floored(mu * mu, (p.p - 1.0) / (2.0 * p.p)));
    if (!(r.Gamma1 > 0.0)) {
        r.violations.push_back("Gamma1 not positive");
    }
    if (!(r.Gamma2 > 0.0)) {
        r.violations.push_back("Gamma2 not positive");
    }
    return r;
}

} // namespace

EsoGainReport validate_gains_t(const TranslationalEsoGains& g) {
    // Translational branches: Gamma_t1 second branch is 2 kappa_t - 1 and
    // Gamma_t2 second branch is 2 kappa_t mu^((p-1)/p); window factor 1.
    EsoGainReport r = build_report(g.certificate, g.kt3, g.kappa_t, g.mu_t, g.mu_upper(), 1.0,
                                   2.0, g.p);
    if (!r.valid()) {
        throw InvalidGains(r.violations);
    }
    return r;
}

EsoGainReport validate_gains_a(const RotationalEsoGains& g) {
    // Rotational branches: kappa_a - 1/2 and kappa_a mu^((p-1)/p); factor-2 window.
    EsoGainReport r = build_report(g.certificate, g.ka3, g.kappa_a, g.mu_a, g.mu_upper(), 2.0,
                                   1.0, g.p);
    if (!r.valid()) {
        throw InvalidGains(r.violations);
    }
    return r;
}

Vec3 psi_t(const Vec3& e_b, const Vec3& e_v, const TranslationalEsoGains& g) {
    return sliding_variable(e_b, e_v, g.kappa_t, g.p);
}

Vec3 psi_a(const Vec3& e_r, const Vec3& e_omega, const RotationalEsoGains& g) {
    return sliding_variable(e_r, e_omega, g.kappa_a, g.p);
}

Vec3 e_w(const Mat3& e_r_mat, const Vec3& e_omega, const MorseWeights& k) {
    Vec3 result = Vec3::Zero();
    const Vec3 weights(k.k1, k.k2, k.k3);
    for (int i = 0; i < 3; ++i) {
        const Vec3 basis = Vec3::Unit(i);
        const Vec3 row = e_r_mat.row(i); // E_R' e_i
        result += weights(i) * basis.cross(e_omega.cross(row));
    }
    return result;
}

TranslationalEsoRates translational_eso_rhs(const TranslationalEsoState& est, const Vec3& meas_b,
                                            const Vec3& meas_v, const Mat3& meas_r,
                                            double thrust_f, const TranslationalEsoGains& g,
                                            double mass, double grav) {
    const Vec3 e_b = meas_b - est.b_hat;
    const Vec3 e_v = meas_v - est.v_hat;
    const Vec3 psi = psi_t(e_b, e_v, g);
    const DifferentiatorGains dg = g.diff();

    TranslationalEsoRates rates;
    rates.b_hat = est.v_hat;
    rates.v_hat = grav * Vec3::UnitZ() - (thrust_f / mass) * (meas_r.col(2)) +
                  g.kt1 * phi1(psi, dg) + g.kappa_t * h_term_bracket(e_b, e_v, g.p) +
                  est.phi_hat / mass;
    rates.phi_hat = mass * g.kt2 * phi2(psi, dg);
    return rates;
}

RotationalEsoRates rotational_eso_rhs(const Mat3& r_hat, const Vec3& omega_hat,
                                      const Vec3& tau_hat, const Mat3& meas_r,
                                      const Vec3& meas_omega, const Vec3& control_tau,
                                      const RotationalEsoGains& g, const Mat3& inertia) {
    const Mat3 e_r_mat = r_hat.transpose() * meas_r;
    const Vec3 e_omega = meas_omega - e_r_mat.transpose() * omega_hat;
    const Vec3 e_r = s_K(e_r_mat, g.K);
    const Vec3 ew = e_w(e_r_mat, e_omega, g.K);
    const Vec3 psi = psi_a(e_r, e_omega, g);
    const DifferentiatorGains dg = g.diff();

    const Vec3 gyro = (inertia * meas_omega).cross(meas_omega);
    const Vec3 inner = gyro + tau_hat + control_tau + g.ka1 * (inertia * phi1(psi, dg)) +
                       g.kappa_a * (inertia * h_term_bracket(e_r, ew, g.p));

    RotationalEsoRates rates;
    rates.R_hat = r_hat * hat(omega_hat);
    rates.Omega_hat = e_r_mat * inertia.inverse() * inner +
                      e_r_mat * hat(e_omega) * e_r_mat.transpose() * omega_hat;
    rates.tau_hat = g.ka2 * (inertia * phi2(psi, dg));
    return rates;
}

EsoErrors compute_eso_errors(const Vec3& b, const Vec3& v, const Rotation& r, const Vec3& omega,
                             const Vec3& phi_d, const Vec3& tau_d,
                             const TranslationalEsoState& test, const RotationalEsoState& rest) {
    EsoErrors e;
    e.e_b = b - test.b_hat;
    e.e_v = v - test.v_hat;
    e.e_phi = phi_d - test.phi_hat;
    e.E_R = Rotation(rest.R_hat.matrix().transpose() * r.matrix());
    e.e_Omega = omega - e.E_R.matrix().transpose() * rest.Omega_hat;
    e.e_tau = tau_d - rest.tau_hat;
    return e;
}

double lyapunov_monitor_t(const EsoErrors& e, const TranslationalEsoGains& g, double mass) {
    const Vec3 psi = psi_t(e.e_b, e.e_v, g);
    const Vec3 zeta1 = phi1(psi, g.diff());
    const Vec3 zeta2 = e.e_phi / mass;
    return g.certificate.quadratic_form(zeta1, zeta2) + g.mu_t * e.e_b.squaredNorm();
}

double lyapunov_monitor_a(const EsoErrors& e, const RotationalEsoGains& g, const Mat3& inertia) {
    const Vec3 e_r = s_K(e.E_R, g.K);
    const Vec3 psi = psi_a(e_r, e.e_Omega, g);
    const Vec3 zeta1 = phi1(psi, g.diff());
    const Vec3 zeta2 = inertia.inverse() * e.e_tau;
    return g.certificate.quadratic_form(zeta1, zeta2) + g.mu_a * morse_value(e.E_R, g.K);
}

} // namespace fftseso
