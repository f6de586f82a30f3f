#include "fftseso/lyapunov.hpp"

#include <cmath>

namespace fftseso {

namespace {

// Eigenvalues of a symmetric 2x2 matrix, closed form.
std::pair<double, double> sym2x2_eigenvalues(const Eigen::Matrix2d& m) {
    const double tr = m(0, 0) + m(1, 1);
    const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
    return {(tr - disc) / 2.0, (tr + disc) / 2.0};
}

} // namespace

double LyapunovCertificate::residual(const DifferentiatorGains& g) const {
    const Eigen::Matrix2d a = g.gain_matrix();
    return (a.transpose() * P + P * a + Q).norm();
}

LyapunovCertificate solve_lyapunov_2x2(const DifferentiatorGains& g, const Eigen::Matrix2d& q) {
    if ((q - q.transpose()).norm() > 1e-12 * (1.0 + q.norm())) {
        throw NotSpd("solve_lyapunov_2x2: Q is not symmetric");
    }
    const auto [q_min, q_max] = sym2x2_eigenvalues(q);
    if (!(q_min > 0.0)) {
        throw NotSpd("solve_lyapunov_2x2: Q is not positive definite");
    }

    // Three unknowns (p11, p12, p22) solve in closed form:
    //   2 k1 p11 + 2 k2 p12 = q11
    //   p11 - k1 p12 - k2 p22 = -q12
    //   -2 p12 = q22
    const double p12 = -q(1, 1) / 2.0;
    const double p11 = (q(0, 0) - 2.0 * g.k2 * p12) / (2.0 * g.k1);
    const double p22 = (q(0, 1) + p11 - g.k1 * p12) / g.k2;

    LyapunovCertificate cert;
    cert.P << p11, p12, p12, p22;
    cert.Q = q;
    const auto [p_min, p_max] = sym2x2_eigenvalues(cert.P);
    if (!(p_min > 0.0)) {
        throw NotSpd("solve_lyapunov_2x2: solution P is not positive definite");
    }
    cert.lambda_min_P = p_min;
    cert.lambda_max_P = p_max;
    cert.lambda_min_Q = q_min;

    const double p = g.p.p;
    cert.gamma1 = g.k3 * q_min / p_max;
    cert.gamma2 = q_min * std::pow(p_min, (p - 1.0) / p) / p_max * p / (3.0 * p - 2.0);
    return cert;
}

double settling_time_fts(double lambda, double alpha, double v0) {
    if (!(lambda > 0.0) || !(alpha > 0.0 && alpha < 1.0) || !(v0 >= 0.0)) {
        throw DomainError("settling_time_fts: need lambda > 0, alpha in ]0,1[, V0 >= 0");
    }
    return std::pow(v0, 1.0 - alpha) / (lambda * (1.0 - alpha));
}

double settling_time_ffts(double lambda1, double lambda2, double alpha, double v0) {
    if (!(lambda1 > 0.0) || !(lambda2 > 0.0) || !(alpha > 0.0 && alpha < 1.0) || !(v0 >= 0.0)) {
        throw DomainError("settling_time_ffts: need lambdas > 0, alpha in ]0,1[, V0 >= 0");
    }
    return std::log((lambda1 * std::pow(v0, 1.0 - alpha) + lambda2) / lambda2) /
           (lambda1 * (1.0 - alpha));
}

PftsBound pfts_bound(double lambda1, double lambda2, double alpha, double eta, double theta0,
                     double v0) {
    if (!(lambda1 > 0.0) || !(lambda2 > 0.0) || !(alpha > 0.0 && alpha < 1.0) ||
        !(eta >= 0.0) || !(theta0 > 0.0 && theta0 < 1.0) || !(v0 >= 0.0)) {
        throw DomainError("pfts_bound: argument outside Lemma domain");
    }
    PftsBound b;
    b.theta0 = theta0;
    b.eta = eta;
    b.residual_set_level = std::min(eta / ((1.0 - theta0) * lambda1),
                                    std::pow(eta / ((1.0 - theta0) * lambda2), 1.0 / alpha));
    const double v_pow = std::pow(v0, 1.0 - alpha);
    const double t1 = std::log((theta0 * lambda1 * v_pow + lambda2) / lambda2) /
                      (theta0 * lambda1 * (1.0 - alpha));
    const double t2 = std::log((lambda1 * v_pow + theta0 * lambda2) / (theta0 * lambda2)) /
                      (lambda1 * (1.0 - alpha));
    b.settling_time_bound = std::max(t1, t2);
    return b;
}

std::pair<double, double> noise_gap_bounds(double mu_bar, const DifferentiatorGains& g) {
    if (!(mu_bar >= 0.0)) {
        throw DomainError("noise_gap_bounds: mu_bar must be nonnegative");
    }
    if (mu_bar == 0.0) {
        return {0.0, 0.0};
    }
    const double p = g.p.p;
    const double beta = 2.0 * (p - 1.0) / (3.0 * p - 2.0);
    const double bound1 = g.k3 * mu_bar + std::pow(2.0, beta) * std::pow(mu_bar, 1.0 - beta);
    const double bound2 = g.k3 * g.k3 * mu_bar +
                          (2.0 * g.k3 * (2.0 * p - 1.0) / (3.0 * p - 2.0)) *
                              std::pow(2.0, beta) * std::pow(mu_bar, 1.0 - beta) +
                          (p / (3.0 * p - 2.0)) * std::pow(2.0, 2.0 * beta) *
                              std::pow(mu_bar, 1.0 - 2.0 * beta);
    return {bound1, bound2};
}

double noise_gap_function(const VecN& x, const VecN& mu, double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5)) {
        throw DomainError("noise_gap_function: alpha must lie in ]0,1/2[");
    }
    if (x.size() != mu.size()) {
        throw DomainError("noise_gap_function: dimension mismatch");
    }
    const VecN xm = x + mu;
    const double sx = x.squaredNorm();
    const double sxm = xm.squaredNorm();
    if (sx == 0.0 || sxm == 0.0) {
        throw DomainError("noise_gap_function: x = 0 and x = -mu are excluded");
    }
    const VecN y = std::pow(sx, -alpha) * x - std::pow(sxm, -alpha) * xm;
    return y.squaredNorm();
}

VecN noise_gap_argmax_oracle(const VecN& mu, double alpha, const GridSpec& grid) {
    const double mu_norm = mu.norm();
    if (!(mu_norm > 0.0)) {
        throw DomainError("noise_gap_argmax_oracle: mu must be nonzero");
    }
    if (!(grid.step > 0.0)) {
        throw DomainError("noise_gap_argmax_oracle: grid step must be positive");
    }

    // Perpendicular direction scaled to ||mu||; for n = 1 only c1 varies.
    VecN nu = VecN::Zero(mu.size());
    if (mu.size() > 1) {
        Eigen::Index weakest = 0;
        mu.cwiseAbs().minCoeff(&weakest);
        VecN basis = VecN::Zero(mu.size());
        basis(weakest) = 1.0;
        nu = basis - (basis.dot(mu) / (mu_norm * mu_norm)) * mu;
        nu *= mu_norm / nu.norm();
    }

    const double guard = 1e-12 * mu_norm * mu_norm;
    double best_value = -1.0;
    VecN best_x = -0.25 * mu; // interior fallback; overwritten by the scan
    const auto steps_c1 = static_cast<long>(std::floor((grid.c1_max - grid.c1_min) / grid.step));
    const long steps_c2 =
        mu.size() > 1
            ? static_cast<long>(std::floor((grid.c2_max - grid.c2_min) / grid.step))
            : 0;
    for (long i = 0; i <= steps_c1; ++i) {
        const double c1 = grid.c1_min + grid.step * static_cast<double>(i);
        for (long j = 0; j <= steps_c2; ++j) {
            const double c2 = grid.c2_min + grid.step * static_cast<double>(j);
            const VecN x = c1 * mu + c2 * nu;
            const VecN xm = x + mu;
            if (x.squaredNorm() < guard || xm.squaredNorm() < guard) {
                continue; // excluded points of the Lemma
            }
            const double value = noise_gap_function(x, mu, alpha);
            if (value > best_value) {
                best_value = value;
                best_x = x;
            }
        }
    }
    return best_x;
}

} // namespace fftseso
