#pragma once

#include <utility>

#include <Eigen/Dense>

#include "fftseso/differentiator.hpp"
#include "fftseso/errors.hpp"

namespace fftseso {

/**
 * @brief Solution of the 2x2 Lyapunov equation A'P + PA = -Q together with
 * the decay constants it certifies.
 *
 * gamma1 and gamma2 are the coefficients of the decrease inequality
 * dV/dt <= -gamma1 V - gamma2 V^(1/p) along the differentiator flow:
 *   gamma1 = k3 lmin(Q) / lmax(P)
 *   gamma2 = lmin(Q) lmin(P)^((p-1)/p) p / (lmax(P) (3p-2))
 */
struct LyapunovCertificate {
    Eigen::Matrix2d P;
    Eigen::Matrix2d Q;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double lambda_min_P = 0.0;
    double lambda_max_P = 0.0;
    double lambda_min_Q = 0.0;

    /// ||A'P + PA + Q|| for the given gain matrix.
    double residual(const DifferentiatorGains& g) const;

    /// lmax(P)/lmin(P); the disturbance/noise corollaries need
    /// gamma1 >= ratio. Reported, not enforced (see gamma1_meets_ratio).
    double eigenvalue_ratio() const { return lambda_max_P / lambda_min_P; }
    bool gamma1_meets_ratio() const { return gamma1 >= eigenvalue_ratio(); }

    /// Blockwise quadratic form z'Pz with z = [a', b']' for n-vectors a, b.
    template <typename D1, typename D2>
    double quadratic_form(const Eigen::MatrixBase<D1>& a, const Eigen::MatrixBase<D2>& b) const {
        return P(0, 0) * a.squaredNorm() + 2.0 * P(0, 1) * a.dot(b) + P(1, 1) * b.squaredNorm();
    }
};

/// Solve A'P + PA = -Q for the gain matrix A = [[-k1, 1], [-k2, 0]].
/// Q must be symmetric positive definite (throws NotSpd otherwise).
LyapunovCertificate solve_lyapunov_2x2(const DifferentiatorGains& g,
                                       const Eigen::Matrix2d& q = Eigen::Matrix2d::Identity());

/// Settling-time bound for dV/dt <= -lambda V^alpha: V0^(1-alpha)/(lambda(1-alpha)).
double settling_time_fts(double lambda, double alpha, double v0);

/// Settling-time bound for dV/dt <= -l1 V - l2 V^alpha:
/// ln((l1 V0^(1-alpha) + l2)/l2) / (l1 (1-alpha)).
double settling_time_ffts(double lambda1, double lambda2, double alpha, double v0);

/// Residual set and settling bound for dV/dt <= -l1 V - l2 V^alpha + eta.
struct PftsBound {
    double theta0 = 0.0;
    double eta = 0.0;
    double residual_set_level = 0.0;
    double settling_time_bound = 0.0;
};

PftsBound pfts_bound(double lambda1, double lambda2, double alpha, double eta, double theta0,
                     double v0);

/// Upper bounds on ||phi1(e1) - phi1(e1+mu)|| and ||phi2(e1) - phi2(e1+mu)||
/// over all e1, for noise bounded by ||mu|| <= mu_bar.
std::pair<double, double> noise_gap_bounds(double mu_bar, const DifferentiatorGains& g);

/// Y(x)'Y(x) with Y(x) = ||x||^(-2a) x - ||x+mu||^(-2a) (x+mu).
/// Throws DomainError at the excluded points x = 0, x = -mu, or a outside ]0,1/2[.
double noise_gap_function(const VecN& x, const VecN& mu, double alpha);

/// Search window and resolution for the noise-gap argmax scan, expressed in
/// the (c1, c2) coordinates x = c1 mu + c2 nu with nu perpendicular to mu
/// and ||nu|| = ||mu||.
struct GridSpec {
    double c1_min = -2.0;
    double c1_max = 1.0;
    double c2_min = -1.5;
    double c2_max = 1.5;
    double step = 1e-3;
};

/// Brute-force grid maximizer of the noise-gap function; the independent
/// oracle for the analytic maximizer -mu/2.
VecN noise_gap_argmax_oracle(const VecN& mu, double alpha, const GridSpec& grid = {});

} // namespace fftseso
