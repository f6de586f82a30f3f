#pragma once

#include <Eigen/Dense>

#include "fftseso/errors.hpp"

namespace fftseso {

using VecN = Eigen::VectorXd;
using MatN = Eigen::MatrixXd;

/// s^c computed as exp(c ln s) with s floored at 1e-300, so fractional
/// powers of squared norms never produce NaN from underflow.
inline double pow_floored(double s, double c) {
    if (c == 0.0) {
        return 1.0;
    }
    return std::exp(c * std::log(s < 1e-300 ? 1e-300 : s));
}

/// Fractional exponent of the differentiator nonlinearities, p in ]1, 2[.
/// The derived exponents are always computed from p, never stored.
struct HolderExponent {
    explicit HolderExponent(double value) : p(value) {
        if (!(value > 1.0 && value < 2.0)) {
            throw DomainError("HolderExponent: p must lie in ]1,2[");
        }
    }

    double p;

    /// (1-p)/(3p-2), the exponent on e1'e1 inside phi1.
    double q1() const { return (1.0 - p) / (3.0 * p - 2.0); }
    /// 2(1-p)/(3p-2), the stronger exponent inside phi2.
    double q2() const { return 2.0 * (1.0 - p) / (3.0 * p - 2.0); }
    /// (1-p)/p, the exponent used by the observer correction terms.
    double qp() const { return (1.0 - p) / p; }
};

/// Gains (k1, k2, k3, p) of the differentiator. k1, k2 > 0 make
/// [[-k1, 1], [-k2, 0]] Hurwitz; this is asserted at construction.
struct DifferentiatorGains {
    DifferentiatorGains(double k1, double k2, double k3, HolderExponent p);

    Eigen::Matrix2d gain_matrix() const {
        Eigen::Matrix2d a;
        a << -k1, 1.0, -k2, 0.0;
        return a;
    }

    double k1;
    double k2;
    double k3;
    HolderExponent p;
};

/// Scalar multiplier of phi1: phi1(e) = phi1_scale(e'e) * e.
double phi1_scale(double sq_norm, const DifferentiatorGains& g);

/// Scalar multiplier of phi2: phi2(e) = phi2_scale(e'e) * e.
double phi2_scale(double sq_norm, const DifferentiatorGains& g);

/// k3 e1 + (e1'e1)^((1-p)/(3p-2)) e1, extended continuously by 0 at e1 = 0.
template <typename Derived>
typename Derived::PlainObject phi1(const Eigen::MatrixBase<Derived>& e1,
                                   const DifferentiatorGains& g) {
    const double s = e1.squaredNorm();
    if (s == 0.0) {
        return Derived::PlainObject::Zero(e1.rows(), e1.cols());
    }
    return phi1_scale(s, g) * e1;
}

/// k3^2 e1 + (2k3(2p-1)/(3p-2))(e1'e1)^((1-p)/(3p-2)) e1
///         + (p/(3p-2))(e1'e1)^(2(1-p)/(3p-2)) e1, 0 at e1 = 0.
template <typename Derived>
typename Derived::PlainObject phi2(const Eigen::MatrixBase<Derived>& e1,
                                   const DifferentiatorGains& g) {
    const double s = e1.squaredNorm();
    if (s == 0.0) {
        return Derived::PlainObject::Zero(e1.rows(), e1.cols());
    }
    return phi2_scale(s, g) * e1;
}

/// Jacobian of phi1; symmetric positive definite away from e1 = 0.
/// Throws ZeroVector when ||e1||^2 < 1e-300 (the Jacobian is undefined there;
/// the dynamics only ever evaluate phi1/phi2, which are total).
MatN phi1_jacobian(const VecN& e1, const DifferentiatorGains& g);

/// Closed-form extreme eigenvalues of phi1_jacobian.
double phi1_jacobian_lambda_max(double sq_norm, const DifferentiatorGains& g);
double phi1_jacobian_lambda_min(double sq_norm, const DifferentiatorGains& g);

/// State (e1, e2) of the 2n-dimensional differentiator error dynamics.
struct DiffState {
    DiffState(VecN e1_in, VecN e2_in);

    Eigen::Index dim() const { return e1.size(); }

    /// [phi1(e1)', e2']' -- the coordinates the Lyapunov function acts on.
    VecN zeta(const DifferentiatorGains& g) const;

    double norm() const { return std::sqrt(e1.squaredNorm() + e2.squaredNorm()); }

    VecN e1;
    VecN e2;
};

/// Error dynamics under perturbation (delta1, delta2) and measurement noise:
///   de1 = -k1 phi1(e1 + noise) + e2 + delta1
///   de2 = -k2 phi2(e1 + noise) + delta2
/// Zero noise and deltas recover the nominal differentiator exactly.
DiffState differentiator_rhs(const DiffState& s, const DifferentiatorGains& g,
                             const VecN& delta1, const VecN& delta2, const VecN& noise);

/// Nominal dynamics (no perturbation, no noise).
DiffState differentiator_rhs(const DiffState& s, const DifferentiatorGains& g);

} // namespace fftseso
