#include "fftseso/differentiator.hpp"

#include <cmath>

namespace fftseso {

DifferentiatorGains::DifferentiatorGains(double k1, double k2, double k3, HolderExponent p)
    : k1(k1), k2(k2), k3(k3), p(p) {
    std::vector<std::string> violations;
    if (!(k1 > 0.0)) violations.push_back("k1 > 0");
    if (!(k2 > 0.0)) violations.push_back("k2 > 0");
    if (!(k3 > 0.0)) violations.push_back("k3 > 0");
    if (violations.empty()) {
        // Automatic for k1, k2 > 0; asserted anyway.
        const Eigen::Vector2cd ev = gain_matrix().eigenvalues();
        if (ev(0).real() >= 0.0 || ev(1).real() >= 0.0) {
            violations.push_back("gain matrix not Hurwitz");
        }
    }
    if (!violations.empty()) {
        throw InvalidGains(std::move(violations));
    }
}

double phi1_scale(double sq_norm, const DifferentiatorGains& g) {
    return g.k3 + pow_floored(sq_norm, g.p.q1());
}

double phi2_scale(double sq_norm, const DifferentiatorGains& g) {
    const double p = g.p.p;
    const double x = pow_floored(sq_norm, g.p.q1());
    return g.k3 * g.k3 + (2.0 * g.k3 * (2.0 * p - 1.0) / (3.0 * p - 2.0)) * x +
           (p / (3.0 * p - 2.0)) * x * x;
}

MatN phi1_jacobian(const VecN& e1, const DifferentiatorGains& g) {
    const double s = e1.squaredNorm();
    if (s < 1e-300) {
        throw ZeroVector("phi1_jacobian: undefined at e1 = 0");
    }
    const Eigen::Index n = e1.size();
    const double p = g.p.p;
    const double x = pow_floored(s, g.p.q1());
    MatN jac = (g.k3 + x) * MatN::Identity(n, n);
    jac.noalias() -= (x * 2.0 * (p - 1.0) / ((3.0 * p - 2.0) * s)) * (e1 * e1.transpose());
    return jac;
}

double phi1_jacobian_lambda_max(double sq_norm, const DifferentiatorGains& g) {
    return g.k3 + pow_floored(sq_norm, g.p.q1());
}

double phi1_jacobian_lambda_min(double sq_norm, const DifferentiatorGains& g) {
    const double p = g.p.p;
    return g.k3 + pow_floored(sq_norm, g.p.q1()) * p / (3.0 * p - 2.0);
}

DiffState::DiffState(VecN e1_in, VecN e2_in) : e1(std::move(e1_in)), e2(std::move(e2_in)) {
    if (e1.size() != e2.size() || e1.size() < 1) {
        throw DomainError("DiffState: e1 and e2 must share dimension n >= 1");
    }
    if (!e1.allFinite() || !e2.allFinite()) {
        throw NonFinite("DiffState: non-finite component");
    }
}

VecN DiffState::zeta(const DifferentiatorGains& g) const {
    VecN z(2 * dim());
    z.head(dim()) = phi1(e1, g);
    z.tail(dim()) = e2;
    return z;
}

DiffState differentiator_rhs(const DiffState& s, const DifferentiatorGains& g,
                             const VecN& delta1, const VecN& delta2, const VecN& noise) {
    if (delta1.size() != s.dim() || delta2.size() != s.dim() || noise.size() != s.dim()) {
        throw DomainError("differentiator_rhs: dimension mismatch");
    }
    const VecN e1n = s.e1 + noise;
    return DiffState(-g.k1 * phi1(e1n, g) + s.e2 + delta1, -g.k2 * phi2(e1n, g) + delta2);
}

DiffState differentiator_rhs(const DiffState& s, const DifferentiatorGains& g) {
    return DiffState(-g.k1 * phi1(s.e1, g) + s.e2, -g.k2 * phi2(s.e1, g));
}

} // namespace fftseso
