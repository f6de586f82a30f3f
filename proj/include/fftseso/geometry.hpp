#pragma once

#include <Eigen/Dense>

#include "fftseso/errors.hpp"

namespace fftseso {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Cross-product matrix: hat(v) * w == v.cross(w).
Mat3 hat(const Vec3& v);

/// Inverse of hat(). Throws NotSkew if the symmetry residual exceeds 1e-9.
Vec3 vee(const Mat3& m);

/// Closest rotation to m in the Frobenius sense (symmetric polar factor).
Mat3 project_to_so3(const Mat3& m);

/**
 * @brief A 3x3 rotation matrix kept on SO(3).
 *
 * Construction re-orthonormalizes through the polar factor whenever the
 * orthogonality residual ||R^T R - I||_F exceeds 1e-12, so a stored value
 * always satisfies the group invariants to 1e-9. Values are immutable.
 */
class Rotation {
  public:
    /// Identity rotation.
    Rotation() : m_(Mat3::Identity()) {}

    /// Construct from a matrix, projecting back onto SO(3) if needed.
    /// Throws NonFinite for NaN/inf entries, std::invalid_argument when the
    /// matrix is too degenerate to define a rotation (det <= 0 or singular).
    explicit Rotation(const Mat3& m);

    static Rotation identity() { return Rotation(); }

    const Mat3& matrix() const { return m_; }

    Rotation transposed() const { return Rotation(m_.transpose(), Trusted{}); }

    Vec3 operator*(const Vec3& v) const { return m_ * v; }
    Rotation operator*(const Rotation& o) const { return Rotation(m_ * o.m_); }

    double orthogonality_residual() const {
        return (m_.transpose() * m_ - Mat3::Identity()).norm();
    }

  private:
    struct Trusted {};
    Rotation(const Mat3& m, Trusted) : m_(m) {}

    friend Rotation exp_so3(const Vec3&);

    Mat3 m_;
};

/// Rigid-body pose: attitude plus position (m).
struct Pose {
    Rotation rotation;
    Vec3 position = Vec3::Zero();
};

/// Rodrigues formula, with the second-order series below ||v|| = 1e-6.
Rotation exp_so3(const Vec3& v);

/// Principal logarithm; the result has norm in [0, pi].
Vec3 log_so3(const Rotation& r);

/// Rotation angle between two attitudes: ||log(a^T b)||, in [0, pi].
double principal_angle(const Rotation& a, const Rotation& b);

/// Weights of the attitude-error potential; requires K1 > K2 > K3 >= 1.
struct MorseWeights {
    MorseWeights(double k1, double k2, double k3);

    Mat3 matrix() const { return Vec3(k1, k2, k3).asDiagonal(); }

    double k1;
    double k2;
    double k3;
};

/// Gradient-like vector of the potential: sum_i K_i (R^T e_i) x e_i.
/// The Mat3 overload accepts raw (possibly slightly off-manifold) matrices
/// as they occur mid integrator stage.
Vec3 s_K(const Mat3& r, const MorseWeights& k);
inline Vec3 s_K(const Rotation& r, const MorseWeights& k) { return s_K(r.matrix(), k); }

/// Attitude-error potential <K, I - R> = trace(K^T (I - R)); zero iff R = I.
double morse_value(const Mat3& r, const MorseWeights& k);
inline double morse_value(const Rotation& r, const MorseWeights& k) {
    return morse_value(r.matrix(), k);
}

/// Membership in the closed set where s_K^T s_K >= <K, I-R> holds:
/// all R_ii >= 0 and R_ij R_ji <= 0 for i != j.
bool in_set_S(const Rotation& r);

/// H(x, k) = I - (2k / x^T x) x x^T; symmetric with eigenvalues {1-2k, 1, 1}.
/// Throws ZeroVector when ||x||^2 < 1e-24.
Mat3 h_matrix(const Vec3& x, double k);

} // namespace fftseso
