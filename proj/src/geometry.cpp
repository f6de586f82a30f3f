#include "fftseso/geometry.hpp"

#include <cmath>

namespace fftseso {

namespace {
constexpr double kSkewTol = 1e-9;
constexpr double kReprojectTol = 1e-12;
constexpr double kSmallAngle = 1e-6;
constexpr double kHMatrixFloor = 1e-24;
} // namespace

Mat3 hat(const Vec3& v) {
    Mat3 m;
    m << 0.0, -v.z(), v.y(),
         v.z(), 0.0, -v.x(),
        -v.y(), v.x(), 0.0;
    return m;
}

Vec3 vee(const Mat3& m) {
    const double residual = (m + m.transpose()).norm();
    if (!(residual <= kSkewTol)) {
        throw NotSkew("vee: matrix is not skew-symmetric (residual " +
                      std::to_string(residual) + ")");
    }
    return Vec3(m(2, 1), m(0, 2), m(1, 0));
}

Mat3 project_to_so3(const Mat3& m) {
    if (!m.allFinite()) {
        throw NonFinite("project_to_so3: non-finite matrix");
    }
    Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.singularValues()(2) <= 0.0) {
        throw std::invalid_argument("project_to_so3: rank-deficient matrix");
    }
    Mat3 r = svd.matrixU() * svd.matrixV().transpose();
    if (r.determinant() < 0.0) {
        r = svd.matrixU() * Vec3(1.0, 1.0, -1.0).asDiagonal() * svd.matrixV().transpose();
    }
    return r;
}

Rotation::Rotation(const Mat3& m) : m_(m) {
    if (!m.allFinite()) {
        throw NonFinite("Rotation: non-finite matrix");
    }
    if (orthogonality_residual() > kReprojectTol || m_.determinant() < 0.0) {
        m_ = project_to_so3(m_);
    }
}

Rotation exp_so3(const Vec3& v) {
    const double theta2 = v.squaredNorm();
    const Mat3 vx = hat(v);
    double a; // sin(t)/t
    double b; // (1-cos(t))/t^2
    if (theta2 < kSmallAngle * kSmallAngle) {
        a = 1.0 - theta2 / 6.0;
        b = 0.5 - theta2 / 24.0;
    } else {
        const double theta = std::sqrt(theta2);
        a = std::sin(theta) / theta;
        b = (1.0 - std::cos(theta)) / theta2;
    }
    return Rotation(Mat3(Mat3::Identity() + a * vx + b * vx * vx), Rotation::Trusted{});
}

Vec3 log_so3(const Rotation& r) {
    // Quaternion route: well conditioned in every branch, including angles
    // near pi where trace-based extraction loses digits.
    Eigen::Quaterniond q(r.matrix());
    if (q.w() < 0.0) {
        q.coeffs() = -q.coeffs();
    }
    const Vec3 im(q.x(), q.y(), q.z());
    const double s = im.norm();
    if (s < 1e-9) {
        return 2.0 * im; // theta ~ 2s; relative error O(s^2)
    }
    const double theta = 2.0 * std::atan2(s, q.w());
    return (theta / s) * im;
}

double principal_angle(const Rotation& a, const Rotation& b) {
    return log_so3(Rotation(a.matrix().transpose() * b.matrix())).norm();
}

MorseWeights::MorseWeights(double k1, double k2, double k3) : k1(k1), k2(k2), k3(k3) {
    if (!(k1 > k2 && k2 > k3 && k3 >= 1.0)) {
        throw DomainError("MorseWeights: need K1 > K2 > K3 >= 1");
    }
}

Vec3 s_K(const Mat3& r, const MorseWeights& k) {
    // (R^T e_i) x e_i with e_i the standard basis; rows of R are R^T e_i.
    const Vec3 r0 = r.row(0);
    const Vec3 r1 = r.row(1);
    const Vec3 r2 = r.row(2);
    return k.k1 * r0.cross(Vec3::UnitX()) + k.k2 * r1.cross(Vec3::UnitY()) +
           k.k3 * r2.cross(Vec3::UnitZ());
}

double morse_value(const Mat3& r, const MorseWeights& k) {
    return k.k1 * (1.0 - r(0, 0)) + k.k2 * (1.0 - r(1, 1)) + k.k3 * (1.0 - r(2, 2));
}

bool in_set_S(const Rotation& r) {
    const Mat3& m = r.matrix();
    for (int i = 0; i < 3; ++i) {
        if (m(i, i) < 0.0) {
            return false;
        }
        for (int j = i + 1; j < 3; ++j) {
            if (m(i, j) * m(j, i) > 0.0) {
                return false;
            }
        }
    }
    return true;
}

Mat3 h_matrix(const Vec3& x, double k) {
    const double n2 = x.squaredNorm();
    if (n2 < kHMatrixFloor) {
        throw ZeroVector("h_matrix: direction vector too small");
    }
    return Mat3::Identity() - (2.0 * k / n2) * (x * x.transpose());
}

} // namespace fftseso
