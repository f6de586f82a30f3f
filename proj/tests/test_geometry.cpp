#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fftseso/geometry.hpp"
#include "test_support.hpp"

using namespace fftseso;

namespace {
constexpr double kPi = 3.14159265358979323846;

// Componentwise cross product, independent of hat().
Vec3 cross_oracle(const Vec3& a, const Vec3& b) {
    return Vec3(a.y() * b.z() - a.z() * b.y(), a.z() * b.x() - a.x() * b.z(),
                a.x() * b.y() - a.y() * b.x());
}

const std::array<Mat3, 4> critical_set = {
    Mat3(Vec3(1, 1, 1).asDiagonal()), Mat3(Vec3(1, -1, -1).asDiagonal()),
    Mat3(Vec3(-1, 1, -1).asDiagonal()), Mat3(Vec3(-1, -1, 1).asDiagonal())};

} // namespace

TEST_CASE("hat matches the cross product") {
    Mat3 expected;
    expected << 0, -1, 0, 1, 0, 0, 0, 0, 0;
    CHECK((hat(Vec3(0, 0, 1)) - expected).norm() == 0.0);
    CHECK(hat(Vec3::Zero()).norm() == 0.0);

    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        const Vec3 v = test::random_vec3(rng, 3.0);
        const Vec3 w = test::random_vec3(rng, 3.0);
        CHECK((hat(v) * w - cross_oracle(v, w)).norm() < 1e-12 * (1.0 + v.norm() * w.norm()));
    }
}

TEST_CASE("vee inverts hat and rejects non-skew input") {
    CHECK((vee(hat(Vec3(1, 2, 3))) - Vec3(1, 2, 3)).norm() == 0.0);
    CHECK(vee(Mat3::Zero()).norm() == 0.0);

    Mat3 sym;
    sym << 0, 1, 0, 1, 0, 0, 0, 0, 0;
    CHECK_THROWS_AS(vee(sym), NotSkew);
}

TEST_CASE("exp_so3 basics") {
    CHECK((exp_so3(Vec3::Zero()).matrix() - Mat3::Identity()).norm() == 0.0);

    // Quarter turn about z maps e1 to e2.
    const Rotation r = exp_so3(Vec3(0, 0, kPi / 2));
    CHECK((r * Vec3::UnitX() - Vec3::UnitY()).norm() < 1e-15);

    std::mt19937 rng(11);
    for (int i = 0; i < 200; ++i) {
        const Vec3 v = test::random_vec3(rng, 2.0);
        const Mat3 prod = exp_so3(v).matrix() * exp_so3(-v).matrix();
        CHECK((prod - Mat3::Identity()).norm() < 1e-12);
    }
}

TEST_CASE("log_so3 basics and round trips") {
    CHECK(log_so3(Rotation::identity()).norm() == 0.0);
    CHECK((log_so3(exp_so3(Vec3(0.1, 0.2, 0.3))) - Vec3(0.1, 0.2, 0.3)).norm() < 1e-9);

    const Vec3 half_turn = log_so3(Rotation(Vec3(1, -1, -1).asDiagonal()));
    CHECK(std::abs(half_turn.norm() - kPi) < 1e-12);
    CHECK(std::abs(std::abs(half_turn.x()) - kPi) < 1e-12);

    // theta v round trip for theta in [0, pi), including near-pi angles.
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        Vec3 axis = test::random_vec3(rng);
        while (axis.norm() < 1e-6) axis = test::random_vec3(rng);
        axis.normalize();
        const double theta = (i % 5 == 0) ? kPi * (1.0 - 1e-7 * unif(rng)) : kPi * unif(rng);
        const Vec3 v = theta * axis;
        CHECK((log_so3(exp_so3(v)) - v).norm() < 1e-9);
    }
}

TEST_CASE("renormalization is idempotent and gentle") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const Rotation r = test::random_rotation(rng);
        Mat3 dirty = r.matrix();
        for (int k = 0; k < 9; ++k) {
            dirty(k / 3, k % 3) += 1e-6 * unif(rng);
        }
        const double residual =
            (dirty.transpose() * dirty - Mat3::Identity()).norm();
        const Rotation cleaned(dirty);
        CHECK(cleaned.orthogonality_residual() < 1e-12);
        // Idempotent: constructing again does not move the value.
        CHECK((Rotation(cleaned.matrix()).matrix() - cleaned.matrix()).norm() < 1e-15);
        CHECK(principal_angle(r, cleaned) <= 10.0 * residual);
    }
}

TEST_CASE("s_K vanishes exactly on the critical set") {
    const MorseWeights k(3.0, 2.0, 1.0);
    for (const Mat3& c : critical_set) {
        CHECK(s_K(Rotation(c), k).norm() == 0.0);
    }

    // No spurious zeros among 1e5 random rotations away from C.
    std::mt19937 rng(19);
    for (int i = 0; i < 100000; ++i) {
        const Rotation r = test::random_rotation(rng);
        if (s_K(r, k).norm() < 1e-6) {
            double nearest = 10.0;
            for (const Mat3& c : critical_set) {
                nearest = std::min(nearest, principal_angle(r, Rotation(c)));
            }
            CHECK(nearest < 1e-2);
        }
    }
}

TEST_CASE("Morse value and its bound on the set S") {
    const MorseWeights k(3.0, 2.0, 1.0);
    CHECK(morse_value(Rotation::identity(), k) == 0.0);
    CHECK(morse_value(Rotation(Vec3(1, -1, -1).asDiagonal()), k) == doctest::Approx(6.0));

    // s_K' s_K >= <K, I-R> on S, rejection-sampled.
    std::mt19937 rng(23);
    int accepted = 0;
    while (accepted < 10000) {
        const Rotation r = test::random_rotation(rng);
        if (!in_set_S(r)) {
            continue;
        }
        ++accepted;
        const Vec3 s = s_K(r, k);
        CHECK(s.squaredNorm() >= morse_value(r, k) - 1e-12);
    }
}

TEST_CASE("Morse derivative equals Omega' s_K to second order") {
    const MorseWeights k(3.0, 2.0, 1.0);
    std::mt19937 rng(29);
    int order_ok = 0;
    for (int i = 0; i < 50; ++i) {
        const Rotation r = test::random_rotation(rng);
        const Vec3 omega = test::random_vec3(rng);
        const double exact = omega.dot(s_K(r, k));
        auto central = [&](double h) {
            const double plus = morse_value(Rotation(r.matrix() * exp_so3(h * omega).matrix()), k);
            const double minus =
                morse_value(Rotation(r.matrix() * exp_so3(-h * omega).matrix()), k);
            return (plus - minus) / (2.0 * h);
        };
        const double err1 = std::abs(central(1e-2) - exact);
        const double err2 = std::abs(central(5e-3) - exact);
        CHECK(err1 < 1e-3 * (1.0 + std::abs(exact)));
        if (err2 > 1e-13) {
            if (std::log2(err1 / err2) >= 1.9) {
                ++order_ok;
            }
        } else {
            ++order_ok; // below roundoff; counts as converged
        }
    }
    CHECK(order_ok >= 45); // observed order >= 1.9 for nearly all samples
}

TEST_CASE("in_set_S predicate") {
    CHECK(in_set_S(Rotation::identity()));
    CHECK_FALSE(in_set_S(Rotation(Vec3(-1, 1, -1).asDiagonal())));
    CHECK(in_set_S(exp_so3(Vec3(0.3, 0, 0))));
}

TEST_CASE("h_matrix deflates the input direction") {
    CHECK((h_matrix(Vec3::UnitX(), 0.5) - Mat3(Vec3(0, 1, 1).asDiagonal())).norm() < 1e-15);
    CHECK((h_matrix(Vec3(0.3, -2, 1), 0.0) - Mat3::Identity()).norm() == 0.0);
    CHECK_THROWS_AS(h_matrix(Vec3::Zero(), 0.3), ZeroVector);

    // Eigenvalues {1-2k, 1, 1} against a numerical eigensolver.
    const double p = 1.2;
    const double k = (p - 1.0) / p;
    const Mat3 h = h_matrix(Vec3(1, 1, 0), k);
    CHECK((h - h.transpose()).norm() < 1e-15);
    Eigen::SelfAdjointEigenSolver<Mat3> eig(h);
    CHECK(eig.eigenvalues()(0) == doctest::Approx(1.0 - 2.0 * k).epsilon(1e-12));
    CHECK(eig.eigenvalues()(1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eig.eigenvalues()(2) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("principal angle is a metric on attitudes") {
    std::mt19937 rng(31);
    const Rotation r = test::random_rotation(rng);
    CHECK(principal_angle(r, r) == 0.0);
    CHECK(principal_angle(Rotation::identity(), exp_so3(Vec3(0, 0, 0.5))) ==
          doctest::Approx(0.5).epsilon(1e-12));

    for (int i = 0; i < 500; ++i) {
        const Rotation a = test::random_rotation(rng);
        const Rotation b = test::random_rotation(rng);
        const Rotation c = test::random_rotation(rng);
        CHECK(principal_angle(a, c) <=
              principal_angle(a, b) + principal_angle(b, c) + 1e-12);
    }
}
