#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fftseso/differentiator.hpp"
#include "fftseso/lyapunov.hpp"

using namespace fftseso;

namespace {

DifferentiatorGains paper_gains() {
    return DifferentiatorGains(3.0, 2.0, 6.0, HolderExponent(1.2));
}

VecN random_direction(std::mt19937& rng, Eigen::Index n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    VecN v(n);
    do {
        for (Eigen::Index i = 0; i < n; ++i) {
            v(i) = gauss(rng);
        }
    } while (v.norm() < 1e-12);
    return v / v.norm();
}

} // namespace

TEST_CASE("Lyapunov solve: substitution residual and known solution") {
    const auto g = paper_gains();
    const auto cert = solve_lyapunov_2x2(g);

    CHECK(cert.residual(g) <= 1e-12);

    // Hand solve of the 3-unknown linear system for k1=3, k2=2, Q=I.
    Eigen::Matrix2d expected;
    expected << 0.5, -0.5, -0.5, 1.0;
    CHECK((cert.P - expected).norm() < 1e-14);

    // gamma recomputation from the returned eigenvalues.
    const double g1 = g.k3 * cert.lambda_min_Q / cert.lambda_max_P;
    CHECK(std::abs(cert.gamma1 - g1) <= 1e-12);
    const double p = g.p.p;
    const double g2 = cert.lambda_min_Q * std::pow(cert.lambda_min_P, (p - 1.0) / p) /
                      cert.lambda_max_P * p / (3.0 * p - 2.0);
    CHECK(std::abs(cert.gamma2 - g2) <= 1e-12);

    // Independently computed values for the paper gains.
    CHECK(cert.lambda_max_P == doctest::Approx(1.3090169943749475).epsilon(1e-14));
    CHECK(cert.lambda_min_P == doctest::Approx(0.19098300562505255).epsilon(1e-13));
    CHECK(cert.gamma1 == doctest::Approx(4.583592135001262).epsilon(1e-13));

    // The corollary ratio condition is reported, not silently decided.
    CHECK(cert.eigenvalue_ratio() == doctest::Approx(6.854101966249686).epsilon(1e-12));
    CHECK_FALSE(cert.gamma1_meets_ratio());
}

TEST_CASE("Lyapunov solve rejects bad Q") {
    const auto g = paper_gains();
    Eigen::Matrix2d negative;
    negative << 1.0, 0.0, 0.0, -0.5;
    CHECK_THROWS_AS(solve_lyapunov_2x2(g, negative), NotSpd);

    Eigen::Matrix2d skewed;
    skewed << 1.0, 0.3, -0.3, 1.0;
    CHECK_THROWS_AS(solve_lyapunov_2x2(g, skewed), NotSpd);
}

TEST_CASE("settling-time closed forms") {
    CHECK(settling_time_fts(1.0, 0.5, 0.0) == 0.0);
    CHECK(settling_time_fts(1.0, 0.5, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(settling_time_fts(2.0, 0.5, 4.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(settling_time_fts(-1.0, 0.5, 1.0), DomainError);
    CHECK_THROWS_AS(settling_time_fts(1.0, 1.0, 1.0), DomainError);

    CHECK(settling_time_ffts(1.0, 1.0, 0.5, 0.0) == 0.0);
    CHECK(settling_time_ffts(1.0, 1.0, 0.5, 1.0) ==
          doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
    // The two-term bound beats the single-term one for large V0.
    CHECK(settling_time_ffts(1.0, 1.0, 0.5, 10.0) < settling_time_fts(1.0, 0.5, 10.0));
    CHECK_THROWS_AS(settling_time_ffts(1.0, 0.0, 0.5, 1.0), DomainError);
}

TEST_CASE("practical settling bound") {
    const PftsBound zero_eta = pfts_bound(1.0, 1.0, 0.5, 0.0, 0.5, 1.0);
    CHECK(zero_eta.residual_set_level == 0.0);

    const PftsBound b = pfts_bound(1.0, 1.0, 0.5, 0.5, 0.5, 1.0);
    CHECK(b.residual_set_level == doctest::Approx(1.0).epsilon(1e-12));

    double previous = -1.0;
    for (double eta = 0.0; eta <= 2.0; eta += 0.05) {
        const PftsBound cur = pfts_bound(2.0, 0.7, 0.7, eta, 0.4, 3.0);
        CHECK(cur.residual_set_level >= previous);
        previous = cur.residual_set_level;
    }

    CHECK_THROWS_AS(pfts_bound(1.0, 1.0, 0.5, 0.5, 1.0, 1.0), DomainError);
}

TEST_CASE("noise gap bounds dominate sampled gaps") {
    const auto g = paper_gains();
    CHECK(noise_gap_bounds(0.0, g) == std::pair<double, double>{0.0, 0.0});

    const double mu_bar = 0.1;
    const auto [bound1, bound2] = noise_gap_bounds(mu_bar, g);
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const double scale = std::pow(10.0, -3.0 + 6.0 * unif(rng));
        const VecN e1 = scale * random_direction(rng, 3);
        const VecN mu = (mu_bar * std::pow(unif(rng), 1.0 / 3.0)) * random_direction(rng, 3);
        const double gap1 = (phi1(e1, g) - phi1(VecN(e1 + mu), g)).norm();
        const double gap2 = (phi2(e1, g) - phi2(VecN(e1 + mu), g)).norm();
        CHECK(gap1 <= bound1 + 1e-12);
        CHECK(gap2 <= bound2 + 1e-12);
    }
}

TEST_CASE("noise gap function: symmetry and maximizer") {
    std::mt19937 rng(73);
    VecN mu(3);
    mu << 0.4, -0.2, 0.7;
    const double alpha = 0.3;

    // mu = 0 makes Y vanish identically.
    VecN x(3);
    x << 1.0, 2.0, -0.5;
    CHECK(noise_gap_function(x, VecN::Zero(3), alpha) == 0.0);

    CHECK_THROWS_AS(noise_gap_function(VecN::Zero(3), mu, alpha), DomainError);
    CHECK_THROWS_AS(noise_gap_function(VecN(-mu), mu, alpha), DomainError);
    CHECK_THROWS_AS(noise_gap_function(x, mu, 0.7), DomainError);

    // Reflection through -mu/2 leaves the value unchanged.
    for (int i = 0; i < 300; ++i) {
        const VecN sample = random_direction(rng, 3) * 2.0;
        const VecN mirrored = -mu - sample;
        const double a = noise_gap_function(sample, mu, alpha);
        const double b = noise_gap_function(mirrored, mu, alpha);
        CHECK(a == doctest::Approx(b).epsilon(1e-10));
    }

    // -mu/2 dominates random samples.
    const double peak = noise_gap_function(VecN(-0.5 * mu), mu, alpha);
    for (int i = 0; i < 10000; ++i) {
        const VecN sample = random_direction(rng, 3) * std::pow(10.0, -2.0 + 4.0 * (i / 9999.0));
        CHECK(noise_gap_function(sample, mu, alpha) <= peak * (1.0 + 1e-12));
    }
}

TEST_CASE("grid argmax oracle finds -mu/2") {
    VecN mu(3);
    mu << 1.0, 0.0, 0.0;
    GridSpec grid;
    grid.step = 1e-3;
    const VecN found = noise_gap_argmax_oracle(mu, 0.3, grid);
    CHECK((found - VecN(-0.5 * mu)).norm() <= 2e-3);

    // Along c1 = -1/2 the value decreases as |c2| grows.
    double prev = noise_gap_function(VecN(-0.5 * mu), mu, 0.3);
    VecN nu(3);
    nu << 0.0, 1.0, 0.0;
    for (double c2 = 0.05; c2 <= 1.0; c2 += 0.05) {
        const double cur = noise_gap_function(VecN(-0.5 * mu + c2 * nu), mu, 0.3);
        CHECK(cur < prev);
        prev = cur;
    }

    // Doubling the resolution roughly halves the located-argmax error.
    GridSpec coarse;
    coarse.step = 4e-3;
    // Offset the window so the true maximizer is one third of a cell off the
    // lattice at both resolutions.
    coarse.c1_min = -0.5 - coarse.step * (250.0 + 1.0 / 3.0);
    coarse.c1_max = coarse.c1_min + 500.0 * coarse.step;
    coarse.c2_min = -coarse.step * (250.0 + 1.0 / 3.0);
    coarse.c2_max = coarse.c2_min + 500.0 * coarse.step;
    GridSpec fine = coarse;
    fine.step = coarse.step / 2.0;
    fine.c1_min = -0.5 - fine.step * (500.0 + 1.0 / 3.0);
    fine.c1_max = fine.c1_min + 1000.0 * fine.step;
    fine.c2_min = -fine.step * (500.0 + 1.0 / 3.0);
    fine.c2_max = fine.c2_min + 1000.0 * fine.step;

    const double err_coarse = (noise_gap_argmax_oracle(mu, 0.3, coarse) - VecN(-0.5 * mu)).norm();
    const double err_fine = (noise_gap_argmax_oracle(mu, 0.3, fine) - VecN(-0.5 * mu)).norm();
    CHECK(err_fine <= 0.65 * err_coarse);
}
