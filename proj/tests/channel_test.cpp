#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "support.hpp"

using namespace udw;
using namespace udw::test;

namespace {

// Bob's output assembled directly from the operator expression, independent of
// the explicit matrix elements used by the library.
Matrix2cd composed_output(const ChannelParams& p, const QubitState& alice) {
    const CombinedCoefficients c = combined_coefficients(p.stats);
    const std::complex<double> e = std::polar(1.0, p.phase_b);
    Matrix2cd mu;
    mu << 0.0, e, std::conj(e), 0.0;
    const Matrix2cd rho = p.bob_initial.density();
    const double th = alice.x() * std::cos(p.phase_a) + alice.y() * std::sin(p.phase_a);
    return c.keep * rho + c.flip * mu * rho * mu + c.comm * th * (mu * rho - rho * mu);
}

Eigen::Vector2d spectrum(const Matrix2cd& m) {
    return Eigen::SelfAdjointEigenSolver<Matrix2cd>(m, Eigen::EigenvaluesOnly).eigenvalues();
}

}  // namespace

TEST(Theta, Examples) {
    EXPECT_EQ(theta(QubitState{1.0, 0.0, 0.0}, 0.0), 1.0);
    EXPECT_EQ(theta(QubitState{0.0, 0.0, 1.0}, 1.234), 0.0);
    const double phi = 0.7;
    EXPECT_NEAR(theta(QubitState{std::cos(phi), std::sin(phi), 0.0}, phi), 1.0, 1e-15);
}

TEST(Channel, ZeroCouplingLeavesBobUntouched) {
    const ChannelParams p{FieldStatistics{}, 0.4, 1.9, QubitState{0.3, -0.2, 0.5}};
    const ChannelOutput out = apply(p, QubitState{1.0, 0.0, 0.0});
    EXPECT_EQ(out.state().bloch, p.bob_initial.bloch);
}

TEST(Channel, BobUpAlignedInputEigenvalues) {
    const FieldStatistics s{0.8, 0.9, 0.7, 0.75, 0.6};
    const ChannelParams p{s, 0.3, 0.0, QubitState{0.0, 0.0, 1.0}};
    const auto [pp, pm] = eigenvalues_analytic(p, QubitState{std::cos(0.3), std::sin(0.3), 0.0});
    EXPECT_NEAR(pp, 0.5 + s.nu_b / 2.0, 1e-12);
    EXPECT_NEAR(pm, 0.5 - s.nu_b / 2.0, 1e-12);
}

TEST(Channel, NoSignalIsDiagonal) {
    const FieldStatistics s{0.8, 0.9, 0.7, 0.75, 0.0};
    const ChannelOutput out = apply(ChannelParams{s, 0.0, 0.5, QubitState{0.0, 0.0, 1.0}}, QubitState{1.0, 0.0, 0.0});
    EXPECT_EQ(out.r12, std::complex<double>(0.0));
    EXPECT_NEAR(out.r11, (1.0 + s.nu_b) / 2.0, 1e-15);
}

TEST(Channel, EigenvalueBoundsForPureAndMixedBob) {
    std::mt19937_64 rng(3);
    for (int n = 0; n < 200; ++n) {
        ChannelParams p = random_params(rng);
        const QubitState alice = random_state(rng);
        p.bob_initial = QubitState{0.0, 0.0, 1.0};
        EXPECT_LE(eigenvalues_analytic(p, alice).first, 0.5 + p.stats.nu_b / 2.0 + 1e-12);
        p.bob_initial = QubitState::maximally_mixed();
        const auto [pp, pm] = eigenvalues_analytic(p, alice);
        EXPECT_NEAR(pp, 0.5, 1e-15);
        EXPECT_NEAR(pm, 0.5, 1e-15);
    }
}

TEST(Channel, MatchesOperatorComposition) {
    std::mt19937_64 rng(5);
    for (int n = 0; n < 1000; ++n) {
        const ChannelParams p = random_params(rng);
        const QubitState alice = random_state(rng);
        const Matrix2cd expected = composed_output(p, alice);
        EXPECT_LT((apply(p, alice).rho() - expected).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Channel, TracePositivityAndSpectrum) {
    std::mt19937_64 rng(9);
    for (int n = 0; n < 1000; ++n) {
        ChannelParams p = random_params(rng);
        if (n % 4 == 0) {
            p.stats.nu_b = 1.0;
            p.bob_initial = QubitState{p.bob_initial.bloch.normalized()};
        }
        const QubitState alice = random_state(rng);
        const ChannelOutput out = apply(p, alice);
        const Matrix2cd rho = out.rho();
        EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
        EXPECT_EQ(rho.trace().imag(), 0.0);
        const Eigen::Vector2d ev = spectrum(rho);
        EXPECT_GE(ev(0), -1e-12);
        const auto [pp, pm] = eigenvalues_analytic(p, alice);
        EXPECT_NEAR(pp, ev(1), 1e-12);
        EXPECT_NEAR(pm, ev(0), 1e-12);
        EXPECT_NEAR(out.p_plus + out.p_minus, 1.0, 1e-15);
    }
}

TEST(Channel, FactorsThroughTheta) {
    std::mt19937_64 rng(13);
    for (int n = 0; n < 100; ++n) {
        ChannelParams p = random_params(rng);
        p.phase_a = 0.0;
        // Same x and y, different z: identical theta.
        const QubitState a{0.3, -0.4, 0.8};
        const QubitState b{0.3, -0.4, -0.2};
        const ChannelOutput oa = apply(p, a);
        const ChannelOutput ob = apply(p, b);
        EXPECT_EQ(oa.r11, ob.r11);
        EXPECT_EQ(oa.r12, ob.r12);
        EXPECT_EQ(oa.r22, ob.r22);
    }
}

TEST(Channel, NoSignalIgnoresAlice) {
    std::mt19937_64 rng(17);
    for (int n = 0; n < 100; ++n) {
        ChannelParams p = random_params(rng);
        p.stats.delta_ab = 0.0;
        const ChannelOutput oa = apply(p, random_state(rng));
        const ChannelOutput ob = apply(p, random_state(rng));
        EXPECT_EQ(oa.r11, ob.r11);
        EXPECT_EQ(oa.r12, ob.r12);
    }
}

TEST(Choi, ZeroCouplingIsProductWithMixedReference) {
    const QubitState bob{0.2, 0.1, -0.6};
    const Matrix4cd choi = choi_matrix(ChannelParams{FieldStatistics{}, 0.0, 0.0, bob});
    const Matrix2cd rho = bob.density();
    Matrix4cd expected = Matrix4cd::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) expected(2 * i + k, 2 * j + k) = rho(i, j) / 2.0;
    EXPECT_LT((choi - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Choi, TraceOnePositiveAndPpt) {
    std::mt19937_64 rng(19);
    for (int n = 0; n < 1000; ++n) {
        ChannelParams p = random_params(rng);
        if (n % 4 == 0) {
            p.stats.nu_b = 1.0;
            p.bob_initial = QubitState{p.bob_initial.bloch.normalized()};
        }
        const Matrix4cd choi = choi_matrix(p);
        EXPECT_NEAR(choi.trace().real(), 1.0, 1e-12);
        using Solver = Eigen::SelfAdjointEigenSolver<Matrix4cd>;
        EXPECT_GE(Solver(choi, Eigen::EigenvaluesOnly).eigenvalues()(0), -1e-12);
        EXPECT_GE(Solver(partial_transpose_second(choi), Eigen::EigenvaluesOnly).eigenvalues()(0), -1e-10);
    }
}

TEST(Choi, ReproducesChannelAction) {
    // E(rho) = 2 tr_ref[(1 x rho^T) J].
    std::mt19937_64 rng(23);
    const ChannelParams p = random_params(rng);
    const QubitState alice = random_state(rng);
    const Matrix4cd choi = choi_matrix(p);
    const Matrix2cd rho_t = alice.density().transpose();
    Matrix2cd out = Matrix2cd::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) out(i, j) += 2.0 * choi(2 * i + k, 2 * j + l) * rho_t(l, k);
    EXPECT_LT((out - apply(p, alice).rho()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Channel, InconsistentCoefficientsAreReported) {
    const FieldStatistics s{0.9, 0.9, 0.9, 0.9, 0.4};
    GammaSet bad = gammas_from_statistics(s);
    bad.combined.keep = 1.4;
    bad.combined.flip = -0.4;
    const QubitChannel channel(ChannelParams{s, 0.0, 0.0, QubitState{0.0, 0.0, 1.0}}, bad);
    EXPECT_THROW(channel.apply(QubitState{1.0, 0.0, 0.0}), ConsistencyError);
}

TEST(Channel, RejectsInvalidStates) {
    EXPECT_THROW(apply(ChannelParams{}, QubitState{1.0, 1.0, 0.0}), DomainError);
    EXPECT_THROW(apply(ChannelParams{FieldStatistics{}, 0.0, 0.0, QubitState{0.0, 0.0, 1.1}}, QubitState{}),
                 DomainError);
}
