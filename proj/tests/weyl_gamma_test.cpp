#include <gtest/gtest.h>

#include "support.hpp"
#include "udw/sweep.hpp"

using namespace udw;
using namespace udw::test;

TEST(Gammas, ZeroCouplingIsIdentity) {
    const GammaSet g = gammas_from_statistics(FieldStatistics{});
    EXPECT_DOUBLE_EQ(g.raw.cccc, 1.0);
    EXPECT_NEAR(g.raw.ssss, 0.0, 1e-16);
    EXPECT_NEAR(g.raw.cssc, 0.0, 1e-16);
    EXPECT_NEAR(g.raw.sccs, 0.0, 1e-16);
    EXPECT_EQ(g.raw.scsc, std::complex<double>(0.0));
    EXPECT_EQ(g.raw.sscc, std::complex<double>(0.0));
}

TEST(Gammas, CommutatorCoefficientExample) {
    const double e = std::exp(-1.0);
    const GammaSet g = gammas_from_statistics(FieldStatistics{e, e, e, e, kPi / 4.0});
    const std::complex<double> comm = g.raw.scsc - g.raw.sscc;
    EXPECT_NEAR(comm.real(), 0.0, 1e-16);
    EXPECT_NEAR(comm.imag(), -0.18393972058572116, 1e-15);
    EXPECT_NEAR(comm.imag(), -e / 2.0, 1e-15);
}

TEST(Gammas, RandomStatisticsSatisfyIdentities) {
    std::mt19937_64 rng(7);
    for (int n = 0; n < 1000; ++n) {
        const FieldStatistics s = random_statistics(rng);
        const GammaSet g = gammas_from_statistics(s);
        const auto& c = g.combined;
        EXPECT_NEAR(c.keep + c.flip, 1.0, 1e-12);
        EXPECT_NEAR(c.keep - c.flip, s.nu_b * std::cos(2.0 * s.delta_ab), 1e-12);
        EXPECT_EQ(c.comm.real(), 0.0);
        EXPECT_NEAR(c.comm.imag(), -s.nu_b / 2.0 * std::sin(2.0 * s.delta_ab), 1e-12);
        EXPECT_NEAR(g.raw.cccc + g.raw.ssss + g.raw.cssc + g.raw.sccs, 1.0, 1e-12);
        EXPECT_GE(c.keep, 0.0);
        EXPECT_LE(c.keep, 1.0);
    }
}

TEST(Gammas, CombinedDependOnlyOnNuBAndDelta) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int n = 0; n < 200; ++n) {
        FieldStatistics s = random_statistics(rng);
        const CombinedCoefficients base = gammas_from_statistics(s).combined;
        s.nu_a = 1.0 - unit(rng);
        s.nu_ab_plus = 1.0 - unit(rng);
        s.nu_ab_minus = 1.0 - unit(rng);
        const CombinedCoefficients moved = gammas_from_statistics(s).combined;
        EXPECT_EQ(base.keep, moved.keep);
        EXPECT_EQ(base.flip, moved.flip);
        EXPECT_EQ(base.comm, moved.comm);
    }
}

TEST(Gammas, CorruptedFormulaIsCaught) {
    const FieldStatistics s{0.9, 0.8, 0.7, 0.6, 0.3};
    EXPECT_THROW(checked_gammas(corrupted_gammas(s), s), ConsistencyError);
    EXPECT_NO_THROW(checked_gammas(raw_gammas(s), s));
}
