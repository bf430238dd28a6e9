#include <gtest/gtest.h>

#include "support.hpp"

using namespace udw;
using namespace udw::test;

namespace {

const QuadratureOptions<long double> kTight{1e-17L, 1e-14L, 4000};

double closed_delta(double la, double lb, double L, double d) {
    return commutator_closed(SmearingSpec{la}, SmearingSpec{lb}, PairGeometry{L, d});
}

}  // namespace

TEST(NormSq, ClosedFormExamples) {
    EXPECT_EQ(norm_sq_closed(SmearingSpec{0.0}), 0.0);
    EXPECT_NEAR(norm_sq_closed(SmearingSpec{1.0}), kNormUnitCoupling, 1e-16);
    EXPECT_NEAR(norm_sq_closed(SmearingSpec{1.0}), 1.0 / (4.0 * kPi * kPi), 1e-16);
}

TEST(NormSq, QuadratureMatchesClosedForm) {
    const SmearingSpec f{1.0};
    const double q = norm_sq_quadrature(f, FieldStateSpec::vacuum());
    EXPECT_NEAR(q / norm_sq_closed(f), 1.0, 1e-8);
    EXPECT_EQ(norm_sq_quadrature(SmearingSpec{0.0}, FieldStateSpec::vacuum()), 0.0);
}

TEST(NormSq, ThermalExceedsVacuum) {
    const SmearingSpec f{1.0};
    const double thermal = norm_sq_quadrature(f, FieldStateSpec::thermal(1.0));
    EXPECT_GT(thermal, norm_sq_closed(f));
    EXPECT_NEAR(thermal, 0.06854718659287752, 1e-9);
}

TEST(NormSq, ScalesQuadraticallyInCoupling) {
    const double base = norm_sq_closed(SmearingSpec{0.7});
    EXPECT_NEAR(norm_sq_closed(SmearingSpec{2.1}), 9.0 * base, 1e-15);
}

TEST(Commutator, Examples) {
    EXPECT_EQ(closed_delta(1.0, 1.0, 6.0, 0.0), 0.0);
    EXPECT_EQ(closed_delta(1.0, 1.0, 3.0, 0.0), 0.0);
    EXPECT_NEAR(closed_delta(1.0, 1.0, 6.0, 6.0), kDeltaUnit, 1e-16);
    EXPECT_NEAR(2.0 * closed_delta(kLambdaAQuarterTurn, 0.3, 6.0, 6.0), kPi / 2.0, 1e-12);
}

TEST(Commutator, AntisymmetricBitForBit) {
    for (double L : {0.0, 0.5, 1.0, 6.0, 10.0})
        for (double d : {0.1, 1.0, 3.0, 6.0, 12.0, 40.0})
            EXPECT_EQ(closed_delta(1.3, 0.7, L, d), -closed_delta(1.3, 0.7, L, -d)) << L << ' ' << d;
}

TEST(Commutator, BilinearInCouplings) {
    const double base = closed_delta(1.0, 1.0, 3.0, 4.0);
    EXPECT_NEAR(closed_delta(3.0, 1.0, 3.0, 4.0), 3.0 * base, 1e-15 * 3.0);
    EXPECT_NEAR(closed_delta(1.0, 0.25, 3.0, 4.0), 0.25 * base, 1e-16);
}

TEST(Commutator, CausalDecayAwayFromLightCone) {
    // Away from |dtau| = L the commutator falls off like a Gaussian in dtau - L.
    const double L = 6.0;
    const double on_cone = closed_delta(1.0, 1.0, L, L);
    for (double off : {3.0, 5.0, 8.0}) {
        const double ratio = closed_delta(1.0, 1.0, L, L + off) / on_cone;
        const double bracket = -std::expm1(-2.0 * (L + off) * L) / -std::expm1(-2.0 * L * L);
        EXPECT_NEAR(ratio / (std::exp(-off * off / 2.0) * bracket), 1.0, 1e-12);
    }
    EXPECT_LT(std::abs(closed_delta(1.0, 1.0, 1.0, 12.0)), 1e-20);
}

TEST(Commutator, ZeroSeparationLimitMatchesQuadrature) {
    const SmearingSpec f{1.0};
    for (double d : {0.5, 2.0, 5.0}) {
        const PairGeometry g{0.0, d};
        const auto w = wightman_cross_quadrature<long double>(f, f, g, FieldStateSpec::vacuum(), kTight);
        EXPECT_NEAR(static_cast<double>(-2.0L * w.imag()) / commutator_closed(f, f, g), 1.0, 1e-9);
    }
    EXPECT_NEAR(commutator_closed(f, f, PairGeometry{0.0, 2.0}), 0.017185858405765742, 1e-15);
    // Continuity of the L -> 0 limit.
    EXPECT_NEAR(closed_delta(1.0, 1.0, 1e-7, 2.0), closed_delta(1.0, 1.0, 0.0, 2.0), 1e-12);
}

TEST(Wightman, DegenerateGeometryEqualsNorm) {
    const SmearingSpec f{1.0};
    const auto w = wightman_cross_quadrature(f, f, PairGeometry{0.0, 0.0}, FieldStateSpec::vacuum());
    EXPECT_NEAR(w.real() / norm_sq_closed(f), 1.0, 1e-8);
    EXPECT_EQ(w.imag(), 0.0);
}

TEST(Wightman, ImaginaryPartIsMinusHalfCommutator) {
    const SmearingSpec f{1.0};
    const PairGeometry g{6.0, 6.0};
    const auto w = wightman_cross_quadrature(f, f, g, FieldStateSpec::vacuum());
    EXPECT_NEAR(w.imag(), -2.6455681639267e-3, 1e-12);
    EXPECT_NEAR(w.real(), kReWUnit, 1e-12);
    EXPECT_NEAR(-2.0 * w.imag() / commutator_closed(f, f, g), 1.0, 1e-8);
}

TEST(Wightman, ThermalLargeBetaApproachesVacuum) {
    const SmearingSpec f{1.0};
    const PairGeometry g{3.0, 2.0};
    const auto vac = wightman_cross_quadrature(f, f, g, FieldStateSpec::vacuum());
    const auto hot = wightman_cross_quadrature(f, f, g, FieldStateSpec::thermal(1e4));
    EXPECT_NEAR(hot.real() / vac.real(), 1.0, 1e-6);
    EXPECT_EQ(hot.imag(), vac.imag());
}

TEST(Wightman, OracleGridAgreesWithClosedForms) {
    for (double la : {0.1, 1.0, 10.0})
        for (double lb : {0.1, 1.0, 10.0})
            for (double L : {1.0, 3.0, 6.0, 10.0})
                for (double d : {0.0, 3.0, 6.0, 12.0}) {
                    const SmearingSpec a{la}, b{lb};
                    const PairGeometry g{L, d};
                    const auto w = wightman_cross_quadrature<long double>(a, b, g, FieldStateSpec::vacuum(), kTight);
                    const double closed = commutator_closed(a, b, g);
                    const double quad = static_cast<double>(-2.0L * w.imag());
                    EXPECT_LT(std::abs(closed - quad) / std::max(std::abs(closed), 1e-12), 1e-6)
                        << la << ' ' << lb << ' ' << L << ' ' << d;
                }
}

TEST(Wightman, QuadratureFailureCarriesErrorEstimate) {
    QuadratureOptions<double> starved{1e-30, 1e-30, 3};
    try {
        (void)wightman_cross_quadrature(SmearingSpec{1.0}, SmearingSpec{1.0}, PairGeometry{6.0, 6.0},
                                        FieldStateSpec::vacuum(), starved);
        FAIL() << "expected NumericFailure";
    } catch (const NumericFailure& e) {
        EXPECT_GT(e.error_estimate(), 0.0);
    }
}

TEST(Statistics, ZeroCouplingIsTrivial) {
    const FieldStatistics s = vacuum_stats(0.0, 0.0);
    EXPECT_EQ(s.nu_a, 1.0);
    EXPECT_EQ(s.nu_b, 1.0);
    EXPECT_EQ(s.nu_ab_plus, 1.0);
    EXPECT_EQ(s.nu_ab_minus, 1.0);
    EXPECT_EQ(s.delta_ab, 0.0);
}

TEST(Statistics, UnitCouplingNu) {
    const FieldStatistics s = vacuum_stats(1.0, 1.0);
    EXPECT_NEAR(s.nu_b, kNuUnitCoupling, 1e-15);
    EXPECT_NEAR(s.nu_b, std::exp(-1.0 / (2.0 * kPi * kPi)), 1e-15);
    EXPECT_NEAR(s.delta_ab, kDeltaUnit, 1e-16);
}

TEST(Statistics, ProductOfCrossFactors) {
    for (auto [la, lb, L, d] : {std::tuple{1.0, 1.0, 6.0, 6.0}, std::tuple{2.0, 0.5, 1.0, 0.0},
                                std::tuple{3.0, 3.0, 0.5, 1.0}}) {
        const FieldStatistics s = vacuum_stats(la, lb, L, d);
        const double nn = s.nu_a * s.nu_b;
        EXPECT_NEAR(s.nu_ab_plus * s.nu_ab_minus, nn * nn, 1e-14);
        const double re_w = wightman_cross_quadrature(SmearingSpec{la}, SmearingSpec{lb}, PairGeometry{L, d},
                                                      FieldStateSpec::vacuum())
                                .real();
        EXPECT_NEAR(s.nu_ab_plus, nn * std::exp(-4.0 * re_w), 1e-14);
    }
}

TEST(Statistics, ThermalChangesNuNotDelta) {
    const SmearingSpec a{1.0}, b{1.0};
    const PairGeometry g{6.0, 6.0};
    const FieldStatistics vac = assemble_statistics(a, b, g, FieldStateSpec::vacuum());
    const FieldStatistics hot = assemble_statistics(a, b, g, FieldStateSpec::thermal(1.0));
    EXPECT_LT(hot.nu_b, vac.nu_b);
    EXPECT_NEAR(hot.delta_ab / vac.delta_ab, 1.0, 1e-8);
}

TEST(Statistics, DerivesGeometryFromDetectors) {
    SmearingSpec a{1.0}, b{1.0};
    b.position = Vector3d{0.0, 6.0, 0.0};
    b.switch_time = 6.0;
    const FieldStatistics s = assemble_statistics(a, b, FieldStateSpec::vacuum());
    EXPECT_NEAR(s.delta_ab, kDeltaUnit, 1e-16);
}

TEST(Statistics, StrongCouplingUnderflowsToZero) {
    const FieldStatistics s = vacuum_stats(1000.0, 1000.0);
    EXPECT_EQ(s.nu_a, 0.0);
    EXPECT_NO_THROW(s.validate());
}

TEST(Validation, RejectsBadInputs) {
    EXPECT_THROW(SmearingSpec{-1.0}.validate(), DomainError);
    EXPECT_THROW((PairGeometry{-1.0, 0.0}.validate()), DomainError);
    EXPECT_THROW(FieldStateSpec::thermal(0.0).validate(), DomainError);
    EXPECT_THROW((FieldStatistics{1.5, 1.0, 1.0, 1.0, 0.0}.validate()), DomainError);
}
