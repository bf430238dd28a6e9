#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "udw/capacity.hpp"

namespace udw::test {

inline constexpr double kPi = std::numbers::pi;

// Frozen with 40-digit mpmath evaluations of the closed forms.
inline constexpr double kNormUnitCoupling = 0.025330295910584443;   // 1/(4 pi^2)
inline constexpr double kNuUnitCoupling = 0.9506012576266267;       // exp(-1/(2 pi^2))
inline constexpr double kDeltaUnit = 5.291136327853414e-3;          // lambda = 1, L = dtau = 6
inline constexpr double kReWUnit = 1.771527727636387e-4;
inline constexpr double kLambdaAQuarterTurn = 494.78858902386296;   // 2 Delta = pi/2 at lambda_B = 0.3
inline constexpr double kNuB03 = 0.9954509252636658;
inline constexpr double kCornerCapacity = 0.9767513526009309;

inline FieldStatistics vacuum_stats(double lambda_a, double lambda_b, double L = 6.0, double dtau = 6.0) {
    return assemble_statistics(SmearingSpec{lambda_a}, SmearingSpec{lambda_b}, PairGeometry{L, dtau},
                               FieldStateSpec::vacuum());
}

inline FieldStatistics random_statistics(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> delta(-5.0, 5.0);
    return {1.0 - unit(rng), 1.0 - unit(rng), 1.0 - unit(rng), 1.0 - unit(rng), delta(rng)};
}

inline QubitState random_state(std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Vector3d dir{normal(rng), normal(rng), normal(rng)};
    return QubitState{std::cbrt(unit(rng)) * dir.normalized()};
}

inline ChannelParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    ChannelParams p{random_statistics(rng), phase(rng), phase(rng), random_state(rng)};
    return p;
}

}  // namespace udw::test
