// field_backend.hpp: smeared correlators of a massless scalar field in (3+1)-d Minkowski space
//
// Every length and time is measured in units of the Gaussian detector width
// sigma, so sigma == 1 internally and all inputs are dimensionless ratios.
// A detector is delta-switched at tau_0 with a normalized Gaussian spatial
// profile; "coupling" is the effective strength lambda * eta / sigma.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "udw/quadrature.hpp"
#include "udw/types.hpp"

namespace udw {

struct SmearingSpec {
    double coupling{0.0};                        // lambda~ / sigma
    Vector3d position{Vector3d::Zero()};         // x_j / sigma
    double switch_time{0.0};                     // tau_{j,0} / sigma
    double gap{0.0};                             // Omega_j * sigma

    static constexpr double width = 1.0;

    double phase() const { return gap * switch_time; }
    void validate() const;
};

struct PairGeometry {
    double separation{0.0};  // L = |x_A - x_B|
    double delay{0.0};       // tau_{B,0} - tau_{A,0}

    static PairGeometry between(const SmearingSpec& alice, const SmearingSpec& bob);
    void validate() const;
};

enum class FieldStateKind { MinkowskiVacuum, MinkowskiThermal };

struct FieldStateSpec {
    FieldStateKind kind{FieldStateKind::MinkowskiVacuum};
    double beta{0.0};  // inverse KMS temperature, thermal only

    static FieldStateSpec vacuum() { return {}; }
    static FieldStateSpec thermal(double beta) { return {FieldStateKind::MinkowskiThermal, beta}; }
    bool is_thermal() const { return kind == FieldStateKind::MinkowskiThermal; }
    void validate() const;
};

// The five field scalars that fully determine the two-detector channel.
struct FieldStatistics {
    double nu_a{1.0};
    double nu_b{1.0};
    double nu_ab_plus{1.0};
    double nu_ab_minus{1.0};
    double delta_ab{0.0};

    void validate() const;
};

// Upper limit of the radial momentum integrals; the Gaussian factor
// exp(-k^2/2) is below 1e-300 beyond it.
inline constexpr double kMomentumCutoff = 40.0;

// ||E f||^2 = W(f, f) in the vacuum.
double norm_sq_closed(const SmearingSpec& f);

// Smeared causal propagator Delta(f_A, f_B) in the vacuum (state independent).
// L == 0 evaluates the analytic limit of the bracket divided by L.
double commutator_closed(const SmearingSpec& f_a, const SmearingSpec& f_b, const PairGeometry& geom);

namespace detail {

// sin(kL)/L with its L -> 0 limit k.
template <typename Scalar>
Scalar radial_kernel(Scalar k, Scalar separation) {
    using std::sin;
    return separation > 0 ? sin(k * separation) / separation : k;
}

// sin(kL)/L * coth(beta k / 2), finite at k = 0 where it tends to 2/beta.
template <typename Scalar>
Scalar thermal_radial_kernel(Scalar k, Scalar separation, Scalar beta) {
    using std::sin;
    using std::tanh;
    if (k == 0) return 2 / beta;
    const Scalar shape = separation > 0 ? sin(k * separation) / (k * separation) : Scalar(1);
    return shape * k / tanh(beta * k / 2);
}

}  // namespace detail

// W(f_A, f_B) reduced to radial momentum integrals on [0, kMomentumCutoff]:
//   Re W = c_A c_B/(4 pi^2) int dk e^{-k^2/2} sin(kL)/L cos(k dtau) [coth(beta k/2)]
//   Im W = -c_A c_B/(4 pi^2) int dk e^{-k^2/2} sin(kL)/L sin(k dtau)
// so that Im W = -Delta/2. The thermal kernel only dresses the symmetric part.
template <typename Scalar = double>
std::complex<Scalar> wightman_cross_quadrature(const SmearingSpec& f_a, const SmearingSpec& f_b,
                                               const PairGeometry& geom, const FieldStateSpec& state,
                                               const QuadratureOptions<Scalar>& opts = {}) {
    using std::cos;
    using std::exp;
    using std::sin;
    f_a.validate();
    f_b.validate();
    geom.validate();
    state.validate();
    const Scalar pi = std::numbers::pi_v<Scalar>;
    const Scalar prefactor = static_cast<Scalar>(f_a.coupling) * static_cast<Scalar>(f_b.coupling) / (4 * pi * pi);
    if (prefactor == 0) return {0, 0};
    const Scalar sep = static_cast<Scalar>(geom.separation);
    const Scalar delay = static_cast<Scalar>(geom.delay);
    const Scalar beta = static_cast<Scalar>(state.beta);
    const bool thermal = state.is_thermal();

    auto symmetric = [&](Scalar k) {
        const Scalar radial = thermal ? detail::thermal_radial_kernel(k, sep, beta) : detail::radial_kernel(k, sep);
        return exp(-k * k / 2) * radial * cos(k * delay);
    };
    auto antisymmetric = [&](Scalar k) {
        return -exp(-k * k / 2) * detail::radial_kernel(k, sep) * sin(k * delay);
    };
    const Scalar cutoff = static_cast<Scalar>(kMomentumCutoff);
    const Scalar re = integrate_adaptive<Scalar>(symmetric, Scalar(0), cutoff, opts).value;
    const Scalar im = delay == 0 ? Scalar(0) : integrate_adaptive<Scalar>(antisymmetric, Scalar(0), cutoff, opts).value;
    return {prefactor * re, prefactor * im};
}

// ||E f||^2 by quadrature, in either field state.
template <typename Scalar = double>
Scalar norm_sq_quadrature(const SmearingSpec& f, const FieldStateSpec& state,
                          const QuadratureOptions<Scalar>& opts = {}) {
    return wightman_cross_quadrature<Scalar>(f, f, PairGeometry{}, state, opts).real();
}

// nu_j = exp(-2||Ef_j||^2), nu_AB^pm = exp(-2||E(f_A pm f_B)||^2) and Delta_AB.
// Vacuum norms and Delta use the closed forms; Re W(f_A, f_B) always comes
// from quadrature. Thermal states take every correlator from quadrature.
FieldStatistics assemble_statistics(const SmearingSpec& f_a, const SmearingSpec& f_b, const PairGeometry& geom,
                                    const FieldStateSpec& state, const QuadratureOptions<double>& opts = {});

inline FieldStatistics assemble_statistics(const SmearingSpec& f_a, const SmearingSpec& f_b,
                                           const FieldStateSpec& state) {
    return assemble_statistics(f_a, f_b, PairGeometry::between(f_a, f_b), state);
}

}  // namespace udw
