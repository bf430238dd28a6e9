#include "udw/field_backend.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace udw {

namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

void require_unit_interval(double v, const char* what) {
    // nu underflows to exactly 0 for very strong couplings; accept the closed end.
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError(std::string(what) + " must lie in [0, 1], got " + std::to_string(v));
}

}  // namespace

void SmearingSpec::validate() const {
    require_finite(coupling, "coupling");
    if (coupling < 0) throw DomainError("coupling must be non-negative");
    for (int i = 0; i < 3; ++i) require_finite(position[i], "position");
    require_finite(switch_time, "switch_time");
    require_finite(gap, "gap");
}

PairGeometry PairGeometry::between(const SmearingSpec& alice, const SmearingSpec& bob) {
    return {(alice.position - bob.position).norm(), bob.switch_time - alice.switch_time};
}

void PairGeometry::validate() const {
    require_finite(separation, "separation");
    require_finite(delay, "delay");
    if (separation < 0) throw DomainError("separation must be non-negative");
}

void FieldStateSpec::validate() const {
    if (is_thermal() && !(beta > 0)) throw DomainError("thermal state requires beta > 0");
}

void FieldStatistics::validate() const {
    require_unit_interval(nu_a, "nu_a");
    require_unit_interval(nu_b, "nu_b");
    require_unit_interval(nu_ab_plus, "nu_ab_plus");
    require_unit_interval(nu_ab_minus, "nu_ab_minus");
    require_finite(delta_ab, "delta_ab");
}

double norm_sq_closed(const SmearingSpec& f) {
    f.validate();
    return f.coupling * f.coupling / (4.0 * kPi * kPi);
}

double commutator_closed(const SmearingSpec& f_a, const SmearingSpec& f_b, const PairGeometry& geom) {
    f_a.validate();
    f_b.validate();
    geom.validate();
    const double prefactor = f_a.coupling * f_b.coupling / (4.0 * kPi * kPi) * std::sqrt(kPi / 2.0);
    const double d = std::abs(geom.delay);
    const double sign = geom.delay < 0 ? -1.0 : 1.0;
    const double L = geom.separation;
    // [e^{-(d-L)^2/2} - e^{-(d+L)^2/2}] / L = e^{-(|d|-L)^2/2} (1 - e^{-2|d|L}) / L, odd in d.
    double bracket_over_l = 0.0;
    if (L > 0)
        bracket_over_l = std::exp(-(d - L) * (d - L) / 2.0) * -std::expm1(-2.0 * d * L) / L;
    else
        bracket_over_l = 2.0 * d * std::exp(-d * d / 2.0);
    return sign * prefactor * bracket_over_l;
}

FieldStatistics assemble_statistics(const SmearingSpec& f_a, const SmearingSpec& f_b, const PairGeometry& geom,
                                    const FieldStateSpec& state, const QuadratureOptions<double>& opts) {
    state.validate();
    double norm_a = 0.0;
    double norm_b = 0.0;
    double delta = 0.0;
    const std::complex<double> cross = wightman_cross_quadrature<double>(f_a, f_b, geom, state, opts);
    if (state.is_thermal()) {
        norm_a = norm_sq_quadrature<double>(f_a, state, opts);
        norm_b = norm_sq_quadrature<double>(f_b, state, opts);
        delta = -2.0 * cross.imag();
    } else {
        norm_a = norm_sq_closed(f_a);
        norm_b = norm_sq_closed(f_b);
        delta = commutator_closed(f_a, f_b, geom);
    }
    FieldStatistics stats;
    stats.nu_a = std::exp(-2.0 * norm_a);
    stats.nu_b = std::exp(-2.0 * norm_b);
    // ||E(f_A pm f_B)||^2 >= 0; clamp quadrature noise when f_A == pm f_B.
    const double norm_plus = std::max(0.0, norm_a + norm_b + 2.0 * cross.real());
    const double norm_minus = std::max(0.0, norm_a + norm_b - 2.0 * cross.real());
    stats.nu_ab_plus = std::exp(-2.0 * norm_plus);
    stats.nu_ab_minus = std::exp(-2.0 * norm_minus);
    stats.delta_ab = delta;
    stats.validate();
    return stats;
}

}  // namespace udw
