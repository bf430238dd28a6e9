#include "udw/channel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace udw {

void QubitState::validate() const {
    if (!bloch.allFinite()) throw DomainError("Bloch vector must be finite");
    if (bloch.squaredNorm() > 1.0 + kBlochTolerance) {
        std::ostringstream os;
        os << "Bloch vector length " << bloch.norm() << " exceeds 1";
        throw DomainError(os.str());
    }
}

QubitState QubitState::pure(double polar, double azimuth) {
    return {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth), std::cos(polar)};
}

void ChannelParams::validate() const {
    stats.validate();
    if (!std::isfinite(phase_a) || !std::isfinite(phase_b)) throw DomainError("detector phases must be finite");
    bob_initial.validate();
}

Matrix2cd ChannelOutput::rho() const {
    Matrix2cd m;
    m << r11, r12, std::conj(r12), r22;
    return m;
}

QubitState ChannelOutput::state() const {
    return QubitState{2.0 * r12.real(), -2.0 * r12.imag(), r11 - r22};
}

double theta(const QubitState& state, double phase_a) {
    return state.x() * std::cos(phase_a) + state.y() * std::sin(phase_a);
}

QubitChannel::QubitChannel(const ChannelParams& params) : QubitChannel(params, gammas_from_statistics(params.stats)) {}

QubitChannel::QubitChannel(const ChannelParams& params, const GammaSet& gammas) : params_(params), gammas_(gammas) {
    params_.validate();
}

double QubitChannel::bob_projection() const {
    const auto& b = params_.bob_initial;
    return b.x() * std::cos(params_.phase_b) - b.y() * std::sin(params_.phase_b);
}

ChannelOutput QubitChannel::apply(const QubitState& alice_in) const {
    alice_in.validate();
    return apply_theta(theta(alice_in, params_.phase_a));
}

ChannelOutput QubitChannel::apply_theta(double th) const {
    using namespace std::complex_literals;
    const auto& c = gammas_.combined;
    const auto& b = params_.bob_initial;
    const double phi = params_.phase_b;
    // nu_B cos 2Delta and nu_B sin 2Delta expressed through the combined coefficients.
    const double nu_cos = c.keep - c.flip;
    const double nu_sin = -2.0 * c.comm.imag();
    const double bob_perp = b.y() * std::cos(phi) + b.x() * std::sin(phi);
    const double signal = th * nu_sin * bob_perp;
    const std::complex<double> xy_plus{b.x(), b.y()};
    const std::complex<double> xy_minus{b.x(), -b.y()};
    const std::complex<double> phase1 = std::polar(1.0, phi);
    const std::complex<double> phase2 = std::polar(1.0, 2.0 * phi);

    ChannelOutput out;
    out.r11 = 0.5 * (1.0 + b.z() * nu_cos + signal);
    out.r22 = 0.5 * (1.0 - b.z() * nu_cos - signal);
    out.r12 = 0.5 * (phase2 * xy_plus * c.flip + xy_minus * c.keep) + 0.5i * phase1 * (b.z() * th * nu_sin);

    const double gap = std::sqrt((out.r11 - out.r22) * (out.r11 - out.r22) + 4.0 * std::norm(out.r12));
    out.p_plus = 0.5 * (1.0 + gap);
    out.p_minus = 0.5 * (1.0 - gap);

    const double tol = kChannelTolerance;
    if (std::abs(out.r11 + out.r22 - 1.0) > tol || out.p_minus < -tol) {
        std::ostringstream os;
        os.precision(17);
        os << "channel output is not a density matrix: trace " << out.r11 + out.r22 << ", min eigenvalue "
           << out.p_minus;
        throw ConsistencyError(os.str());
    }
    return out;
}

std::pair<double, double> QubitChannel::eigenvalues_analytic(const QubitState& alice_in) const {
    const double th = theta(alice_in, params_.phase_a);
    const double two_delta = 2.0 * params_.stats.delta_ab;
    const double s2 = std::sin(two_delta);
    const double c2 = std::cos(two_delta);
    const double nu = params_.stats.nu_b;
    const double proj = bob_projection();
    const double r_sq = params_.bob_initial.bloch.squaredNorm();
    const double mix = (th * th * s2 * s2 + c2 * c2) * std::max(0.0, r_sq - proj * proj);
    const double root = std::sqrt(std::max(0.0, proj * proj + nu * nu * mix));
    const std::pair<double, double> analytic{0.5 + 0.5 * root, 0.5 - 0.5 * root};

    const ChannelOutput out = apply(alice_in);
    if (std::abs(out.p_plus - analytic.first) > kChannelTolerance ||
        std::abs(out.p_minus - analytic.second) > kChannelTolerance) {
        std::ostringstream os;
        os.precision(17);
        os << "analytic eigenvalues " << analytic.first << ", " << analytic.second
           << " disagree with output spectrum " << out.p_plus << ", " << out.p_minus;
        throw ConsistencyError(os.str());
    }
    return analytic;
}

Matrix4cd QubitChannel::choi() const {
    // The channel is affine in theta, so on an arbitrary operator X it acts as
    // E(X) = tr(X) K + tr(X mu_A) D with K = E|_{theta=0} and D = E|_{theta=1} - K.
    const Matrix2cd k = apply_theta(0.0).rho();
    const Matrix2cd d = apply_theta(1.0).rho() - k;
    Matrix2cd mu_a;
    mu_a << 0.0, std::polar(1.0, -params_.phase_a), std::polar(1.0, params_.phase_a), 0.0;

    Matrix4cd choi = Matrix4cd::Zero();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            // tr(|i><j| mu_A) = <j|mu_A|i>
            const Matrix2cd block = (i == j ? 1.0 : 0.0) * k + mu_a(j, i) * d;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) choi(2 * a + i, 2 * b + j) = 0.5 * block(a, b);
        }
    }
    return choi;
}

Matrix4cd partial_transpose_second(const Matrix4cd& m) {
    Matrix4cd out;
    for (int a = 0; a < 2; ++a)
        for (int i = 0; i < 2; ++i)
            for (int b = 0; b < 2; ++b)
                for (int j = 0; j < 2; ++j) out(2 * a + i, 2 * b + j) = m(2 * a + j, 2 * b + i);
    return out;
}

ChannelOutput apply(const ChannelParams& params, const QubitState& alice_in) {
    return QubitChannel(params).apply(alice_in);
}

std::pair<double, double> eigenvalues_analytic(const ChannelParams& params, const QubitState& alice_in) {
    return QubitChannel(params).eigenvalues_analytic(alice_in);
}

Matrix4cd choi_matrix(const ChannelParams& params) {
    return QubitChannel(params).choi();
}

}  // namespace udw
