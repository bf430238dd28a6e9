// channel.hpp: the qubit-to-qubit channel from Alice's detector to Bob's
//
// Alice's input only enters through theta = tr(rho_A mu_A) = x cos(phase_a) + y sin(phase_a).
// Bob's output is
//   rho_B = keep rho_B0 + flip mu_B rho_B0 mu_B + comm theta [mu_B, rho_B0]
// with Bob's monopole mu_B = sigma_x cos(phase_b) - sigma_y sin(phase_b), the
// orientation under which the explicit matrix elements below hold.

#pragma once

#include <complex>
#include <utility>

#include "udw/qubit.hpp"
#include "udw/weyl_gamma.hpp"

namespace udw {

struct ChannelParams {
    FieldStatistics stats;
    double phase_a{0.0};  // Omega_A tau_{A,0}
    double phase_b{0.0};  // Omega_B tau_{B,0}
    QubitState bob_initial{0.0, 0.0, 1.0};

    void validate() const;
};

struct ChannelOutput {
    double r11{1.0};
    std::complex<double> r12{0.0};
    double r22{0.0};
    double p_plus{1.0};
    double p_minus{0.0};

    Matrix2cd rho() const;
    QubitState state() const;
};

inline constexpr double kChannelTolerance = 1e-12;

double theta(const QubitState& state, double phase_a);

class QubitChannel {
public:
    explicit QubitChannel(const ChannelParams& params);
    // Builds the channel from precomputed (possibly corrupted) gammas; used by the self-test.
    QubitChannel(const ChannelParams& params, const GammaSet& gammas);

    const ChannelParams& params() const { return params_; }
    const GammaSet& gammas() const { return gammas_; }

    ChannelOutput apply(const QubitState& alice_in) const;
    ChannelOutput apply_theta(double theta) const;

    // 1/2 +- 1/2 sqrt(P^2 + nu_B^2 R) with P = x_B cos(phase_b) - y_B sin(phase_b)
    // and R = (theta^2 sin^2 2Delta + cos^2 2Delta)(r_B^2 - P^2). Throws
    // ConsistencyError if it departs from the spectrum of apply() by more than 1e-12.
    std::pair<double, double> eigenvalues_analytic(const QubitState& alice_in) const;

    // (E x id)(|Phi+><Phi+|), output qubit first, reference qubit second.
    Matrix4cd choi() const;

    // P = x_B cos(phase_b) - y_B sin(phase_b).
    double bob_projection() const;

private:
    ChannelParams params_;
    GammaSet gammas_;
};

ChannelOutput apply(const ChannelParams& params, const QubitState& alice_in);
std::pair<double, double> eigenvalues_analytic(const ChannelParams& params, const QubitState& alice_in);
Matrix4cd choi_matrix(const ChannelParams& params);

// Transpose on the second (reference) tensor factor of a two-qubit operator.
Matrix4cd partial_transpose_second(const Matrix4cd& m);

}  // namespace udw
