// weyl_gamma.hpp: four-fold sin/cos field expectation values of the delta-coupled pair

#pragma once

#include <complex>
#include <functional>

#include "udw/field_backend.hpp"

namespace udw {

// gamma_ijkl = omega(X_A^(k) X_B^(l) X_B^(i) X_A^(j)) with X^(c) = cos Y, X^(s) = sin Y.
struct RawGammas {
    double cccc{0}, ssss{0}, cssc{0}, sccs{0};
    std::complex<double> scsc{0}, sscc{0};
};

// Coefficients multiplying rho_B0, mu rho_B0 mu and theta [mu, rho_B0] in Bob's output.
struct CombinedCoefficients {
    double keep{1};                  // gamma_cccc + gamma_cssc
    double flip{0};                  // gamma_sccs + gamma_ssss
    std::complex<double> comm{0};    // gamma_scsc - gamma_sscc, purely imaginary
};

struct GammaSet {
    RawGammas raw;
    CombinedCoefficients combined;
};

inline constexpr double kGammaIdentityTolerance = 1e-12;

// The six expectation values from the Weyl relations for a quasifree state.
RawGammas raw_gammas(const FieldStatistics& stats);

// Combined coefficients from (nu_B, Delta_AB) alone:
//   keep = 1/2 + nu_B/2 cos 2Delta, flip = 1/2 - nu_B/2 cos 2Delta, comm = -i nu_B/2 sin 2Delta.
CombinedCoefficients combined_coefficients(const FieldStatistics& stats);

// Pairs `raw` with the closed-form combined coefficients after checking that
// the sums of raw gammas reproduce them; throws ConsistencyError otherwise.
GammaSet checked_gammas(const RawGammas& raw, const FieldStatistics& stats);

GammaSet gammas_from_statistics(const FieldStatistics& stats);

using GammaFormula = std::function<RawGammas(const FieldStatistics&)>;

}  // namespace udw
