#include "udw/weyl_gamma.hpp"

#include <cmath>
#include <sstream>

namespace udw {

RawGammas raw_gammas(const FieldStatistics& stats) {
    stats.validate();
    const double c2 = std::cos(2.0 * stats.delta_ab);
    const double s2 = std::sin(2.0 * stats.delta_ab);
    const double nu_sum = (stats.nu_ab_plus + stats.nu_ab_minus) / 8.0;
    const double nu_diff = (stats.nu_ab_plus - stats.nu_ab_minus) / 8.0;
    const double nb_c2 = stats.nu_b * c2;
    const std::complex<double> i_nb_s2{0.0, stats.nu_b * s2 / 4.0};

    RawGammas g;
    g.cccc = (1.0 + stats.nu_a + nb_c2) / 4.0 + nu_sum;
    g.ssss = (1.0 - stats.nu_a - nb_c2) / 4.0 + nu_sum;
    g.cssc = (1.0 - stats.nu_a + nb_c2) / 4.0 - nu_sum;
    g.sccs = (1.0 + stats.nu_a - nb_c2) / 4.0 - nu_sum;
    g.scsc = -i_nb_s2 - nu_diff;
    g.sscc = i_nb_s2 - nu_diff;
    return g;
}

CombinedCoefficients combined_coefficients(const FieldStatistics& stats) {
    stats.validate();
    const double c2 = std::cos(2.0 * stats.delta_ab);
    const double s2 = std::sin(2.0 * stats.delta_ab);
    CombinedCoefficients c;
    c.keep = 0.5 + stats.nu_b / 2.0 * c2;
    c.flip = 0.5 - stats.nu_b / 2.0 * c2;
    c.comm = {0.0, -stats.nu_b / 2.0 * s2};
    return c;
}

GammaSet checked_gammas(const RawGammas& raw, const FieldStatistics& stats) {
    const CombinedCoefficients closed = combined_coefficients(stats);
    const double keep = raw.cccc + raw.cssc;
    const double flip = raw.sccs + raw.ssss;
    const std::complex<double> comm = raw.scsc - raw.sscc;

    auto fail = [&](const char* what, double lhs, double rhs) {
        std::ostringstream os;
        os.precision(17);
        os << "gamma identity violated: " << what << " (" << lhs << " vs " << rhs << ")";
        throw ConsistencyError(os.str());
    };
    const double tol = kGammaIdentityTolerance;
    if (std::abs(keep - closed.keep) > tol) fail("gamma_cccc + gamma_cssc", keep, closed.keep);
    if (std::abs(flip - closed.flip) > tol) fail("gamma_sccs + gamma_ssss", flip, closed.flip);
    if (std::abs(comm - closed.comm) > tol) fail("gamma_scsc - gamma_sscc", comm.imag(), closed.comm.imag());
    const double total = raw.cccc + raw.ssss + raw.cssc + raw.sccs;
    if (std::abs(total - 1.0) > tol) fail("sum of real gammas", total, 1.0);
    if (closed.keep < -tol || closed.keep > 1.0 + tol) fail("keep coefficient outside [0, 1]", closed.keep, 0.0);
    return {raw, closed};
}

GammaSet gammas_from_statistics(const FieldStatistics& stats) {
    return checked_gammas(raw_gammas(stats), stats);
}

}  // namespace udw
