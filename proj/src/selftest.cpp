#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "udw/sweep.hpp"

namespace udw {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

FieldStatistics random_statistics(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> delta(-5.0, 5.0);
    // 1 - U[0,1) lies in (0, 1].
    return {1.0 - unit(rng), 1.0 - unit(rng), 1.0 - unit(rng), 1.0 - unit(rng), delta(rng)};
}

QubitState random_state(std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Vector3d dir{normal(rng), normal(rng), normal(rng)};
    return QubitState{std::cbrt(unit(rng)) * dir.normalized()};
}

SelftestCheck field_oracle_grid() {
    SelftestCheck check{"field_oracle_grid", true, {}};
    double worst = 0.0;
    for (double la : {0.1, 1.0, 10.0})
        for (double lb : {0.1, 1.0, 10.0})
            for (double L : {1.0, 3.0, 6.0, 10.0})
                for (double d : {0.0, 3.0, 6.0, 12.0}) {
                    PointSpec p;
                    p.lambda_a = la;
                    p.lambda_b = lb;
                    p.separation = L;
                    p.delay = d;
                    worst = std::max(worst, oracle_residual(p));
                }
    check.passed = worst < 1e-6;
    check.detail = "max relative residual " + format_double(worst);
    return check;
}

SelftestCheck gamma_identities(const SelftestOptions& opts, std::mt19937_64& rng) {
    SelftestCheck check{"gamma_identities", true, {}};
    for (int n = 0; n < opts.random_samples; ++n) {
        const FieldStatistics stats = random_statistics(rng);
        const GammaSet g = checked_gammas(opts.gamma_formula(stats), stats);
        FieldStatistics perturbed = stats;
        perturbed.nu_a = 1.0 - perturbed.nu_a / 2.0;
        perturbed.nu_ab_plus /= 3.0;
        perturbed.nu_ab_minus = 1.0;
        const GammaSet h = checked_gammas(opts.gamma_formula(perturbed), perturbed);
        if (h.combined.keep != g.combined.keep || h.combined.flip != g.combined.flip ||
            h.combined.comm != g.combined.comm) {
            check.passed = false;
            check.detail = "combined coefficients depend on nu_A or nu_AB";
            return check;
        }
    }
    check.detail = std::to_string(opts.random_samples) + " samples";
    return check;
}

SelftestCheck channel_soundness(const SelftestOptions& opts, std::mt19937_64& rng) {
    SelftestCheck check{"channel_cptp_ppt", true, {}};
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    double min_eig = 1.0;
    double min_pt = 1.0;
    double worst_trace = 0.0;
    double worst_spectrum = 0.0;
    for (int n = 0; n < opts.random_samples; ++n) {
        ChannelParams params{random_statistics(rng), phase(rng), phase(rng), random_state(rng)};
        // Every tenth sample sits on the pure-output boundary.
        if (n % 10 == 0) {
            params.stats.nu_b = 1.0;
            params.bob_initial = QubitState{params.bob_initial.bloch.normalized()};
        }
        const QubitChannel channel(params, checked_gammas(opts.gamma_formula(params.stats), params.stats));
        const QubitState alice = random_state(rng);
        const ChannelOutput out = channel.apply(alice);
        const Matrix2cd rho = out.rho();
        Eigen::SelfAdjointEigenSolver<Matrix2cd> es(rho, Eigen::EigenvaluesOnly);
        min_eig = std::min(min_eig, es.eigenvalues()(0));
        worst_trace = std::max(worst_trace, std::abs(rho.trace().real() - 1.0));
        const auto [p_plus, p_minus] = channel.eigenvalues_analytic(alice);
        worst_spectrum = std::max({worst_spectrum, std::abs(p_plus - es.eigenvalues()(1)),
                                   std::abs(p_minus - es.eigenvalues()(0))});
        const Matrix4cd choi = channel.choi();
        worst_trace = std::max(worst_trace, std::abs(choi.trace().real() - 1.0));
        Eigen::SelfAdjointEigenSolver<Matrix4cd> pt(partial_transpose_second(choi), Eigen::EigenvaluesOnly);
        min_pt = std::min(min_pt, pt.eigenvalues()(0));
    }
    check.passed = worst_trace <= 1e-12 && min_eig >= -1e-12 && worst_spectrum <= 1e-12 && min_pt >= -1e-10;
    check.detail = "trace residual " + format_double(worst_trace) + ", min eigenvalue " + format_double(min_eig) +
                   ", spectrum residual " + format_double(worst_spectrum) + ", min PT eigenvalue " +
                   format_double(min_pt);
    return check;
}

SelftestCheck optimizer_vs_closed(const SelftestOptions& opts) {
    SelftestCheck check{"optimizer_vs_closed", true, {}};
    double worst = 0.0;
    double excess = -1.0;
    OptimizerConfig cfg;
    cfg.threads = opts.threads;
    for (auto [la, lb] : {std::pair{10.0, 1.0}, std::pair{150.0, 0.3}, std::pair{494.78858902386, 0.3}}) {
        const FieldStatistics stats = assemble_statistics(SmearingSpec{la}, SmearingSpec{lb}, PairGeometry{6.0, 6.0},
                                                          FieldStateSpec::vacuum());
        ChannelParams params{stats, 0.3, 1.1, QubitState{0.0, 0.0, 1.0}};
        const CapacityResult r = capacity_bruteforce(params, cfg);
        worst = std::max(worst, r.gap);
        excess = std::max(excess, r.c_bruteforce - r.c_closed);
    }
    check.passed = worst <= 2e-3 && excess <= 1e-9;
    check.detail = "max gap " + format_double(worst) + ", max excess " + format_double(excess);
    return check;
}

template <typename F>
SelftestCheck guarded(const std::string& name, F&& f) {
    try {
        return f();
    } catch (const std::exception& e) {
        return {name, false, e.what()};
    }
}

}  // namespace

RawGammas corrupted_gammas(const FieldStatistics& stats) {
    RawGammas g = raw_gammas(stats);
    g.cccc -= stats.nu_b * std::cos(2.0 * stats.delta_ab) / 2.0;
    return g;
}

bool SelftestReport::passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return !checks.empty();
}

nlohmann::ordered_json SelftestReport::to_json() const {
    nlohmann::ordered_json out;
    out["schema_version"] = kSchemaVersion;
    out["status"] = passed() ? "pass" : "fail";
    auto& arr = out["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) arr.push_back({{"name", c.name}, {"status", c.passed ? "pass" : "fail"}, {"detail", c.detail}});
    return out;
}

SelftestReport selftest(const SelftestOptions& opts) {
    std::mt19937_64 rng(20221);
    SelftestReport report;
    report.checks.push_back(guarded("field_oracle_grid", [] { return field_oracle_grid(); }));
    report.checks.push_back(guarded("gamma_identities", [&] { return gamma_identities(opts, rng); }));
    report.checks.push_back(guarded("channel_cptp_ppt", [&] { return channel_soundness(opts, rng); }));
    report.checks.push_back(guarded("optimizer_vs_closed", [&] { return optimizer_vs_closed(opts); }));
    return report;
}

}  // namespace udw
