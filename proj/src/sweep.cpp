#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <thread>

#include "udw/sweep.hpp"

namespace udw {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Extended precision lets the oracle resolve commutators far below the
// cancellation floor of a double-precision radial integral.
const QuadratureOptions<long double> kOracleQuadrature{1e-17L, 1e-14L, 4000};

double relative_residual(double closed, double quadrature) {
    return std::abs(closed - quadrature) / std::max(std::abs(closed), 1e-12);
}

FieldStateSpec field_state(const PointSpec& spec) {
    return spec.beta ? FieldStateSpec::thermal(*spec.beta) : FieldStateSpec::vacuum();
}

std::string sanitize(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '"') c = ';';
    return s;
}

PointResult failed(PointResult r, const std::string& status) {
    r.status = status;
    r.stats = {kNaN, kNaN, kNaN, kNaN, kNaN};
    r.combined = {kNaN, kNaN, {kNaN, kNaN}};
    r.p_plus = r.p_minus = kNaN;
    r.capacity.c_closed = r.capacity.c_bruteforce = r.capacity.q_ea_lower = kNaN;
    r.capacity.nu_eff = r.capacity.gap = kNaN;
    return r;
}

}  // namespace

void PointSpec::validate() const {
    auto finite = [](double v, const char* what) {
        if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
    };
    finite(lambda_a, "lambda_a");
    finite(lambda_b, "lambda_b");
    finite(separation, "L_over_sigma");
    finite(delay, "dtau_over_sigma");
    finite(eta_over_sigma, "eta_over_sigma");
    finite(phase_a, "phase_a");
    finite(phase_b, "phase_b");
    if (lambda_a < 0.0 || lambda_b < 0.0) throw DomainError("couplings must be non-negative");
    if (separation < 0.0) throw DomainError("L_over_sigma must be non-negative");
    if (!(eta_over_sigma > 0.0)) throw DomainError("eta_over_sigma must be positive");
    if (beta && !(*beta > 0.0 && std::isfinite(*beta))) throw DomainError("beta_over_sigma must be positive");
    QubitState{bob_bloch}.validate();
    if (alice_bloch) QubitState{*alice_bloch}.validate();
}

double oracle_residual(const PointSpec& spec) {
    const SmearingSpec a{spec.lambda_a * spec.eta_over_sigma};
    const SmearingSpec b{spec.lambda_b * spec.eta_over_sigma};
    const PairGeometry geom{spec.separation, spec.delay};
    const FieldStateSpec state = field_state(spec);
    const auto cross = wightman_cross_quadrature<long double>(a, b, geom, state, kOracleQuadrature);
    double worst = relative_residual(commutator_closed(a, b, geom), static_cast<double>(-2.0L * cross.imag()));
    if (!state.is_thermal()) {
        for (const auto& f : {a, b}) {
            const auto q = norm_sq_quadrature<long double>(f, state, kOracleQuadrature);
            worst = std::max(worst, relative_residual(norm_sq_closed(f), static_cast<double>(q)));
        }
    }
    return worst;
}

PointResult evaluate_point(const PointSpec& spec, const EvaluateOptions& opts) {
    spec.validate();
    PointResult r;
    r.spec = spec;
    try {
        const SmearingSpec a{spec.lambda_a * spec.eta_over_sigma};
        const SmearingSpec b{spec.lambda_b * spec.eta_over_sigma};
        r.stats = assemble_statistics(a, b, PairGeometry{spec.separation, spec.delay}, field_state(spec));

        ChannelParams params{r.stats, spec.phase_a, spec.phase_b, QubitState{spec.bob_bloch}};
        if (spec.tune_bob_phase) params.phase_b = tune_bob_phase(params.bob_initial);
        r.phase_b = params.phase_b;
        const QubitChannel channel(params);
        r.combined = channel.gammas().combined;

        r.alice_bloch = spec.alice_bloch.value_or(optimal_ensemble(spec.phase_a).members.front().state.bloch);
        const auto [p_plus, p_minus] = channel.eigenvalues_analytic(QubitState{r.alice_bloch});
        r.p_plus = p_plus;
        r.p_minus = p_minus;

        r.optimized = opts.optimize;
        r.capacity = opts.optimize ? capacity_bruteforce(params, opts.optimizer) : capacity_closed(params);
    } catch (const NumericFailure& e) {
        return failed(std::move(r), sanitize(std::string("quadrature_failure: ") + e.what()));
    } catch (const ConsistencyError& e) {
        return failed(std::move(r), sanitize(std::string("consistency_failure: ") + e.what()));
    } catch (const DomainError& e) {
        // The spec itself was validated above, so this is overflow in a derived quantity.
        return failed(std::move(r), sanitize(std::string("numeric_failure: ") + e.what()));
    }
    if (opts.oracle) {
        try {
            r.oracle_residual = oracle_residual(spec);
        } catch (const NumericFailure& e) {
            r.oracle_residual = kNaN;
            r.status = sanitize(std::string("oracle_failure: ") + e.what());
        }
    }
    return r;
}

nlohmann::ordered_json point_to_json(const PointResult& r) {
    using nlohmann::ordered_json;
    const auto& s = r.spec;
    ordered_json input{{"lambda_a", s.lambda_a},
                       {"lambda_b", s.lambda_b},
                       {"L", s.separation},
                       {"dtau", s.delay},
                       {"eta_over_sigma", s.eta_over_sigma},
                       {"state", s.beta ? "thermal" : "vacuum"},
                       {"bob_bloch", {s.bob_bloch.x(), s.bob_bloch.y(), s.bob_bloch.z()}},
                       {"phase_a", s.phase_a},
                       {"phase_b", r.phase_b},
                       {"tune_bob_phase", s.tune_bob_phase}};
    if (s.beta) input["beta_over_sigma"] = *s.beta;

    ordered_json capacity{{"c_closed", r.capacity.c_closed},
                          {"q_ea_lower", r.capacity.q_ea_lower},
                          {"q_unassisted", r.capacity.q_unassisted},
                          {"nu_eff", r.capacity.nu_eff},
                          {"bob_tuned", r.capacity.bob_tuned}};
    if (r.optimized) {
        capacity["c_bruteforce"] = r.capacity.c_bruteforce;
        capacity["gap"] = r.capacity.gap;
        capacity["evaluations"] = r.capacity.evaluations;
        ordered_json members = ordered_json::array();
        for (const auto& m : r.capacity.best_ensemble.members)
            members.push_back({{"probability", m.probability},
                               {"bloch", {m.state.x(), m.state.y(), m.state.z()}}});
        capacity["best_ensemble"] = members;
    }

    ordered_json out{{"schema_version", kSchemaVersion},
                     {"status", r.status},
                     {"input", input},
                     {"statistics",
                      {{"nu_a", r.stats.nu_a},
                       {"nu_b", r.stats.nu_b},
                       {"nu_ab_plus", r.stats.nu_ab_plus},
                       {"nu_ab_minus", r.stats.nu_ab_minus},
                       {"delta_ab", r.stats.delta_ab}}},
                     {"combined",
                      {{"keep", r.combined.keep}, {"flip", r.combined.flip}, {"comm_imag", r.combined.comm.imag()}}},
                     {"eigenvalues",
                      {{"alice_bloch", {r.alice_bloch.x(), r.alice_bloch.y(), r.alice_bloch.z()}},
                       {"p_plus", r.p_plus},
                       {"p_minus", r.p_minus}}},
                     {"capacity", capacity}};
    if (r.oracle_residual) out["oracle_residual"] = *r.oracle_residual;
    return out;
}

std::vector<PointSpec> sweep_points(const SweepConfig& cfg) {
    auto apply_axis = [](PointSpec& p, AxisName name, double v) {
        switch (name) {
            case AxisName::LambdaA: p.lambda_a = v; break;
            case AxisName::LambdaB: p.lambda_b = v; break;
            case AxisName::Separation: p.separation = v; break;
            case AxisName::Delay: p.delay = v; break;
            case AxisName::BobRadius: p.bob_bloch = v * p.bob_bloch.normalized(); break;
        }
    };
    std::vector<PointSpec> points{cfg.fixed};
    for (const auto& axis : cfg.axes) {
        std::vector<PointSpec> next;
        for (const auto& base : points) {
            for (double v : axis.values()) {
                PointSpec p = base;
                apply_axis(p, axis.name, v);
                next.push_back(p);
            }
        }
        points = std::move(next);
    }
    return points;
}

std::vector<std::string> sweep_columns(const SweepConfig& cfg) {
    std::vector<std::string> cols{"lambda_a", "lambda_b", "L", "dtau", "nu_a", "nu_b",
                                  "nu_ab_plus", "nu_ab_minus", "delta_ab", "c_closed"};
    if (cfg.optimizer) {
        cols.emplace_back("c_bruteforce");
        cols.emplace_back("gap");
    }
    if (cfg.oracle) cols.emplace_back("oracle_residual");
    cols.emplace_back("r_b");
    cols.emplace_back("status");
    return cols;
}

std::vector<PointResult> evaluate_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const auto points = sweep_points(cfg);
    EvaluateOptions opts;
    opts.oracle = cfg.oracle;
    opts.optimize = cfg.optimizer;
    std::vector<PointResult> rows(points.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++) rows[i] = evaluate_point(points[i], opts);
    };
    const unsigned threads = std::min<std::size_t>(std::max(1u, cfg.threads), std::max<std::size_t>(1, points.size()));
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    }
    return rows;
}

namespace {

std::vector<double> row_values(const SweepConfig& cfg, const PointResult& r) {
    std::vector<double> v{r.spec.lambda_a, r.spec.lambda_b, r.spec.separation, r.spec.delay,
                          r.stats.nu_a, r.stats.nu_b, r.stats.nu_ab_plus, r.stats.nu_ab_minus,
                          r.stats.delta_ab, r.capacity.c_closed};
    if (cfg.optimizer) {
        v.push_back(r.capacity.c_bruteforce);
        v.push_back(r.capacity.gap);
    }
    if (cfg.oracle) v.push_back(r.oracle_residual.value_or(kNaN));
    v.push_back(r.spec.bob_bloch.norm());
    return v;
}

}  // namespace

void write_sweep(const SweepConfig& cfg, const std::vector<PointResult>& rows, std::ostream& out) {
    const auto cols = sweep_columns(cfg);
    if (cfg.format == OutputFormat::Csv) {
        for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
        out << '\n';
        for (const auto& r : rows) {
            for (double v : row_values(cfg, r)) out << format_double(v) << ',';
            out << r.status << '\n';
        }
        return;
    }
    nlohmann::ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["columns"] = cols;
    auto& json_rows = doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json row;
        const auto values = row_values(cfg, r);
        for (std::size_t c = 0; c < values.size(); ++c) row[cols[c]] = values[c];
        row["status"] = r.status;
        json_rows.push_back(std::move(row));
    }
    out << doc.dump(2) << '\n';
}

std::vector<PointResult> run_sweep(const SweepConfig& cfg) {
    auto rows = evaluate_sweep(cfg);
    std::ofstream out(cfg.output, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + cfg.output.string() + "' for writing");
    write_sweep(cfg, rows, out);
    out.flush();
    if (!out) throw IoError("failed writing '" + cfg.output.string() + "'");
    return rows;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace udw
