// sweep.hpp: parameter sweeps, single-point queries and the self-test harness

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "udw/capacity.hpp"

namespace udw {

inline constexpr int kSchemaVersion = 1;

// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitSelftestFailure = 1, kExitUsage = 2, kExitIo = 3 };

class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, std::string key, const std::string& message);

    int line() const noexcept { return line_; }
    const std::string& key() const noexcept { return key_; }

private:
    int line_;
    std::string key_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// One physical configuration, in units of the detector width.
struct PointSpec {
    double lambda_a{1.0};
    double lambda_b{1.0};
    double separation{6.0};           // L / sigma
    double delay{6.0};                // dtau_AB / sigma
    double eta_over_sigma{1.0};       // coupling fed to the field is lambda * eta / sigma
    std::optional<double> beta;       // thermal KMS state when set
    Vector3d bob_bloch{0.0, 0.0, 1.0};
    double phase_a{0.0};
    double phase_b{0.0};
    bool tune_bob_phase{false};       // overrides phase_b with tune_bob_phase(bob)
    std::optional<Vector3d> alice_bloch;  // input for the eigenvalue report; optimal member if unset

    void validate() const;
};

struct PointResult {
    PointSpec spec;
    std::string status{"ok"};
    FieldStatistics stats;
    CombinedCoefficients combined;
    double phase_b{0.0};  // after optional tuning
    Vector3d alice_bloch{Vector3d::Zero()};
    double p_plus{0.0};
    double p_minus{0.0};
    CapacityResult capacity;
    bool optimized{false};
    std::optional<double> oracle_residual;

    bool ok() const { return status == "ok"; }
};

struct EvaluateOptions {
    bool oracle{false};
    bool optimize{false};
    OptimizerConfig optimizer;
};

// Maximum relative disagreement between closed-form and quadrature correlators
// (floor 1e-12 on the denominator). The quadrature runs in long double.
double oracle_residual(const PointSpec& spec);

// Never throws on numeric failure: the result carries NaNs and a status string.
PointResult evaluate_point(const PointSpec& spec, const EvaluateOptions& opts = {});

nlohmann::ordered_json point_to_json(const PointResult& r);

enum class AxisName { LambdaA, LambdaB, Separation, Delay, BobRadius };
enum class AxisScale { Linear, Log };
enum class OutputFormat { Csv, Json };

struct Axis {
    AxisName name{AxisName::LambdaA};
    AxisScale scale{AxisScale::Linear};
    double min{0.0};
    double max{0.0};
    int count{1};

    std::vector<double> values() const;
};

std::string axis_name(AxisName name);
std::string format_name(OutputFormat format);

struct SweepConfig {
    int schema_version{kSchemaVersion};
    PointSpec fixed;
    std::vector<Axis> axes;
    std::filesystem::path output{"sweep.csv"};
    OutputFormat format{OutputFormat::Csv};
    bool oracle{false};
    bool optimizer{false};
    unsigned threads{1};

    // Throws ConfigError (line 0) on semantic problems, including a missing output directory.
    void validate() const;
};

// Flat "key = value" text with '#' comments; see README for the schema.
SweepConfig parse_sweep_config(std::istream& in);
SweepConfig load_sweep_config(const std::filesystem::path& path);

// The point of every grid cell, row-major over the axes (last axis fastest).
std::vector<PointSpec> sweep_points(const SweepConfig& cfg);

std::vector<std::string> sweep_columns(const SweepConfig& cfg);

// Evaluates the grid (concurrently up to cfg.threads) in deterministic order.
std::vector<PointResult> evaluate_sweep(const SweepConfig& cfg);

void write_sweep(const SweepConfig& cfg, const std::vector<PointResult>& rows, std::ostream& out);

// evaluate_sweep + write_sweep into cfg.output; throws IoError on write failure.
std::vector<PointResult> run_sweep(const SweepConfig& cfg);

// Shortest decimal that round-trips; "nan", "inf" and "-inf" for non-finite values.
std::string format_double(double v);

struct SelftestCheck {
    std::string name;
    bool passed{false};
    std::string detail;
};

struct SelftestOptions {
    GammaFormula gamma_formula{raw_gammas};
    int random_samples{1000};
    unsigned threads{1};
};

struct SelftestReport {
    std::vector<SelftestCheck> checks;

    bool passed() const;
    nlohmann::ordered_json to_json() const;
};

// Field oracle grid, gamma identities, CPTP/PPT of the channel and optimizer
// versus closed form. A corrupted gamma_formula must make it fail.
SelftestReport selftest(const SelftestOptions& opts = {});

// A gamma formula with the sign of the nu_B term flipped in gamma_cccc; the
// negative control for selftest().
RawGammas corrupted_gammas(const FieldStatistics& stats);

}  // namespace udw
