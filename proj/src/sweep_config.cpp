#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "udw/sweep.hpp"

namespace udw {

ConfigError::ConfigError(int line, std::string key, const std::string& message)
    : std::runtime_error("config" + (line > 0 ? " line " + std::to_string(line) : std::string()) +
                         (key.empty() ? std::string() : " (" + key + ")") + ": " + message)
    , line_(line)
    , key_(std::move(key)) {}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_words(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> words;
    for (std::string w; is >> w;) words.push_back(w);
    return words;
}

double parse_number(const std::string& text, int line, const std::string& key) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ConfigError(line, key, "expected a number, got '" + text + "'");
    }
    if (used != text.size() || !std::isfinite(v)) throw ConfigError(line, key, "expected a finite number, got '" + text + "'");
    return v;
}

int parse_int(const std::string& text, int line, const std::string& key) {
    const double v = parse_number(text, line, key);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(line, key, "expected an integer, got '" + text + "'");
    return static_cast<int>(v);
}

bool parse_bool(const std::string& text, int line, const std::string& key) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError(line, key, "expected true or false, got '" + text + "'");
}

AxisName parse_axis_name(const std::string& text, int line) {
    static const std::map<std::string, AxisName> names{{"lambda_a", AxisName::LambdaA},
                                                       {"lambda_b", AxisName::LambdaB},
                                                       {"L", AxisName::Separation},
                                                       {"dtau", AxisName::Delay},
                                                       {"r_b", AxisName::BobRadius}};
    const auto it = names.find(text);
    if (it == names.end()) throw ConfigError(line, "axis", "unknown axis '" + text + "' (lambda_a, lambda_b, L, dtau, r_b)");
    return it->second;
}

void validate_axis(const Axis& axis, int line) {
    const std::string key = "axis " + axis_name(axis.name);
    if (axis.count < 1) throw ConfigError(line, key, "count must be at least 1");
    if (axis.min > axis.max) throw ConfigError(line, key, "min must not exceed max");
    if (axis.scale == AxisScale::Log && !(axis.min > 0.0)) throw ConfigError(line, key, "log axis requires min > 0");
    if (axis.count == 1 && axis.min != axis.max) throw ConfigError(line, key, "a single-point axis needs min == max");
    if ((axis.name == AxisName::LambdaA || axis.name == AxisName::LambdaB || axis.name == AxisName::Separation) &&
        axis.min < 0.0)
        throw ConfigError(line, key, "values must be non-negative");
    if (axis.name == AxisName::BobRadius && (axis.min < 0.0 || axis.max > 1.0))
        throw ConfigError(line, key, "r_b values must lie in [0, 1]");
}

}  // namespace

std::string axis_name(AxisName name) {
    switch (name) {
        case AxisName::LambdaA: return "lambda_a";
        case AxisName::LambdaB: return "lambda_b";
        case AxisName::Separation: return "L";
        case AxisName::Delay: return "dtau";
        case AxisName::BobRadius: return "r_b";
    }
    return "?";
}

std::string format_name(OutputFormat format) {
    return format == OutputFormat::Csv ? "csv" : "json";
}

std::vector<double> Axis::values() const {
    std::vector<double> v(static_cast<std::size_t>(count));
    if (count == 1) {
        v[0] = min;
        return v;
    }
    for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        if (scale == AxisScale::Log)
            v[i] = std::exp(std::log(min) + t * (std::log(max) - std::log(min)));
        else
            v[i] = min + t * (max - min);
    }
    // Pin the endpoints so they print exactly as configured.
    v.front() = min;
    v.back() = max;
    return v;
}

SweepConfig parse_sweep_config(std::istream& in) {
    SweepConfig cfg;
    std::set<std::string> seen;
    std::optional<int> schema;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) throw ConfigError(line, "", "expected 'key = value'");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty()) throw ConfigError(line, "", "missing key");
        if (value.empty()) throw ConfigError(line, key, "missing value");
        if (key != "axis" && !seen.insert(key).second) throw ConfigError(line, key, "duplicate key");

        auto& p = cfg.fixed;
        if (key == "schema_version") {
            schema = parse_int(value, line, key);
            if (*schema != kSchemaVersion)
                throw ConfigError(line, key, "unsupported schema version " + value + " (expected " +
                                                 std::to_string(kSchemaVersion) + ")");
        } else if (key == "eta_over_sigma") {
            p.eta_over_sigma = parse_number(value, line, key);
            if (!(p.eta_over_sigma > 0.0)) throw ConfigError(line, key, "must be positive");
        } else if (key == "L_over_sigma") {
            p.separation = parse_number(value, line, key);
        } else if (key == "dtau_over_sigma") {
            p.delay = parse_number(value, line, key);
        } else if (key == "beta_over_sigma") {
            p.beta = parse_number(value, line, key);
            if (!(*p.beta > 0.0)) throw ConfigError(line, key, "must be positive");
        } else if (key == "lambda_a") {
            p.lambda_a = parse_number(value, line, key);
        } else if (key == "lambda_b") {
            p.lambda_b = parse_number(value, line, key);
        } else if (key == "bob_bloch") {
            const auto words = split_words(value);
            if (words.size() != 3) throw ConfigError(line, key, "expected three components 'x y z'");
            p.bob_bloch = {parse_number(words[0], line, key), parse_number(words[1], line, key),
                           parse_number(words[2], line, key)};
        } else if (key == "phase_a") {
            p.phase_a = parse_number(value, line, key);
        } else if (key == "phase_b") {
            p.phase_b = parse_number(value, line, key);
        } else if (key == "tune_bob_phase") {
            p.tune_bob_phase = parse_bool(value, line, key);
        } else if (key == "axis") {
            const auto words = split_words(value);
            if (words.size() != 5) throw ConfigError(line, key, "expected 'name linear|log min max count'");
            Axis axis;
            axis.name = parse_axis_name(words[0], line);
            if (words[1] == "linear")
                axis.scale = AxisScale::Linear;
            else if (words[1] == "log")
                axis.scale = AxisScale::Log;
            else
                throw ConfigError(line, key, "scale must be 'linear' or 'log', got '" + words[1] + "'");
            axis.min = parse_number(words[2], line, key);
            axis.max = parse_number(words[3], line, key);
            axis.count = parse_int(words[4], line, key);
            validate_axis(axis, line);
            for (const auto& other : cfg.axes)
                if (other.name == axis.name) throw ConfigError(line, key, "axis '" + words[0] + "' given twice");
            if (cfg.axes.size() == 2) throw ConfigError(line, key, "at most two axes are supported");
            cfg.axes.push_back(axis);
        } else if (key == "output") {
            cfg.output = value;
        } else if (key == "format") {
            if (value == "csv")
                cfg.format = OutputFormat::Csv;
            else if (value == "json")
                cfg.format = OutputFormat::Json;
            else
                throw ConfigError(line, key, "format must be 'csv' or 'json'");
        } else if (key == "oracle") {
            cfg.oracle = parse_bool(value, line, key);
        } else if (key == "optimizer") {
            cfg.optimizer = parse_bool(value, line, key);
        } else if (key == "threads") {
            const int t = parse_int(value, line, key);
            if (t < 1) throw ConfigError(line, key, "must be at least 1");
            cfg.threads = static_cast<unsigned>(t);
        } else {
            throw ConfigError(line, key, "unknown key");
        }
    }
    if (!schema) throw ConfigError(0, "schema_version", "missing required key");
    try {
        cfg.fixed.validate();
    } catch (const DomainError& e) {
        throw ConfigError(0, "", e.what());
    }
    return cfg;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "", "cannot open config file '" + path.string() + "'");
    return parse_sweep_config(in);
}

void SweepConfig::validate() const {
    if (schema_version != kSchemaVersion) throw ConfigError(0, "schema_version", "unsupported schema version");
    if (axes.size() > 2) throw ConfigError(0, "axis", "at most two axes are supported");
    for (const auto& a : axes) validate_axis(a, 0);
    if (threads < 1) throw ConfigError(0, "threads", "must be at least 1");
    for (const auto& a : axes)
        if (a.name == AxisName::BobRadius && fixed.bob_bloch.norm() == 0.0)
            throw ConfigError(0, "bob_bloch", "an r_b axis needs a nonzero Bloch direction");
    try {
        fixed.validate();
    } catch (const DomainError& e) {
        throw ConfigError(0, "", e.what());
    }
    if (output.empty()) throw ConfigError(0, "output", "output path is empty");
    const auto parent = output.parent_path();
    if (!parent.empty() && !std::filesystem::is_directory(parent))
        throw ConfigError(0, "output", "output directory '" + parent.string() + "' does not exist");
}

}  // namespace udw
