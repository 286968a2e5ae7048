#include "roucir/models.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace roucir::models {

namespace {

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += "; ";
        out += p;
    }
    return out;
}

}  // namespace

const char* to_string(Regime regime) {
    switch (regime) {
        case Regime::Supercritical: return "supercritical";
        case Regime::Critical: return "critical";
        case Regime::Subcritical: return "subcritical";
    }
    return "unknown";
}

Regime regime(const ModelParams& params) {
    const double lhs = 4.0 * params.a;
    const double rhs = params.sigma * params.sigma;
    if (lhs > rhs) return Regime::Supercritical;
    if (lhs == rhs) return Regime::Critical;
    return Regime::Subcritical;
}

DerivedQuantities derive(const ModelParams& params) {
    DerivedQuantities q;
    q.p = params.a - 0.25 * params.sigma * params.sigma;
    q.d = 4.0 * params.a / (params.sigma * params.sigma);
    q.regime = regime(params);
    return q;
}

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::invalid_argument("invalid model parameters: " + join(violations)),
      violations_(std::move(violations)) {}

ValidatedParams validate(const ModelParams& params) {
    std::vector<std::string> violations;
    if (!(params.y0 > 0.0) || !std::isfinite(params.y0))
        violations.push_back("InitialValueNonpositive (y0 must be > 0)");
    if (!(params.a >= 0.0) || !std::isfinite(params.a))
        violations.push_back("DriftNumeratorNegative (a must be >= 0)");
    if (!(params.b > 0.0) || !std::isfinite(params.b))
        violations.push_back("MeanReversionNonpositive (b must be > 0)");
    if (!(params.sigma > 0.0) || !std::isfinite(params.sigma))
        violations.push_back("VolatilityNonpositive (sigma must be > 0)");
    if (!(params.epsilon >= 0.0) || !std::isfinite(params.epsilon))
        violations.push_back("EpsilonNegative (epsilon must be >= 0)");
    if (!(params.hurst >= 0.5 && params.hurst < 1.0))
        violations.push_back("HurstOutOfRange (hurst must lie in [1/2, 1))");
    if (!violations.empty()) throw ValidationError(std::move(violations));
    return ValidatedParams{params, derive(params)};
}

bool is_nondecreasing(std::span<const double> values, double tol) {
    for (std::size_t k = 1; k < values.size(); ++k)
        if (values[k] < values[k - 1] - tol) return false;
    return true;
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double out = 0.0;
    try {
        out = std::stod(value, &used);
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' has non-numeric value '" + value + "'");
    }
    if (used != value.size())
        throw ConfigError("config: key '" + key + "' has trailing characters in '" + value + "'");
    return out;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    unsigned long long out = 0;
    try {
        out = std::stoull(value, &used);
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' has non-integer value '" + value + "'");
    }
    if (used != value.size())
        throw ConfigError("config: key '" + key + "' has trailing characters in '" + value + "'");
    return out;
}

}  // namespace

SimulationConfig parse_config(std::istream& in) {
    SimulationConfig config;
    std::vector<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(line_no) +
                              " is not of the form key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config: line " + std::to_string(line_no) +
                              " has an empty key or value");
        for (const auto& s : seen)
            if (s == key) throw ConfigError("config: duplicate key '" + key + "'");
        seen.push_back(key);

        if (key == "y0") config.params.y0 = parse_double(key, value);
        else if (key == "a") config.params.a = parse_double(key, value);
        else if (key == "b") config.params.b = parse_double(key, value);
        else if (key == "sigma") config.params.sigma = parse_double(key, value);
        else if (key == "epsilon") config.params.epsilon = parse_double(key, value);
        else if (key == "hurst") config.params.hurst = parse_double(key, value);
        else if (key == "T") config.horizon = parse_double(key, value);
        else if (key == "n_steps") config.n_steps = parse_unsigned(key, value);
        else if (key == "seed") config.seed = parse_unsigned(key, value);
        else if (key == "replications") config.replications = parse_unsigned(key, value);
        else throw ConfigError("config: unknown key '" + key + "'");
    }
    if (!(config.horizon > 0.0)) throw ConfigError("config: key 'T' must be positive");
    if (config.n_steps < 1) throw ConfigError("config: key 'n_steps' must be >= 1");
    if (config.replications < 1) throw ConfigError("config: key 'replications' must be >= 1");
    return config;
}

SimulationConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    return parse_config(in);
}

std::string write_config(const SimulationConfig& config) {
    char buf[64];
    std::ostringstream out;
    const auto num = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    out << "y0 = " << num(config.params.y0) << "\n";
    out << "a = " << num(config.params.a) << "\n";
    out << "b = " << num(config.params.b) << "\n";
    out << "sigma = " << num(config.params.sigma) << "\n";
    out << "epsilon = " << num(config.params.epsilon) << "\n";
    out << "hurst = " << num(config.params.hurst) << "\n";
    out << "T = " << num(config.horizon) << "\n";
    out << "n_steps = " << config.n_steps << "\n";
    out << "seed = " << config.seed << "\n";
    out << "replications = " << config.replications << "\n";
    return out.str();
}

}  // namespace roucir::models
