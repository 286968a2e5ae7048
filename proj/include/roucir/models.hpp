#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "roucir/noise.hpp"

namespace roucir::models {

using noise::TimeGrid;

/// Coefficients shared by every scheme. x0 = y0^2 is always derived.
struct ModelParams {
    double y0 = 0.25;      // initial square-root value
    double a = 0.0;        // mean-reversion numerator
    double b = 1.0;        // mean-reversion speed
    double sigma = 1.0;    // volatility
    double epsilon = 0.0;  // perturbation
    double hurst = 0.5;    // H in [1/2, 1); 1/2 selects the Wiener case

    double x0() const { return y0 * y0; }
};

enum class Regime { Supercritical, Critical, Subcritical };

const char* to_string(Regime regime);

/// p = a - sigma^2/4 separates the regimes; d = 4a/sigma^2 is the
/// degrees-of-freedom count of the squared-OU construction.
struct DerivedQuantities {
    double p = 0.0;
    double d = 0.0;
    Regime regime = Regime::Critical;
};

/// Classification by exact comparison of 4a against sigma^2: no tolerance, so
/// the critical case is exactly a = sigma^2/4 as stored.
Regime regime(const ModelParams& params);
DerivedQuantities derive(const ModelParams& params);

class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

struct ValidatedParams {
    ModelParams params;
    DerivedQuantities derived;
};

/// Checks the standing parameter constraints and names each violation.
/// Side-effect free and idempotent.
ValidatedParams validate(const ModelParams& params);

struct SamplePath {
    TimeGrid grid;
    std::vector<double> values;  // length grid.n_steps + 1
};

/// Nondecreasing from 0 when produced by the schemes; estimators that can
/// violate monotonicity report it separately.
struct ReflectionPath {
    TimeGrid grid;
    std::vector<double> values;  // length grid.n_steps + 1
};

bool is_nondecreasing(std::span<const double> values, double tol = 0.0);

// --- configuration -----------------------------------------------------

/// Line-oriented `key = value` text config. Recognized keys: y0, a, b, sigma,
/// epsilon, hurst, T, n_steps, seed, replications. Unknown keys are errors.
struct SimulationConfig {
    ModelParams params;
    double horizon = 5.0;
    std::size_t n_steps = 5000;
    std::uint64_t seed = 1;
    std::size_t replications = 1;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

SimulationConfig parse_config(std::istream& in);
SimulationConfig parse_config_file(const std::string& path);

/// Echo in the exact format parse_config accepts.
std::string write_config(const SimulationConfig& config);

}  // namespace roucir::models
