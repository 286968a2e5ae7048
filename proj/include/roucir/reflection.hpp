#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "roucir/models.hpp"
#include "roucir/noise.hpp"

namespace roucir::reflection {

struct HittingReport {
    std::optional<std::size_t> tau_index;
    std::optional<double> tau_time;
    double threshold = 0.0;
};

struct MonotonicityReport {
    double tolerance = 0.0;
    std::size_t violations = 0;  // steps decreasing by more than the tolerance
    double max_drop = 0.0;       // largest single-step decrease observed
};

struct ResidualReflection {
    models::ReflectionPath path;
    MonotonicityReport monotonicity;
};

struct EstimatorComparison {
    std::string label_a;
    std::string label_b;
    std::vector<double> gaps;  // per grid point
    double sup_gap = 0.0;
};

struct InverseIntegralDiagnostic {
    double value = 0.0;
    bool floored = false;
    std::size_t floor_events = 0;
    double floor_eta = 0.0;
};

/// Values at or below this floor are divergence evidence, not errors.
inline constexpr double kInverseIntegralFloor = 1e-30;

/// L_k = (1/2) sum_{j<k} (epsilon / Y_j) dt, left-point rule. Requires the
/// integrand points to be strictly positive unless epsilon = 0.
models::ReflectionPath epsilon_integral_reflection(const models::SamplePath& path,
                                                   double epsilon);

/// L_k = Y_k - Y_0 + (b/2) sum_{j<k} Y_j dt - (sigma/2) W_k. For a
/// projected-scheme pair this telescopes to the clamp accumulator; arbitrary
/// inputs can violate monotonicity, which is reported rather than enforced.
ResidualReflection residual_reflection(const models::SamplePath& path,
                                       const noise::NoisePath& noise,
                                       const models::ModelParams& params, double tol = 1e-12);

/// dW_k = sign(U_k) dB_k with sign(0) = 0; the left endpoint modulates its
/// own increment.
noise::NoisePath tanaka_noise(const models::SamplePath& ou_path, const noise::NoisePath& bm);

/// Occupation-density estimate of the local time of U at zero:
/// Lhat_k = (sigma^2/4) (1/(2 delta)) sum_{j<k} 1{|U_j| < delta} dt.
/// The sigma^2/4 factor matches the quadratic variation of U, so the
/// estimator targets the semimartingale local time of Tanaka's formula.
models::ReflectionPath occupation_local_time(const models::SamplePath& ou_path, double delta,
                                             const models::ModelParams& params);

/// Default bandwidth: sqrt(dt). Reports should sweep around it.
double default_bandwidth(const models::TimeGrid& grid);
std::vector<double> bandwidth_sweep(const models::TimeGrid& grid);

HittingReport hitting_time(const models::SamplePath& path, double threshold);

/// Left-point estimate of int_0^upto 1/Y ds over round(upto/dt) intervals;
/// values below eta are floored and flagged so divergence stays observable.
InverseIntegralDiagnostic inverse_integral_diagnostic(const models::SamplePath& path,
                                                      double upto,
                                                      double eta = kInverseIntegralFloor);

EstimatorComparison compare_estimators(std::string label_a, std::span<const double> a,
                                       std::string label_b, std::span<const double> b);

}  // namespace roucir::reflection
