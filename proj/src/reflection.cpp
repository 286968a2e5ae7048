#include "roucir/reflection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace roucir::reflection {

namespace {

void require_path_on_grid(const models::SamplePath& path) {
    if (path.values.size() != path.grid.n_steps + 1)
        throw std::invalid_argument("reflection: path values do not match grid");
}

void require_shared_grid(const models::SamplePath& path, const noise::NoisePath& noise) {
    require_path_on_grid(path);
    if (!(path.grid == noise.grid))
        throw std::invalid_argument("reflection: path and noise grids differ");
    if (noise.increments.size() != noise.grid.n_steps)
        throw std::invalid_argument("reflection: noise increments do not match grid");
}

}  // namespace

models::ReflectionPath epsilon_integral_reflection(const models::SamplePath& path,
                                                   double epsilon) {
    require_path_on_grid(path);
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
        throw std::invalid_argument("epsilon_integral_reflection: epsilon must be >= 0");
    const std::size_t n = path.grid.n_steps;
    models::ReflectionPath out{path.grid, std::vector<double>(n + 1, 0.0)};
    if (epsilon == 0.0) return out;
    const double dt = path.grid.dt();
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double y = path.values[k];
        if (!(y > 0.0))
            throw std::domain_error(
                "epsilon_integral_reflection: nonpositive path value at index " +
                std::to_string(k));
        acc += 0.5 * (epsilon / y) * dt;
        out.values[k + 1] = acc;
    }
    return out;
}

ResidualReflection residual_reflection(const models::SamplePath& path,
                                       const noise::NoisePath& noise,
                                       const models::ModelParams& params, double tol) {
    require_shared_grid(path, noise);
    const double dt = path.grid.dt();
    const std::size_t n = path.grid.n_steps;
    ResidualReflection out;
    out.path = models::ReflectionPath{path.grid, std::vector<double>(n + 1, 0.0)};
    out.monotonicity.tolerance = tol;
    double drift_sum = 0.0;  // sum_{j<k} Y_j dt, left points
    double w = 0.0;          // cumulative noise
    for (std::size_t k = 1; k <= n; ++k) {
        drift_sum += path.values[k - 1] * dt;
        w += noise.increments[k - 1];
        const double l =
            path.values[k] - path.values[0] + 0.5 * params.b * drift_sum - 0.5 * params.sigma * w;
        out.path.values[k] = l;
        const double drop = out.path.values[k - 1] - l;
        if (drop > 0.0) {
            out.monotonicity.max_drop = std::max(out.monotonicity.max_drop, drop);
            if (drop > tol) ++out.monotonicity.violations;
        }
    }
    return out;
}

noise::NoisePath tanaka_noise(const models::SamplePath& ou_path, const noise::NoisePath& bm) {
    require_shared_grid(ou_path, bm);
    if (bm.kind != noise::NoiseKind::BrownianMotion)
        throw std::invalid_argument("tanaka_noise: driving noise must be Brownian");
    noise::NoisePath out = bm;
    for (std::size_t k = 0; k < bm.increments.size(); ++k) {
        const double u = ou_path.values[k];
        const double sign = u > 0.0 ? 1.0 : (u < 0.0 ? -1.0 : 0.0);
        out.increments[k] = sign * bm.increments[k];
    }
    return out;
}

models::ReflectionPath occupation_local_time(const models::SamplePath& ou_path, double delta,
                                             const models::ModelParams& params) {
    require_path_on_grid(ou_path);
    if (!(delta > 0.0)) throw std::invalid_argument("occupation_local_time: delta must be > 0");
    const double dt = ou_path.grid.dt();
    const double weight = 0.25 * params.sigma * params.sigma / (2.0 * delta) * dt;
    const std::size_t n = ou_path.grid.n_steps;
    models::ReflectionPath out{ou_path.grid, std::vector<double>(n + 1, 0.0)};
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(ou_path.values[k]) < delta) acc += weight;
        out.values[k + 1] = acc;
    }
    return out;
}

double default_bandwidth(const models::TimeGrid& grid) { return std::sqrt(grid.dt()); }

std::vector<double> bandwidth_sweep(const models::TimeGrid& grid) {
    const double d = default_bandwidth(grid);
    return {2.0 * d, d, 0.5 * d};
}

HittingReport hitting_time(const models::SamplePath& path, double threshold) {
    require_path_on_grid(path);
    if (!(threshold >= 0.0)) throw std::invalid_argument("hitting_time: threshold must be >= 0");
    HittingReport report;
    report.threshold = threshold;
    for (std::size_t k = 0; k < path.values.size(); ++k) {
        if (path.values[k] <= threshold) {
            report.tau_index = k;
            report.tau_time = path.grid.time(k);
            break;
        }
    }
    return report;
}

InverseIntegralDiagnostic inverse_integral_diagnostic(const models::SamplePath& path,
                                                      double upto, double eta) {
    require_path_on_grid(path);
    if (!(upto > 0.0)) throw std::invalid_argument("inverse_integral_diagnostic: upto must be > 0");
    if (!(eta > 0.0)) throw std::invalid_argument("inverse_integral_diagnostic: eta must be > 0");
    const double dt = path.grid.dt();
    const auto intervals = static_cast<std::size_t>(std::llround(upto / dt));
    if (intervals < 1 || intervals > path.values.size())
        throw std::invalid_argument(
            "inverse_integral_diagnostic: upto is outside the sampled horizon");
    InverseIntegralDiagnostic out;
    out.floor_eta = eta;
    for (std::size_t j = 0; j < intervals; ++j) {
        double y = path.values[j];
        if (y < eta) {
            y = eta;
            out.floored = true;
            ++out.floor_events;
        }
        out.value += dt / y;
    }
    return out;
}

EstimatorComparison compare_estimators(std::string label_a, std::span<const double> a,
                                       std::string label_b, std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("compare_estimators: unequal lengths");
    EstimatorComparison out;
    out.label_a = std::move(label_a);
    out.label_b = std::move(label_b);
    out.gaps.resize(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        out.gaps[k] = std::abs(a[k] - b[k]);
        out.sup_gap = std::max(out.sup_gap, out.gaps[k]);
    }
    return out;
}

}  // namespace roucir::reflection
