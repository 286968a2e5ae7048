#include "roucir/schemes.hpp"

#include <cmath>
#include <stdexcept>

namespace roucir::schemes {

namespace {

// Scheme-level coefficient checks. Degenerate coefficients (sigma = 0, b = 0,
// y0 = 0) are legitimate for the integrators even though the model-level
// validate() rejects them for the reference experiments.
void require_coefficients(const models::ModelParams& params) {
    if (!(params.y0 >= 0.0) || !std::isfinite(params.y0))
        throw std::invalid_argument("scheme: y0 must be >= 0 and finite");
    if (!(params.a >= 0.0) || !std::isfinite(params.a))
        throw std::invalid_argument("scheme: a must be >= 0 and finite");
    if (!(params.b >= 0.0) || !std::isfinite(params.b))
        throw std::invalid_argument("scheme: b must be >= 0 and finite");
    if (!(params.sigma >= 0.0) || !std::isfinite(params.sigma))
        throw std::invalid_argument("scheme: sigma must be >= 0 and finite");
    if (!(params.epsilon >= 0.0) || !std::isfinite(params.epsilon))
        throw std::invalid_argument("scheme: epsilon must be >= 0 and finite");
}

void require_bm(const noise::NoisePath& path, const char* scheme) {
    if (path.kind != noise::NoiseKind::BrownianMotion)
        throw std::invalid_argument(std::string(scheme) + ": requires Brownian noise");
}

void require_increments(const noise::NoisePath& path) {
    if (path.increments.size() != path.grid.n_steps)
        throw std::invalid_argument("scheme: noise increments do not match grid");
}

// The explicit recursions flip sign and diverge for dt >= 2/b.
void require_stable_dt(const models::ModelParams& params, const noise::TimeGrid& grid,
                       const char* scheme) {
    if (params.b > 0.0 && grid.dt() >= 2.0 / params.b)
        throw std::invalid_argument(std::string(scheme) +
                                    ": dt must be < 2/b for a stable recursion");
}

}  // namespace

double drift_numerator(const models::ModelParams& params, noise::NoiseKind kind) {
    if (kind == noise::NoiseKind::BrownianMotion)
        return (params.a - 0.25 * params.sigma * params.sigma) + params.epsilon;
    return params.a + params.epsilon;
}

double implicit_sqrt_step(double y_prev, double dt, double d_noise, double b, double sigma,
                          double c) {
    if (!(dt > 0.0)) throw std::invalid_argument("implicit_sqrt_step: dt must be > 0");
    if (!(c >= 0.0)) throw std::invalid_argument("implicit_sqrt_step: c must be >= 0");
    const double denom = 1.0 + 0.5 * b * dt;
    const double beta = y_prev + 0.5 * sigma * d_noise;
    if (c == 0.0) return std::max(0.0, beta) / denom;
    const double shift = 2.0 * c * dt * denom;
    const double disc = std::sqrt(beta * beta + shift);
    // Rearranged root for beta <= 0 to avoid cancellation.
    if (beta > 0.0) return (beta + disc) / (2.0 * denom);
    return (c * dt) / (disc - beta);
}

models::SamplePath euler_cir_full_truncation(const models::ModelParams& params,
                                             const noise::NoisePath& noise) {
    require_coefficients(params);
    require_bm(noise, "euler_cir_full_truncation");
    require_increments(noise);
    const double dt = noise.grid.dt();
    models::SamplePath out{noise.grid, std::vector<double>(noise.grid.n_steps + 1)};
    double x = params.x0();
    out.values[0] = x;
    for (std::size_t k = 0; k < noise.grid.n_steps; ++k) {
        const double x_plus = std::max(x, 0.0);
        x += (params.a - params.b * x_plus) * dt +
             params.sigma * std::sqrt(x_plus) * noise.increments[k];
        out.values[k + 1] = x;
    }
    return out;
}

models::SamplePath simulate_sqrt_process(const models::ModelParams& params,
                                         const noise::NoisePath& noise) {
    require_coefficients(params);
    require_increments(noise);
    if (!(params.y0 > 0.0))
        throw std::invalid_argument("simulate_sqrt_process: y0 must be > 0");
    const double c = drift_numerator(params, noise.kind);
    if (c < 0.0)
        throw std::invalid_argument(
            "simulate_sqrt_process: negative drift numerator (subcritical square-root SDE)");
    if (noise.kind == noise::NoiseKind::FractionalBrownianMotion && !(c > 0.0))
        throw std::invalid_argument(
            "simulate_sqrt_process: fractional case requires a positive drift numerator");
    const double dt = noise.grid.dt();
    models::SamplePath out{noise.grid, std::vector<double>(noise.grid.n_steps + 1)};
    double y = params.y0;
    out.values[0] = y;
    for (std::size_t k = 0; k < noise.grid.n_steps; ++k) {
        y = implicit_sqrt_step(y, dt, noise.increments[k], params.b, params.sigma, c);
        out.values[k + 1] = y;
    }
    return out;
}

SchemeOutput simulate_rou_projected(const models::ModelParams& params,
                                    const noise::NoisePath& noise) {
    require_coefficients(params);
    require_increments(noise);
    require_stable_dt(params, noise.grid, "simulate_rou_projected");
    const double dt = noise.grid.dt();
    const std::size_t n = noise.grid.n_steps;
    SchemeOutput out;
    out.path = models::SamplePath{noise.grid, std::vector<double>(n + 1)};
    out.reflection = models::ReflectionPath{noise.grid, std::vector<double>(n + 1)};
    double y = params.y0;
    double l = 0.0;
    out.path.values[0] = y;
    out.reflection.values[0] = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double pre = y - 0.5 * params.b * y * dt + 0.5 * params.sigma * noise.increments[k];
        const double clamp = -std::min(0.0, pre);
        if (clamp > 0.0) out.clamp_events.push_back({k, clamp});
        y = std::max(0.0, pre);
        l += clamp;
        out.path.values[k + 1] = y;
        out.reflection.values[k + 1] = l;
    }
    return out;
}

models::SamplePath simulate_ou(const models::ModelParams& params, const noise::NoisePath& noise) {
    require_coefficients(params);
    require_increments(noise);
    require_stable_dt(params, noise.grid, "simulate_ou");
    const double dt = noise.grid.dt();
    models::SamplePath out{noise.grid, std::vector<double>(noise.grid.n_steps + 1)};
    double u = params.y0;
    out.values[0] = u;
    for (std::size_t k = 0; k < noise.grid.n_steps; ++k) {
        u += -0.5 * params.b * u * dt + 0.5 * params.sigma * noise.increments[k];
        out.values[k + 1] = u;
    }
    return out;
}

models::SamplePath ou_squared_sum(std::size_t d, const models::ModelParams& params,
                                  std::span<const noise::NoisePath> noises) {
    if (d < 1) throw std::invalid_argument("ou_squared_sum: d must be >= 1");
    if (noises.size() != d)
        throw std::invalid_argument("ou_squared_sum: need exactly d noise paths");
    for (const auto& n : noises) {
        require_bm(n, "ou_squared_sum");
        if (!(n.grid == noises.front().grid))
            throw std::invalid_argument("ou_squared_sum: mismatched grids");
    }
    models::SamplePath sum{noises.front().grid,
                           std::vector<double>(noises.front().grid.n_steps + 1, 0.0)};
    for (const auto& n : noises) {
        const auto u = simulate_ou(params, n);
        for (std::size_t k = 0; k < u.values.size(); ++k)
            sum.values[k] += u.values[k] * u.values[k];
    }
    return sum;
}

}  // namespace roucir::schemes
