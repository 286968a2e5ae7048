#pragma once

#include <span>
#include <vector>

#include "roucir/models.hpp"
#include "roucir/noise.hpp"

namespace roucir::schemes {

struct ClampEvent {
    std::size_t step = 0;      // index of the increment that was clamped
    double magnitude = 0.0;    // amount pushed back to zero, >= 0
};

/// Path plus the reflection bookkeeping of the projection scheme. The
/// reflection values are the running sum of the clamp magnitudes.
struct SchemeOutput {
    models::SamplePath path;
    std::vector<ClampEvent> clamp_events;
    models::ReflectionPath reflection;
};

/// Drift numerator c of the square-root SDE. Wiener case: c = (a - sigma^2/4)
/// + epsilon (the epsilon-perturbed CIR has mean-reversion numerator
/// a + epsilon). Fractional case: c = a + epsilon (pathwise calculus carries
/// no Ito correction).
double drift_numerator(const models::ModelParams& params, noise::NoiseKind kind);

/// One backward-Euler step of dY = (c/(2Y) - (b/2)Y)dt + (sigma/2)dNoise:
/// the unique nonnegative root of
///   (1 + b dt/2) y^2 - (y_prev + (sigma/2) dNoise) y - c dt/2 = 0.
/// Strictly positive whenever c > 0; for c = 0 it reduces exactly to
/// max(0, beta)/(1 + b dt/2) with beta = y_prev + (sigma/2) dNoise.
double implicit_sqrt_step(double y_prev, double dt, double d_noise, double b, double sigma,
                          double c);

/// Explicit Euler for dX = (a - bX)dt + sigma sqrt(X)dW with full truncation:
/// X_{k+1} = X_k + (a - b X_k^+)dt + sigma sqrt(X_k^+) dW_k. The raw iterate
/// is reported and may dip below zero. Wiener noise only.
models::SamplePath euler_cir_full_truncation(const models::ModelParams& params,
                                             const noise::NoisePath& noise);

/// Backward Euler for the square-root SDE with drift numerator
/// drift_numerator(params, noise.kind). Every value is > 0 when c > 0.
models::SamplePath simulate_sqrt_process(const models::ModelParams& params,
                                         const noise::NoisePath& noise);

/// Projected Euler for the reflected (fractional) OU process:
/// Y_{k+1} = max(0, Y_k - (b/2) Y_k dt + (sigma/2) dNoise_k), recording each
/// clamp and accumulating them into the discrete reflection function.
SchemeOutput simulate_rou_projected(const models::ModelParams& params,
                                    const noise::NoisePath& noise);

/// Explicit Euler for dU = -(b/2)U dt + (sigma/2)dNoise, unconstrained sign.
models::SamplePath simulate_ou(const models::ModelParams& params, const noise::NoisePath& noise);

/// Pointwise sum of squares of d independent OU paths, each started at
/// params.y0: a CIR path with a = d sigma^2/4 and x0 = d y0^2.
models::SamplePath ou_squared_sum(std::size_t d, const models::ModelParams& params,
                                  std::span<const noise::NoisePath> noises);

}  // namespace roucir::schemes
