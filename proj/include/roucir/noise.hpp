#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace roucir::noise {

/// Uniform discretization of [0, T] with points t_k = k*T/n_steps.
struct TimeGrid {
    double horizon = 1.0;
    std::size_t n_steps = 1;

    TimeGrid() = default;
    TimeGrid(double horizon_, std::size_t n_steps_);

    double dt() const { return horizon / static_cast<double>(n_steps); }
    double time(std::size_t k) const {
        return horizon * static_cast<double>(k) / static_cast<double>(n_steps);
    }

    bool operator==(const TimeGrid&) const = default;
};

/// (master, stream) -> increments is a pure deterministic map; replication r
/// uses stream index r with no sequential dependence between streams.
struct RngSeed {
    std::uint64_t master = 0;
    std::uint64_t stream = 0;

    bool operator==(const RngSeed&) const = default;
};

std::mt19937_64 make_rng(RngSeed seed);

enum class NoiseKind { BrownianMotion, FractionalBrownianMotion };
enum class FbmMethod { DaviesHarte, Hosking };

const char* to_string(NoiseKind kind);
const char* to_string(FbmMethod method);

/// Increments of the driving process over one TimeGrid. The path starts at 0;
/// levels() prepends it and accumulates.
struct NoisePath {
    TimeGrid grid;
    NoiseKind kind = NoiseKind::BrownianMotion;
    double hurst = 0.5;
    RngSeed seed;
    std::vector<double> increments;  // length grid.n_steps

    std::vector<double> levels() const;
};

NoisePath generate_bm_increments(const TimeGrid& grid, RngSeed seed);

/// 0.5*(s^{2H} + t^{2H} - |t-s|^{2H}) for s,t >= 0 and H in (0,1).
double fbm_covariance(double s, double t, double hurst);

/// Autocovariance of unit-spacing fractional Gaussian noise at integer lag.
double fgn_autocovariance(std::int64_t lag, double hurst);

class CirculantEmbeddingFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact stationary-Gaussian sampler for fGn increments scaled to the grid.
/// Davies-Harte circulant embedding by default; doubles the padding once when
/// the embedding eigenvalues go negative and falls back to the Hosking
/// recursion if they still do. The fallback is recorded so run manifests can
/// report it.
class FbmSampler {
public:
    FbmSampler(const TimeGrid& grid, double hurst,
               FbmMethod method = FbmMethod::DaviesHarte);
    ~FbmSampler();
    FbmSampler(FbmSampler&&) noexcept;
    FbmSampler& operator=(FbmSampler&&) noexcept;
    FbmSampler(const FbmSampler&) = delete;
    FbmSampler& operator=(const FbmSampler&) = delete;

    NoisePath sample(RngSeed seed) const;

    const TimeGrid& grid() const;
    double hurst() const;
    FbmMethod method_requested() const;
    FbmMethod method_used() const;
    int padding_doublings() const;
    bool hosking_fallback() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

NoisePath generate_fbm_increments(const TimeGrid& grid, double hurst, RngSeed seed,
                                  FbmMethod method = FbmMethod::DaviesHarte);

struct CovarianceCheck {
    double s = 0.0;
    double t = 0.0;
    double theoretical = 0.0;
    double sample = 0.0;
    double z = 0.0;
};

struct StatReport {
    std::size_t n_paths = 0;
    std::vector<CovarianceCheck> checks;
    double max_abs_z = 0.0;
};

/// Sample vs theoretical level covariance at fixed (s,t) pairs, with z-scores
/// computed from the exact Gaussian standard error. Requires >= 100 paths on
/// a common grid.
StatReport validate_noise_covariance(const std::vector<NoisePath>& paths, double hurst);
StatReport validate_noise_covariance(const std::vector<NoisePath>& paths, double hurst,
                                     const std::vector<std::pair<double, double>>& st_pairs);

/// Block-sums consecutive increments; the coarse path visits the same levels
/// at shared grid points. factor must divide n_steps.
NoisePath coarsen(const NoisePath& fine, std::size_t factor);

}  // namespace roucir::noise
