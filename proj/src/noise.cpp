#include "roucir/noise.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>

namespace roucir::noise {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t stream_seed(RngSeed seed) {
    return splitmix64(splitmix64(seed.master) ^ (0x9E3779B97F4A7C15ULL * (seed.stream + 1)));
}

void require_valid(const TimeGrid& grid) {
    if (!(grid.horizon > 0.0) || !std::isfinite(grid.horizon))
        throw std::invalid_argument("TimeGrid: horizon must be positive and finite");
    if (grid.n_steps < 1)
        throw std::invalid_argument("TimeGrid: n_steps must be >= 1");
}

// FFTW plan creation/destruction is not thread-safe; execution on distinct
// arrays is.
std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

TimeGrid::TimeGrid(double horizon_, std::size_t n_steps_) : horizon(horizon_), n_steps(n_steps_) {
    require_valid(*this);
}

std::mt19937_64 make_rng(RngSeed seed) {
    return std::mt19937_64(stream_seed(seed));
}

const char* to_string(NoiseKind kind) {
    return kind == NoiseKind::BrownianMotion ? "brownian" : "fractional";
}

const char* to_string(FbmMethod method) {
    return method == FbmMethod::DaviesHarte ? "davies-harte" : "hosking";
}

std::vector<double> NoisePath::levels() const {
    std::vector<double> out(increments.size() + 1);
    out[0] = 0.0;
    for (std::size_t k = 0; k < increments.size(); ++k) out[k + 1] = out[k] + increments[k];
    return out;
}

NoisePath generate_bm_increments(const TimeGrid& grid, RngSeed seed) {
    require_valid(grid);
    NoisePath path{grid, NoiseKind::BrownianMotion, 0.5, seed, {}};
    path.increments.resize(grid.n_steps);
    auto rng = make_rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double sqrt_dt = std::sqrt(grid.dt());
    for (auto& inc : path.increments) inc = sqrt_dt * normal(rng);
    return path;
}

double fbm_covariance(double s, double t, double hurst) {
    if (s < 0.0 || t < 0.0) throw std::domain_error("fbm_covariance: times must be nonnegative");
    if (!(hurst > 0.0 && hurst < 1.0))
        throw std::domain_error("fbm_covariance: hurst must lie in (0,1)");
    const double two_h = 2.0 * hurst;
    return 0.5 * (std::pow(s, two_h) + std::pow(t, two_h) - std::pow(std::abs(t - s), two_h));
}

double fgn_autocovariance(std::int64_t lag, double hurst) {
    if (!(hurst > 0.0 && hurst < 1.0))
        throw std::domain_error("fgn_autocovariance: hurst must lie in (0,1)");
    const double k = static_cast<double>(std::llabs(lag));
    const double two_h = 2.0 * hurst;
    return 0.5 * (std::pow(k + 1.0, two_h) - 2.0 * std::pow(k, two_h) +
                  std::pow(std::abs(k - 1.0), two_h));
}

struct FbmSampler::Impl {
    TimeGrid grid;
    double hurst = 0.5;
    FbmMethod requested = FbmMethod::DaviesHarte;
    FbmMethod used = FbmMethod::DaviesHarte;
    int doublings = 0;

    // Davies-Harte state
    std::size_t m = 0;                 // circulant size, power of two
    std::vector<double> sqrt_eigs;     // sqrt of embedding eigenvalues
    fftw_plan plan = nullptr;

    // Hosking state
    std::vector<double> gamma;         // unit-spacing autocovariances 0..n-1

    ~Impl() {
        if (plan != nullptr) {
            std::lock_guard<std::mutex> lock(fftw_planner_mutex());
            fftw_destroy_plan(plan);
        }
    }

    void run_fft(std::vector<std::complex<double>>& in,
                 std::vector<std::complex<double>>& out) const {
        fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                         reinterpret_cast<fftw_complex*>(out.data()));
    }

    // Builds the circulant row for padding n' and returns its eigenvalues.
    // Returns false when any eigenvalue is meaningfully negative.
    bool try_embedding(std::size_t npad) {
        m = 2 * npad;
        {
            std::lock_guard<std::mutex> lock(fftw_planner_mutex());
            if (plan != nullptr) fftw_destroy_plan(plan);
            // Out-of-place, unaligned plan so execute-on-new-arrays is valid
            // for any distinct heap buffers.
            std::vector<std::complex<double>> scratch_in(m), scratch_out(m);
            plan = fftw_plan_dft_1d(static_cast<int>(m),
                                    reinterpret_cast<fftw_complex*>(scratch_in.data()),
                                    reinterpret_cast<fftw_complex*>(scratch_out.data()),
                                    FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        }
        std::vector<std::complex<double>> row(m), eigs(m);
        for (std::size_t j = 0; j <= npad; ++j)
            row[j] = fgn_autocovariance(static_cast<std::int64_t>(j), hurst);
        for (std::size_t j = 1; j < npad; ++j) row[m - j] = row[j];
        run_fft(row, eigs);

        double max_eig = 0.0, min_eig = 0.0;
        sqrt_eigs.resize(m);
        for (std::size_t k = 0; k < m; ++k) {
            const double lambda = eigs[k].real();
            max_eig = std::max(max_eig, lambda);
            min_eig = std::min(min_eig, lambda);
            sqrt_eigs[k] = lambda;
        }
        const double tol = 1e-12 * std::max(1.0, max_eig);
        if (min_eig < -tol) return false;
        for (auto& v : sqrt_eigs) v = std::sqrt(std::max(v, 0.0));
        return true;
    }

    std::vector<double> sample_davies_harte(std::mt19937_64& rng) const {
        std::normal_distribution<double> normal(0.0, 1.0);
        const std::size_t half = m / 2;
        const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m));
        const double inv_sqrt_2m = 1.0 / std::sqrt(2.0 * static_cast<double>(m));

        std::vector<std::complex<double>> coeffs(m), freq(m);
        coeffs[0] = sqrt_eigs[0] * normal(rng) * inv_sqrt_m;
        for (std::size_t k = 1; k < half; ++k) {
            const double u = normal(rng);
            const double v = normal(rng);
            coeffs[k] = sqrt_eigs[k] * inv_sqrt_2m * std::complex<double>(u, v);
            coeffs[m - k] = std::conj(coeffs[k]);
        }
        coeffs[half] = sqrt_eigs[half] * normal(rng) * inv_sqrt_m;
        run_fft(coeffs, freq);

        const double scale = std::pow(grid.dt(), hurst);
        std::vector<double> out(grid.n_steps);
        for (std::size_t j = 0; j < grid.n_steps; ++j) out[j] = scale * freq[j].real();
        return out;
    }

    // Durbin-Levinson recursion; exact but O(n^2).
    std::vector<double> sample_hosking(std::mt19937_64& rng) const {
        std::normal_distribution<double> normal(0.0, 1.0);
        const std::size_t n = grid.n_steps;
        const double scale = std::pow(grid.dt(), hurst);

        std::vector<double> x(n), phi, phi_prev;
        double v = gamma[0];
        x[0] = std::sqrt(v) * normal(rng);
        for (std::size_t k = 1; k < n; ++k) {
            double num = gamma[k];
            for (std::size_t j = 1; j < k; ++j) num -= phi_prev[j - 1] * gamma[k - j];
            const double phi_kk = num / v;
            phi.assign(k, 0.0);
            phi[k - 1] = phi_kk;
            for (std::size_t j = 1; j < k; ++j)
                phi[j - 1] = phi_prev[j - 1] - phi_kk * phi_prev[k - j - 1];
            v *= (1.0 - phi_kk * phi_kk);
            double mean = 0.0;
            for (std::size_t j = 1; j <= k; ++j) mean += phi[j - 1] * x[k - j];
            x[k] = mean + std::sqrt(std::max(v, 0.0)) * normal(rng);
            phi_prev = phi;
        }
        for (auto& val : x) val *= scale;
        return x;
    }
};

FbmSampler::FbmSampler(const TimeGrid& grid, double hurst, FbmMethod method)
    : impl_(std::make_unique<Impl>()) {
    require_valid(grid);
    if (!(hurst >= 0.5 && hurst < 1.0))
        throw std::domain_error("FbmSampler: hurst must lie in [1/2, 1)");
    impl_->grid = grid;
    impl_->hurst = hurst;
    impl_->requested = method;
    impl_->used = method;

    if (method == FbmMethod::DaviesHarte) {
        std::size_t npad = 1;
        while (npad < grid.n_steps) npad *= 2;
        if (!impl_->try_embedding(npad)) {
            impl_->doublings = 1;
            if (!impl_->try_embedding(2 * npad)) impl_->used = FbmMethod::Hosking;
        }
    }
    if (impl_->used == FbmMethod::Hosking) {
        impl_->gamma.resize(grid.n_steps);
        for (std::size_t j = 0; j < grid.n_steps; ++j)
            impl_->gamma[j] = fgn_autocovariance(static_cast<std::int64_t>(j), hurst);
    }
}

FbmSampler::~FbmSampler() = default;
FbmSampler::FbmSampler(FbmSampler&&) noexcept = default;
FbmSampler& FbmSampler::operator=(FbmSampler&&) noexcept = default;

NoisePath FbmSampler::sample(RngSeed seed) const {
    NoisePath path{impl_->grid, NoiseKind::FractionalBrownianMotion, impl_->hurst, seed, {}};
    auto rng = make_rng(seed);
    path.increments = impl_->used == FbmMethod::DaviesHarte ? impl_->sample_davies_harte(rng)
                                                            : impl_->sample_hosking(rng);
    return path;
}

const TimeGrid& FbmSampler::grid() const { return impl_->grid; }
double FbmSampler::hurst() const { return impl_->hurst; }
FbmMethod FbmSampler::method_requested() const { return impl_->requested; }
FbmMethod FbmSampler::method_used() const { return impl_->used; }
int FbmSampler::padding_doublings() const { return impl_->doublings; }
bool FbmSampler::hosking_fallback() const {
    return impl_->requested == FbmMethod::DaviesHarte && impl_->used == FbmMethod::Hosking;
}

NoisePath generate_fbm_increments(const TimeGrid& grid, double hurst, RngSeed seed,
                                  FbmMethod method) {
    return FbmSampler(grid, hurst, method).sample(seed);
}

StatReport validate_noise_covariance(const std::vector<NoisePath>& paths, double hurst) {
    const double T = paths.empty() ? 1.0 : paths.front().grid.horizon;
    return validate_noise_covariance(paths, hurst,
                                     {{0.25 * T, 0.25 * T},
                                      {0.5 * T, 0.5 * T},
                                      {T, T},
                                      {0.25 * T, 0.75 * T},
                                      {0.5 * T, T}});
}

StatReport validate_noise_covariance(const std::vector<NoisePath>& paths, double hurst,
                                     const std::vector<std::pair<double, double>>& st_pairs) {
    if (paths.size() < 100)
        throw std::invalid_argument("validate_noise_covariance: need at least 100 paths");
    const TimeGrid grid = paths.front().grid;
    for (const auto& p : paths)
        if (!(p.grid == grid))
            throw std::invalid_argument("validate_noise_covariance: heterogeneous grids");

    const auto snap = [&](double t) {
        auto idx = static_cast<std::size_t>(
            std::llround(t / grid.horizon * static_cast<double>(grid.n_steps)));
        return std::min(idx, grid.n_steps);
    };

    std::vector<std::vector<double>> levels;
    levels.reserve(paths.size());
    for (const auto& p : paths) levels.push_back(p.levels());

    StatReport report;
    report.n_paths = paths.size();
    const double n = static_cast<double>(paths.size());
    for (const auto& [s_req, t_req] : st_pairs) {
        const std::size_t is = snap(s_req), it = snap(t_req);
        const double s = grid.time(is), t = grid.time(it);
        double acc = 0.0;
        for (const auto& lv : levels) acc += lv[is] * lv[it];
        const double sample_cov = acc / n;
        const double theory = fbm_covariance(s, t, hurst);
        const double var_s = fbm_covariance(s, s, hurst);
        const double var_t = fbm_covariance(t, t, hurst);
        // Var(XY) = Var(X)Var(Y) + Cov(X,Y)^2 for centered jointly Gaussian X,Y.
        const double se = std::sqrt((var_s * var_t + theory * theory) / n);
        const double z = se > 0.0 ? (sample_cov - theory) / se : 0.0;
        report.checks.push_back({s, t, theory, sample_cov, z});
        report.max_abs_z = std::max(report.max_abs_z, std::abs(z));
    }
    return report;
}

NoisePath coarsen(const NoisePath& fine, std::size_t factor) {
    if (factor < 1) throw std::invalid_argument("coarsen: factor must be >= 1");
    if (fine.grid.n_steps % factor != 0)
        throw std::invalid_argument("coarsen: factor must divide n_steps");
    if (factor == 1) return fine;
    NoisePath coarse{TimeGrid(fine.grid.horizon, fine.grid.n_steps / factor), fine.kind,
                     fine.hurst, fine.seed, {}};
    coarse.increments.resize(coarse.grid.n_steps, 0.0);
    for (std::size_t k = 0; k < coarse.grid.n_steps; ++k)
        for (std::size_t j = 0; j < factor; ++j)
            coarse.increments[k] += fine.increments[k * factor + j];
    return coarse;
}

}  // namespace roucir::noise
