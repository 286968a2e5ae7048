#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "roucir/io.hpp"
#include "roucir/noise.hpp"

using namespace roucir;
using noise::TimeGrid;

namespace {

// Long-double evaluation of the fBm covariance, independent of the library
// path (which uses double std::pow).
long double fbm_cov_oracle(long double s, long double t, long double h) {
    return 0.5L * (std::pow(s, 2 * h) + std::pow(t, 2 * h) - std::pow(std::abs(t - s), 2 * h));
}

struct LagStat {
    double mean = 0.0;
    double se = 0.0;
};

// Average over paths of the per-path mean lagged product of increments.
LagStat lag_product(const std::vector<noise::NoisePath>& paths, std::size_t lag) {
    std::vector<double> per_path;
    per_path.reserve(paths.size());
    for (const auto& p : paths) {
        double acc = 0.0;
        const std::size_t n = p.increments.size();
        for (std::size_t j = 0; j + lag < n; ++j) acc += p.increments[j] * p.increments[j + lag];
        per_path.push_back(acc / static_cast<double>(n - lag));
    }
    double mean = 0.0;
    for (double v : per_path) mean += v;
    mean /= static_cast<double>(per_path.size());
    double ss = 0.0;
    for (double v : per_path) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(per_path.size() - 1));
    return {mean, sd / std::sqrt(static_cast<double>(per_path.size()))};
}

}  // namespace

TEST_CASE("TimeGrid validity and layout") {
    TimeGrid grid(2.0, 4);
    CHECK(grid.dt() == doctest::Approx(0.5));
    CHECK(grid.time(0) == 0.0);
    CHECK(grid.time(4) == 2.0);
    CHECK_THROWS_AS(TimeGrid(0.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(TimeGrid(-1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(TimeGrid(1.0, 0), std::invalid_argument);
}

TEST_CASE("Brownian increments are deterministic in the seed") {
    TimeGrid grid(1.0, 64);
    const auto a = noise::generate_bm_increments(grid, {42, 7});
    const auto b = noise::generate_bm_increments(grid, {42, 7});
    CHECK(a.increments == b.increments);
    const auto c = noise::generate_bm_increments(grid, {42, 8});
    CHECK(a.increments != c.increments);
    CHECK(a.increments.size() == 64);
    CHECK(a.levels().front() == 0.0);
    CHECK(a.levels().size() == 65);
}

TEST_CASE("Brownian increments match Gaussian moments") {
    // 1e5 increments with dt = 0.01: mean within 3*(0.1/sqrt(1e5)), variance
    // within 3 standard errors of 0.01 (standard-error oracle).
    TimeGrid grid(1000.0, 100000);
    const auto path = noise::generate_bm_increments(grid, {9001, 0});
    const double n = 1e5;
    double mean = 0.0;
    for (double v : path.increments) mean += v;
    mean /= n;
    CHECK(std::abs(mean) <= 3.0 * 0.1 / std::sqrt(n));
    double var = 0.0;
    for (double v : path.increments) var += (v - mean) * (v - mean);
    var /= (n - 1.0);
    const double var_se = std::sqrt(2.0 / (n - 1.0)) * 0.01;
    CHECK(std::abs(var - 0.01) <= 3.0 * var_se);
}

TEST_CASE("fbm_covariance closed form") {
    CHECK(noise::fbm_covariance(1.0, 1.0, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(noise::fbm_covariance(1.0, 2.0, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
    // 2^{0.4}, frozen from high-precision evaluation.
    CHECK(noise::fbm_covariance(1.0, 2.0, 0.7) ==
          doctest::Approx(1.3195079107728942).epsilon(1e-15));
    CHECK(static_cast<double>(fbm_cov_oracle(1.0L, 2.0L, 0.7L)) ==
          doctest::Approx(noise::fbm_covariance(1.0, 2.0, 0.7)).epsilon(1e-15));
    CHECK_THROWS_AS(noise::fbm_covariance(-1.0, 1.0, 0.7), std::domain_error);
    CHECK_THROWS_AS(noise::fbm_covariance(1.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(noise::fbm_covariance(1.0, 1.0, 0.0), std::domain_error);
}

TEST_CASE("fgn_autocovariance values") {
    CHECK(noise::fgn_autocovariance(0, 0.5) == doctest::Approx(1.0));
    CHECK(noise::fgn_autocovariance(1, 0.5) == doctest::Approx(0.0));
    CHECK(noise::fgn_autocovariance(5, 0.5) == doctest::Approx(0.0));
    // 0.5*(2^{1.4} - 2), frozen from high-precision evaluation.
    CHECK(noise::fgn_autocovariance(1, 0.7) ==
          doctest::Approx(0.31950791077289426).epsilon(1e-15));
    CHECK(noise::fgn_autocovariance(-1, 0.7) == noise::fgn_autocovariance(1, 0.7));
}

TEST_CASE("fBm sampler is deterministic and reports its method") {
    TimeGrid grid(1.0, 100);
    for (double h : {0.5, 0.6, 0.7, 0.8, 0.9}) {
        noise::FbmSampler sampler(grid, h);
        CHECK(sampler.method_used() == noise::FbmMethod::DaviesHarte);
        CHECK(!sampler.hosking_fallback());
        const auto a = sampler.sample({5, 1});
        const auto b = sampler.sample({5, 1});
        CHECK(a.increments == b.increments);
        CHECK(a.increments.size() == 100);
        CHECK(a.hurst == h);
        CHECK(a.kind == noise::NoiseKind::FractionalBrownianMotion);
    }
    const auto direct = noise::generate_fbm_increments(grid, 0.7, {5, 1});
    CHECK(direct.increments == noise::FbmSampler(grid, 0.7).sample({5, 1}).increments);
    CHECK_THROWS_AS(noise::FbmSampler(grid, 0.4), std::domain_error);
    CHECK_THROWS_AS(noise::FbmSampler(grid, 1.0), std::domain_error);
}

TEST_CASE("fBm with H=1/2 reduces to white Gaussian increments") {
    TimeGrid grid(16.0, 16);  // dt = 1
    noise::FbmSampler sampler(grid, 0.5);
    std::vector<noise::NoisePath> paths;
    paths.reserve(10000);
    for (std::size_t i = 0; i < 10000; ++i) paths.push_back(sampler.sample({77, i}));
    for (std::size_t lag : {1u, 2u, 3u}) {
        const auto stat = lag_product(paths, lag);
        INFO("lag ", lag, " mean ", stat.mean, " se ", stat.se);
        CHECK(std::abs(stat.mean) <= 3.0 * stat.se);
    }
    const auto var = lag_product(paths, 0);
    CHECK(std::abs(var.mean - 1.0) <= 3.0 * var.se);
}

TEST_CASE("fBm H=0.7 lag-1 autocovariance matches the fGn formula") {
    TimeGrid grid(16.0, 16);  // dt = 1
    noise::FbmSampler sampler(grid, 0.7);
    std::vector<noise::NoisePath> paths;
    paths.reserve(10000);
    for (std::size_t i = 0; i < 10000; ++i) paths.push_back(sampler.sample({78, i}));
    const auto stat = lag_product(paths, 1);
    INFO("sample ", stat.mean, " se ", stat.se);
    CHECK(std::abs(stat.mean - 0.31950791077289426) <= 3.0 * stat.se);
}

TEST_CASE("validate_noise_covariance accepts healthy generators") {
    TimeGrid grid(1.0, 64);
    std::vector<noise::NoisePath> bm_paths;
    bm_paths.reserve(10000);
    for (std::size_t i = 0; i < 10000; ++i)
        bm_paths.push_back(noise::generate_bm_increments(grid, {80, i}));
    const auto bm_report = noise::validate_noise_covariance(bm_paths, 0.5);
    INFO("bm max |z| = ", bm_report.max_abs_z);
    CHECK(bm_report.max_abs_z < 4.0);
    CHECK(bm_report.checks.size() == 5);

    noise::FbmSampler sampler(grid, 0.8);
    std::vector<noise::NoisePath> fbm_paths;
    fbm_paths.reserve(10000);
    for (std::size_t i = 0; i < 10000; ++i) fbm_paths.push_back(sampler.sample({81, i}));
    const auto fbm_report = noise::validate_noise_covariance(fbm_paths, 0.8);
    INFO("fbm max |z| = ", fbm_report.max_abs_z);
    CHECK(fbm_report.max_abs_z < 4.0);
}

TEST_CASE("validate_noise_covariance rejects bad inputs") {
    TimeGrid grid(1.0, 16);
    std::vector<noise::NoisePath> single{noise::generate_bm_increments(grid, {1, 0})};
    CHECK_THROWS_AS(noise::validate_noise_covariance(single, 0.5), std::invalid_argument);

    std::vector<noise::NoisePath> mixed;
    for (std::size_t i = 0; i < 150; ++i)
        mixed.push_back(noise::generate_bm_increments(grid, {1, i}));
    mixed.push_back(noise::generate_bm_increments(TimeGrid(2.0, 16), {1, 999}));
    CHECK_THROWS_AS(noise::validate_noise_covariance(mixed, 0.5), std::invalid_argument);
}

TEST_CASE("Hosking recursion agrees with the covariance oracle") {
    TimeGrid grid(1.0, 32);
    noise::FbmSampler sampler(grid, 0.7, noise::FbmMethod::Hosking);
    CHECK(sampler.method_used() == noise::FbmMethod::Hosking);
    CHECK(!sampler.hosking_fallback());  // explicitly requested, not a fallback
    const auto a = sampler.sample({91, 3});
    CHECK(a.increments == sampler.sample({91, 3}).increments);

    std::vector<noise::NoisePath> paths;
    paths.reserve(5000);
    for (std::size_t i = 0; i < 5000; ++i) paths.push_back(sampler.sample({92, i}));
    const auto report = noise::validate_noise_covariance(paths, 0.7);
    INFO("hosking max |z| = ", report.max_abs_z);
    CHECK(report.max_abs_z < 4.0);
}

TEST_CASE("Increment variance depends on dt only (stationarity across horizons)") {
    // (T, n) and (2T, 2n) share dt, so marginal increment variances agree
    // with dt^{2H} within Monte Carlo error.
    const double hurst = 0.8;
    const double dt = 1.0 / 256.0;
    const double theory = std::pow(dt, 2.0 * hurst);
    for (const TimeGrid& grid : {TimeGrid(1.0, 256), TimeGrid(2.0, 512)}) {
        noise::FbmSampler sampler(grid, hurst);
        std::vector<noise::NoisePath> paths;
        paths.reserve(2000);
        for (std::size_t i = 0; i < 2000; ++i) paths.push_back(sampler.sample({93, i}));
        const auto stat = lag_product(paths, 0);
        INFO("T=", grid.horizon, " var ", stat.mean, " theory ", theory);
        CHECK(std::abs(stat.mean - theory) <= 4.0 * stat.se);
    }
}

TEST_CASE("coarsen block-sums increments exactly") {
    TimeGrid grid(1.0, 8);
    auto path = noise::generate_bm_increments(grid, {3, 3});
    const auto coarse = noise::coarsen(path, 4);
    CHECK(coarse.grid.n_steps == 2);
    CHECK(coarse.grid.horizon == 1.0);
    CHECK(coarse.increments[0] ==
          path.increments[0] + path.increments[1] + path.increments[2] + path.increments[3]);
    CHECK(noise::coarsen(path, 1).increments == path.increments);
    CHECK_THROWS_AS(noise::coarsen(path, 3), std::invalid_argument);
    CHECK_THROWS_AS(noise::coarsen(path, 0), std::invalid_argument);
}

TEST_CASE("noise CSV dump round-trips at full precision") {
    TimeGrid grid(1.0, 8);
    const auto path = noise::generate_bm_increments(grid, {4, 4});
    std::ostringstream out;
    io::write_noise_csv(out, path);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,increment,cum");
    std::size_t rows = 0;
    std::string line;
    double cum = 0.0;
    while (std::getline(in, line)) {
        const auto c1 = line.find(','), c2 = line.find(',', c1 + 1);
        const double inc = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        CHECK(inc == path.increments[rows]);  // 17 significant digits round-trip
        cum += inc;
        ++rows;
    }
    CHECK(rows == 8);
    CHECK(cum == doctest::Approx(path.levels().back()).epsilon(1e-15));
}
