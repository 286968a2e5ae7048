#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "roucir/models.hpp"
#include "roucir/noise.hpp"
#include "roucir/schemes.hpp"

using namespace roucir;
using models::ModelParams;
using noise::NoiseKind;
using noise::NoisePath;
using noise::TimeGrid;

namespace {

// Bisection root of (1 + b dt/2) y^2 - beta y - c dt/2 on [0, inf), the
// independent oracle for the implicit step.
double bisect_root(double beta, double dt, double b, double c) {
    const auto f = [&](double y) {
        return (1.0 + 0.5 * b * dt) * y * y - beta * y - 0.5 * c * dt;
    };
    double lo = 0.0, hi = 1.0;
    while (f(hi) < 0.0) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

NoisePath manual_bm(const TimeGrid& grid, std::vector<double> increments) {
    NoisePath path{grid, NoiseKind::BrownianMotion, 0.5, {0, 0}, std::move(increments)};
    return path;
}

double cir_mean(double t, double a, double b, double x0) {
    return a / b + (x0 - a / b) * std::exp(-b * t);
}

}  // namespace

TEST_CASE("drift numerator per noise kind") {
    ModelParams p;
    p.a = 0.5;
    p.sigma = 1.0;
    p.epsilon = 0.1;
    CHECK(schemes::drift_numerator(p, NoiseKind::BrownianMotion) == doctest::Approx(0.35));
    CHECK(schemes::drift_numerator(p, NoiseKind::FractionalBrownianMotion) ==
          doctest::Approx(0.6));
    p.a = 0.25;
    p.epsilon = 0.0;
    CHECK(schemes::drift_numerator(p, NoiseKind::BrownianMotion) == 0.0);
}

TEST_CASE("CIR Euler: absorbing zero and ODE fixed point") {
    TimeGrid grid(1.0, 10);
    ModelParams zero;
    zero.y0 = 0.0;
    zero.a = 0.0;
    zero.b = 0.0;
    zero.sigma = 2.0;
    const auto absorbed = schemes::euler_cir_full_truncation(zero, manual_bm(grid, std::vector<double>(10, 0.3)));
    for (double v : absorbed.values) CHECK(v == 0.0);

    ModelParams fixed;
    fixed.y0 = 1.0;
    fixed.a = 1.0;
    fixed.b = 1.0;
    fixed.sigma = 0.0;
    const auto constant = schemes::euler_cir_full_truncation(
        fixed, noise::generate_bm_increments(grid, {11, 0}));
    for (double v : constant.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("CIR Euler rejects fractional noise") {
    ModelParams p;
    p.y0 = 1.0;
    p.a = 0.5;
    const auto fbm = noise::generate_fbm_increments(TimeGrid(1.0, 16), 0.7, {1, 1});
    CHECK_THROWS_AS(schemes::euler_cir_full_truncation(p, fbm), std::invalid_argument);
}

TEST_CASE("CIR Euler terminal mean matches the mean ODE") {
    // m' = a - b m from taking expectations; 5000 replications at dt = 1e-3.
    ModelParams p;
    p.y0 = 1.0;
    p.a = 0.25;
    p.b = 1.0;
    p.sigma = 1.0;
    TimeGrid grid(1.0, 1000);
    const std::size_t reps = 5000;
    double sum = 0.0, ss = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
        const double x =
            schemes::euler_cir_full_truncation(p, noise::generate_bm_increments(grid, {12, r}))
                .values.back();
        sum += x;
        ss += x * x;
    }
    const double mean = sum / reps;
    const double sd = std::sqrt((ss - reps * mean * mean) / (reps - 1.0));
    const double target = cir_mean(1.0, p.a, p.b, 1.0);  // 0.25 + 0.75 e^{-1}
    CHECK(target == doctest::Approx(0.52590958087858174).epsilon(1e-15));
    CHECK(std::abs(mean - target) <= 3.0 * sd / std::sqrt(double(reps)));
}

TEST_CASE("implicit step: fixed point and frozen quadratic roots") {
    CHECK(schemes::implicit_sqrt_step(1.0, 0.5, 0.0, 0.0, 1.0, 0.0) == 1.0);

    // 1.005 y^2 - y - 0.00005 = 0 (y=1, dt=0.01, b=1, sigma=1, c=0.01).
    const double root_a = schemes::implicit_sqrt_step(1.0, 0.01, 0.0, 1.0, 1.0, 0.01);
    CHECK(root_a == doctest::Approx(0.99507487310964302).epsilon(1e-14));
    CHECK(root_a == doctest::Approx(bisect_root(1.0, 0.01, 1.0, 0.01)).epsilon(1e-12));

    // Large negative shock: beta = -0.4, root stays strictly positive.
    const double root_b = schemes::implicit_sqrt_step(0.1, 0.01, -1.0, 1.0, 1.0, 0.01);
    CHECK(root_b > 0.0);
    CHECK(root_b == doctest::Approx(1.2496076682696946e-4).epsilon(1e-12));
    CHECK(root_b == doctest::Approx(bisect_root(-0.4, 0.01, 1.0, 0.01)).epsilon(1e-9));

    CHECK_THROWS_AS(schemes::implicit_sqrt_step(1.0, 0.0, 0.0, 1.0, 1.0, 0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(schemes::implicit_sqrt_step(1.0, 0.1, 0.0, 1.0, 1.0, -0.1),
                    std::invalid_argument);
}

TEST_CASE("implicit step solves the quadratic and is monotone in its inputs") {
    std::mt19937_64 rng(321);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const double y = 2.0 * u01(rng);
        const double dt = 1e-4 + 0.4 * u01(rng);
        const double b = 3.0 * u01(rng);
        const double sigma = 2.0 * u01(rng);
        const double c = 0.5 * u01(rng);
        const double dw = normal(rng);
        const double root = schemes::implicit_sqrt_step(y, dt, dw, b, sigma, c);
        const double beta = y + 0.5 * sigma * dw;
        CHECK(root >= 0.0);
        const double residual = (1.0 + 0.5 * b * dt) * root * root - beta * root - 0.5 * c * dt;
        CHECK(std::abs(residual) <= 1e-12 * (1.0 + root * root));
        if (c > 0.0) CHECK(root > 0.0);

        // Step map is nondecreasing in c and in the previous value.
        CHECK(schemes::implicit_sqrt_step(y, dt, dw, b, sigma, c + 0.1) >= root);
        CHECK(schemes::implicit_sqrt_step(y + 0.1, dt, dw, b, sigma, c) >= root);
    }
}

TEST_CASE("square-root process: deterministic decay and positivity") {
    // sigma = 0 and c = 0 degenerate to y_{k+1} = y_k / (1 + b dt / 2).
    ModelParams p;
    p.y0 = 1.0;
    p.a = 0.0;
    p.b = 1.0;
    p.sigma = 0.0;
    TimeGrid grid(1.0, 10);  // dt = 0.1
    const auto path = schemes::simulate_sqrt_process(p, manual_bm(grid, std::vector<double>(10, 0.5)));
    double expected = 1.0;
    for (double v : path.values) {
        CHECK(v == doctest::Approx(expected).epsilon(1e-15));
        expected /= 1.05;
    }

    ModelParams noisy;
    noisy.y0 = 0.25;
    noisy.a = 0.25;
    noisy.b = 1.0;
    noisy.sigma = 1.0;
    noisy.epsilon = 1e-4;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto y = schemes::simulate_sqrt_process(
            noisy, noise::generate_bm_increments(TimeGrid(2.0, 2000), {13, seed}));
        for (double v : y.values) CHECK(v > 0.0);
    }
}

TEST_CASE("square-root process orders pathwise in epsilon under shared noise") {
    ModelParams base;
    base.y0 = 0.25;
    base.a = 0.25;
    base.b = 1.0;
    base.sigma = 1.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto bm = noise::generate_bm_increments(TimeGrid(2.0, 1000), {14, seed});
        ModelParams hi = base, lo = base;
        hi.epsilon = 0.2;
        lo.epsilon = 0.05;
        const auto y_hi = schemes::simulate_sqrt_process(hi, bm);
        const auto y_lo = schemes::simulate_sqrt_process(lo, bm);
        for (std::size_t k = 0; k < y_hi.values.size(); ++k)
            CHECK(y_hi.values[k] >= y_lo.values[k] - 1e-12);
    }
}

TEST_CASE("square-root process rejects out-of-scope drift") {
    ModelParams sub;
    sub.y0 = 1.0;
    sub.a = 0.1;
    sub.sigma = 1.0;  // c = -0.15
    const auto bm = noise::generate_bm_increments(TimeGrid(1.0, 16), {15, 0});
    CHECK_THROWS_AS(schemes::simulate_sqrt_process(sub, bm), std::invalid_argument);

    ModelParams frac;
    frac.y0 = 1.0;
    frac.a = 0.0;
    frac.epsilon = 0.0;
    frac.hurst = 0.7;
    const auto fbm = noise::generate_fbm_increments(TimeGrid(1.0, 16), 0.7, {15, 1});
    CHECK_THROWS_AS(schemes::simulate_sqrt_process(frac, fbm), std::invalid_argument);
}

TEST_CASE("projected scheme: no noise means no reflection") {
    ModelParams p;
    p.y0 = 1.0;
    p.b = 1.0;
    p.sigma = 0.0;
    TimeGrid grid(1.0, 10);
    const auto out = schemes::simulate_rou_projected(p, manual_bm(grid, std::vector<double>(10, 1.0)));
    double expected = 1.0;
    for (std::size_t k = 0; k < out.path.values.size(); ++k) {
        CHECK(out.path.values[k] == doctest::Approx(expected).epsilon(1e-15));
        expected *= 0.95;
        CHECK(out.reflection.values[k] == 0.0);
    }
    CHECK(out.clamp_events.empty());
}

TEST_CASE("projected scheme clamps and records the clamp") {
    // Y = 0.1, b = 1, dt = 0.01, (sigma/2) dNoise = -0.2: pre-projection
    // -0.1005, so the value clamps to 0 with magnitude 0.1005.
    ModelParams p;
    p.y0 = 0.1;
    p.b = 1.0;
    p.sigma = 1.0;
    const auto out = schemes::simulate_rou_projected(p, manual_bm(TimeGrid(0.01, 1), {-0.4}));
    CHECK(out.path.values[1] == 0.0);
    REQUIRE(out.clamp_events.size() == 1);
    CHECK(out.clamp_events[0].step == 0);
    CHECK(out.clamp_events[0].magnitude == doctest::Approx(0.1005).epsilon(1e-12));
    CHECK(out.reflection.values[1] == doctest::Approx(0.1005).epsilon(1e-12));
}

TEST_CASE("projected scheme with b=0 is the discrete Skorokhod map") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        ModelParams p;
        p.y0 = 0.3;
        p.b = 0.0;
        p.sigma = 1.5;
        const auto bm = noise::generate_bm_increments(TimeGrid(1.0, 256), {16, seed});
        const auto out = schemes::simulate_rou_projected(p, bm);
        // Oracle: Y_k = P_k + max(0, max_j -P_j) with P the free path.
        double free = p.y0, running_max = 0.0;
        for (std::size_t k = 0; k < bm.increments.size(); ++k) {
            free += 0.5 * p.sigma * bm.increments[k];
            running_max = std::max(running_max, -free);
            CHECK(out.path.values[k + 1] ==
                  doctest::Approx(free + running_max).epsilon(1e-12));
        }
    }
}

TEST_CASE("explicit recursions reject unstable dt") {
    ModelParams p;
    p.y0 = 1.0;
    p.b = 1.0;
    p.sigma = 1.0;
    const auto bm = noise::generate_bm_increments(TimeGrid(10.0, 4), {17, 0});  // dt = 2.5
    CHECK_THROWS_AS(schemes::simulate_ou(p, bm), std::invalid_argument);
    CHECK_THROWS_AS(schemes::simulate_rou_projected(p, bm), std::invalid_argument);
}

TEST_CASE("OU scheme: linear recursion, pure integration, terminal mean") {
    ModelParams decay;
    decay.y0 = 1.0;
    decay.b = 2.0;
    decay.sigma = 0.0;
    TimeGrid grid(1.0, 10);  // dt = 0.1, factor 0.9
    const auto path = schemes::simulate_ou(decay, manual_bm(grid, std::vector<double>(10, 1.0)));
    double expected = 1.0;
    for (double v : path.values) {
        CHECK(v == doctest::Approx(expected).epsilon(1e-14));
        expected *= 0.9;
    }

    ModelParams pure;
    pure.y0 = 0.5;
    pure.b = 0.0;
    pure.sigma = 2.0;
    const auto bm = noise::generate_bm_increments(grid, {18, 0});
    const auto integ = schemes::simulate_ou(pure, bm);
    double level = 0.5;
    for (std::size_t k = 0; k < bm.increments.size(); ++k) {
        level += 0.5 * pure.sigma * bm.increments[k];
        CHECK(integ.values[k + 1] == level);
    }

    ModelParams ou;
    ou.y0 = 1.0;
    ou.b = 1.0;
    ou.sigma = 1.0;
    TimeGrid fine(1.0, 1000);
    const std::size_t reps = 5000;
    double sum = 0.0, ss = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
        const double u =
            schemes::simulate_ou(ou, noise::generate_bm_increments(fine, {19, r})).values.back();
        sum += u;
        ss += u * u;
    }
    const double mean = sum / reps;
    const double sd = std::sqrt((ss - reps * mean * mean) / (reps - 1.0));
    CHECK(std::abs(mean - 0.60653065971263342) <= 3.0 * sd / std::sqrt(double(reps)));
}

TEST_CASE("squared-OU sum: degenerate cases and input checks") {
    TimeGrid grid(1.0, 10);
    ModelParams constant;
    constant.y0 = 1.0;
    constant.b = 0.0;
    constant.sigma = 0.0;
    std::vector<NoisePath> one{noise::generate_bm_increments(grid, {20, 0})};
    const auto c1 = schemes::ou_squared_sum(1, constant, one);
    for (double v : c1.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));

    ModelParams decay;
    decay.y0 = 1.0;
    decay.b = 2.0;
    decay.sigma = 0.0;
    std::vector<NoisePath> two{noise::generate_bm_increments(grid, {20, 1}),
                               noise::generate_bm_increments(grid, {20, 2})};
    const auto c2 = schemes::ou_squared_sum(2, decay, two);
    double expected = 1.0;
    for (double v : c2.values) {
        CHECK(v == doctest::Approx(2.0 * expected * expected).epsilon(1e-13));
        expected *= 0.9;
    }

    CHECK_THROWS_AS(schemes::ou_squared_sum(2, decay, one), std::invalid_argument);
    std::vector<NoisePath> mixed{noise::generate_bm_increments(grid, {20, 3}),
                                 noise::generate_bm_increments(TimeGrid(2.0, 10), {20, 4})};
    CHECK_THROWS_AS(schemes::ou_squared_sum(2, decay, mixed), std::invalid_argument);
}

TEST_CASE("noiseless grid refinement converges at first order") {
    ModelParams p;
    p.y0 = 1.0;
    p.b = 1.0;
    p.sigma = 0.0;
    const double target = std::exp(-0.5);  // dU = -(b/2)U dt at T = 1
    double previous_error = 0.0;
    for (std::size_t n : {100, 200, 400}) {
        const auto path = schemes::simulate_ou(
            p, manual_bm(TimeGrid(1.0, n), std::vector<double>(n, 0.0)));
        const double error = std::abs(path.values.back() - target);
        if (previous_error > 0.0) {
            const double ratio = previous_error / error;
            CHECK(ratio > 1.7);
            CHECK(ratio < 2.3);
        }
        previous_error = error;
    }
}
