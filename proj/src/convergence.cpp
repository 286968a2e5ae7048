#include "roucir/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "roucir/reflection.hpp"

namespace roucir::convergence {

namespace {

double sup_gap(std::span<const double> a, std::span<const double> b) {
    double gap = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) gap = std::max(gap, std::abs(a[k] - b[k]));
    return gap;
}

void require_kind_matches(const models::ModelParams& params, const noise::NoisePath& noise) {
    const bool wiener = params.hurst == 0.5;
    if (wiener && noise.kind != noise::NoiseKind::BrownianMotion)
        throw std::invalid_argument("epsilon_ladder: hurst = 1/2 requires Brownian noise");
    if (!wiener) {
        if (noise.kind != noise::NoiseKind::FractionalBrownianMotion)
            throw std::invalid_argument("epsilon_ladder: hurst > 1/2 requires fractional noise");
        if (noise.hurst != params.hurst)
            throw std::invalid_argument("epsilon_ladder: noise Hurst index differs from params");
    }
}

}  // namespace

ConvergenceReport epsilon_ladder(const models::ModelParams& base,
                                 std::span<const double> epsilons,
                                 const noise::NoisePath& noise) {
    if (epsilons.empty()) throw std::invalid_argument("epsilon_ladder: empty epsilon sequence");
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (!(epsilons[i] > 0.0))
            throw std::invalid_argument("epsilon_ladder: epsilons must be positive");
        if (i > 0 && !(epsilons[i] < epsilons[i - 1]))
            throw std::invalid_argument("epsilon_ladder: epsilons must be strictly decreasing");
    }
    if (!(base.y0 > 0.0) || !(base.a >= 0.0) || !(base.b >= 0.0) || !(base.sigma >= 0.0) ||
        !(base.hurst >= 0.5 && base.hurst < 1.0))
        throw std::invalid_argument("epsilon_ladder: invalid base parameters");
    require_kind_matches(base, noise);
    if (base.epsilon != 0.0)
        throw std::invalid_argument("epsilon_ladder: base params must have epsilon = 0");
    if (schemes::drift_numerator(base, noise.kind) != 0.0)
        throw std::invalid_argument(
            "epsilon_ladder: base drift numerator must vanish (critical Wiener base or a = 0 "
            "fractional base)");

    ConvergenceReport report;
    report.epsilons.assign(epsilons.begin(), epsilons.end());
    report.seed = noise.seed;
    report.grid = noise.grid;
    report.reference = schemes::simulate_rou_projected(base, noise);

    for (double eps : epsilons) {
        models::ModelParams rung_params = base;
        rung_params.epsilon = eps;
        LadderRung rung;
        rung.epsilon = eps;
        rung.y = schemes::simulate_sqrt_process(rung_params, noise);
        rung.l = reflection::epsilon_integral_reflection(rung.y, eps);
        report.sup_gap_y.push_back(sup_gap(rung.y.values, report.reference.path.values));
        report.sup_gap_l.push_back(sup_gap(rung.l.values, report.reference.reflection.values));
        report.rungs.push_back(std::move(rung));
    }

    for (std::size_t i = 0; i + 1 < report.rungs.size(); ++i) {
        const auto& hi = report.rungs[i].y.values;
        const auto& lo = report.rungs[i + 1].y.values;
        for (std::size_t k = 0; k < hi.size(); ++k)
            report.max_ordering_violation =
                std::max(report.max_ordering_violation, lo[k] - hi[k]);
    }
    report.monotone_y = report.max_ordering_violation <= report.monotonicity_slack;
    return report;
}

SquareConsistencyReport square_consistency(const models::ModelParams& params,
                                           const noise::NoisePath& noise,
                                           std::span<const std::size_t> coarsen_factors) {
    if (coarsen_factors.empty())
        throw std::invalid_argument("square_consistency: no coarsening factors");
    if (noise.kind != noise::NoiseKind::BrownianMotion)
        throw std::invalid_argument("square_consistency: requires Brownian noise");
    if (models::regime(params) != models::Regime::Supercritical)
        throw std::invalid_argument("square_consistency: requires the supercritical regime");
    if (params.epsilon != 0.0)
        throw std::invalid_argument("square_consistency: epsilon must be 0");

    SquareConsistencyReport report;
    for (std::size_t factor : coarsen_factors) {
        const auto level_noise = noise::coarsen(noise, factor);
        const auto x = schemes::euler_cir_full_truncation(params, level_noise);
        const auto y = schemes::simulate_sqrt_process(params, level_noise);
        double gap = 0.0;
        for (std::size_t k = 0; k < x.values.size(); ++k)
            gap = std::max(gap, std::abs(y.values[k] * y.values[k] - x.values[k]));
        report.levels.push_back({factor, level_noise.grid.dt(), gap});
    }
    return report;
}

const char* to_string(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::CirEuler: return "cir-euler";
        case SchemeKind::SqrtImplicit: return "sqrt-implicit";
        case SchemeKind::RouProjected: return "rou-projected";
        case SchemeKind::Ou: return "ou";
    }
    return "unknown";
}

RefinementReport grid_refinement_study(SchemeKind scheme, const models::ModelParams& params,
                                       const noise::NoisePath& master, std::size_t levels,
                                       std::size_t factor) {
    if (levels < 2) throw std::invalid_argument("grid_refinement_study: need at least 2 levels");
    if (factor < 2) throw std::invalid_argument("grid_refinement_study: factor must be >= 2");
    std::size_t total = 1;
    for (std::size_t l = 0; l + 1 < levels; ++l) total *= factor;
    if (master.grid.n_steps % total != 0)
        throw std::invalid_argument(
            "grid_refinement_study: inconsistent refinement factors for the master grid");

    const auto run = [&](const noise::NoisePath& n) -> std::vector<double> {
        switch (scheme) {
            case SchemeKind::CirEuler: return schemes::euler_cir_full_truncation(params, n).values;
            case SchemeKind::SqrtImplicit: return schemes::simulate_sqrt_process(params, n).values;
            case SchemeKind::RouProjected: return schemes::simulate_rou_projected(params, n).path.values;
            case SchemeKind::Ou: return schemes::simulate_ou(params, n).values;
        }
        throw std::logic_error("grid_refinement_study: unknown scheme");
    };

    RefinementReport report;
    report.scheme = scheme;
    std::vector<std::vector<double>> values(levels);
    std::size_t coarsen_by = total;
    for (std::size_t l = 0; l < levels; ++l) {
        const auto level_noise = noise::coarsen(master, coarsen_by);
        values[l] = run(level_noise);
        report.levels.push_back(
            {level_noise.grid.n_steps, level_noise.grid.dt(), values[l].back()});
        coarsen_by /= factor;
    }
    for (std::size_t l = 0; l + 1 < levels; ++l) {
        double gap = 0.0;
        for (std::size_t k = 0; k < values[l].size(); ++k)
            gap = std::max(gap, std::abs(values[l][k] - values[l + 1][k * factor]));
        report.consecutive_sup_gaps.push_back(gap);
    }
    return report;
}

}  // namespace roucir::convergence
