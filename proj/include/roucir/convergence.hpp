#pragma once

#include <span>
#include <vector>

#include "roucir/models.hpp"
#include "roucir/noise.hpp"
#include "roucir/schemes.hpp"

namespace roucir::convergence {

inline constexpr double kOrderingSlack = 1e-12;   // exact algebraic identities
inline constexpr double kCrossSchemeSlack = 1e-6;  // different discretizations

struct LadderRung {
    double epsilon = 0.0;
    models::SamplePath y;
    models::ReflectionPath l;  // epsilon-integral estimator
};

/// Per-rung sup-norm distances to the projected-scheme reference (Y, L)
/// computed on one shared noise path.
struct ConvergenceReport {
    std::vector<double> epsilons;
    std::vector<double> sup_gap_y;
    std::vector<double> sup_gap_l;
    bool monotone_y = false;  // pointwise rung ordering held everywhere
    double max_ordering_violation = 0.0;
    double monotonicity_slack = kOrderingSlack;
    noise::RngSeed seed;
    noise::TimeGrid grid;
    std::vector<LadderRung> rungs;
    schemes::SchemeOutput reference;
};

/// Runs the square-root scheme for each epsilon on the shared noise and
/// compares against the projected reflected path. The base parameters must
/// carry zero intrinsic drift numerator (critical a = sigma^2/4 in the
/// Wiener case, a = 0 in the fractional case) and epsilon = 0; each rung
/// re-enters through params.epsilon.
ConvergenceReport epsilon_ladder(const models::ModelParams& base,
                                 std::span<const double> epsilons,
                                 const noise::NoisePath& noise);

struct ConsistencyLevel {
    std::size_t factor = 1;
    double dt = 0.0;
    double sup_gap = 0.0;
};

struct SquareConsistencyReport {
    std::vector<ConsistencyLevel> levels;
};

/// Supercritical-only: compares the squared implicit square-root path against
/// full-truncation CIR on shared Brownian increments, one comparison per
/// coarsening factor of the given fine noise.
SquareConsistencyReport square_consistency(const models::ModelParams& params,
                                           const noise::NoisePath& noise,
                                           std::span<const std::size_t> coarsen_factors);

enum class SchemeKind { CirEuler, SqrtImplicit, RouProjected, Ou };

const char* to_string(SchemeKind kind);

struct RefinementLevel {
    std::size_t n_steps = 0;
    double dt = 0.0;
    double terminal = 0.0;
};

struct RefinementReport {
    SchemeKind scheme = SchemeKind::Ou;
    std::vector<RefinementLevel> levels;           // coarse to fine
    std::vector<double> consecutive_sup_gaps;      // on the coarser grid of each pair
};

/// Runs one scheme across `levels` nested grids obtained by block-summing the
/// master noise (factor^(levels-1) must divide its step count) and reports
/// terminal values plus sup gaps between consecutive levels at shared times.
RefinementReport grid_refinement_study(SchemeKind scheme, const models::ModelParams& params,
                                       const noise::NoisePath& master, std::size_t levels,
                                       std::size_t factor = 2);

}  // namespace roucir::convergence
