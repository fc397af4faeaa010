#pragma once

#include "halfline/system.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace halfline {

inline constexpr std::size_t kDefaultMaxIter = 10000;

struct SolveReport {
    std::size_t iterations = 0;
    double final_step = 0.0;       ///< ‖x^{(k+1)} − x^{(k)}‖∞ of the last sweep
    double certified_bound = 0.0;  ///< final_step·c/(1−c), a sup-norm bound on the distance to the fixed point
    bool converged = false;
    double contraction_used = 0.0;
    std::vector<double> step_history;  ///< step norm of every sweep, in order
};

struct PicardResult {
    NodeSequence x;
    SolveReport report;
};

/// Successive approximations from x^{(0)} = b until step·c/(1−c) ≤ tol.
/// Hitting max_iter is reported through `converged = false`, not thrown.
PicardResult picard_solve(const TruncatedSystem& system, double tol, std::size_t max_iter = kDefaultMaxIter);

struct GridSolution {
    NodeSequence x;  ///< original variables
    Grid grid{1.0, 1};
    SystemCase case_tag = SystemCase::I;
    std::optional<DeltaParams> delta;
    SolveReport report;
    /// report.certified_bound mapped to original variables: equal to it in
    /// case I, multiplied by e^{Nδh} in case II.
    double node_error_bound = 0.0;
};

/// assemble + picard_solve + untransform. Throws ValidationError before any
/// work when the problem is invalid.
GridSolution solve(const HalfLineProblem& problem, const Grid& grid, double tol,
                   std::size_t max_iter = kDefaultMaxIter);

/// Bounded solution of the linear comparison system
///   ζ_i = 1 + Σ_{j=1}^{i−1} Lf w_ij ζ_j + Σ_{k=i}^{N} Lg v_ik ζ_k
/// on the truncated range.
struct GronwallZeta {
    std::vector<double> zeta;
    SolveReport report;
    /// Lg·Σ_{k>N} v_ik / (1 − q): bound on the change of ζ_i from the dropped tail.
    std::vector<double> tail_bound;
};

GronwallZeta gronwall_zeta(const Grid& grid, const Constants& constants, const RegularityData& regularity,
                           double tol = 1e-12, std::size_t max_iter = kDefaultMaxIter);

}  // namespace halfline
