#pragma once

#include "halfline/quadrature.hpp"
#include "halfline/solver.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace halfline {

enum class Construction { closed_form, quadrature };

/// A problem whose forcing was back-computed from a chosen exact solution.
struct ManufacturedProblem {
    HalfLineProblem problem;
    Forcing exact;
    Construction construction = Construction::quadrature;
};

struct ManufactureInput {
    std::size_t dim = 1;
    Forcing exact;
    KernelPair kernels;
    Constants constants;
    RegularityData regularity;
    double x0_sup = 0.0;
    /// Used verbatim when present; otherwise x0 is computed by oracle quadrature.
    std::optional<Forcing> closed_form_x0;
};

/// x0(t) := exact(t) − V(t) − W(t), with V, W the two integral terms evaluated
/// on `exact`. Quadrature-built forcings raise OracleFailure on evaluation if
/// the oracle misses its accuracy target.
ManufacturedProblem manufacture(ManufactureInput in, const oracle::QuadOptions& opts = {});

/// |exact(t) − x0(t) − V(t) − W(t)| (max-norm), evaluated with the
/// double-exponential rules, i.e. a different rule family from the one
/// manufacture() uses.
double consistency_residual(const ManufacturedProblem& mp, double t, const oracle::QuadOptions& opts = {});

/// Inclusive node range [first, last].
struct NodeRange {
    std::size_t first = 0;
    std::size_t last = 0;
};

/// max over the window of |exact(ih) − x_i| (max-norm).
double error_sup(const GridSolution& solution, const Forcing& exact, NodeRange window);

/// log2(e[r−1]/e[r]) for r ≥ 1; absent when either error is below `floor`.
std::vector<std::optional<double>> empirical_orders(std::span<const double> errors, double floor);

/// How a convergence study sizes the grid for each h: errors are measured on
/// t ≤ window_time and the truncation index is N = ⌈horizon_time / h⌉.
struct NPolicy {
    double window_time = 5.0;
    double horizon_time = 30.0;
};

/// Bound on the error that truncating at grid.N() induces on nodes t ≤ window_time.
double propagated_tail_bound(const HalfLineProblem& problem, const Grid& grid, double window_time);

/// Chooses the horizon T = t_N so that the propagated truncation remainder on
/// the window stays below `target` for every h in `h_list`.
///   β > γ:  (Cg/β) e^{−(β−γ)T} / (1 − q)
///   β = γ:  e^{δ t_w} (Cg/β) e^{−δT} / (1 − ϑ), the y-space bound mapped back,
///           using the smallest δ and largest ϑ selected over h_list.
NPolicy tail_policy(const HalfLineProblem& problem, double window_time, double target,
                    std::span<const double> h_list);

struct ConvergenceTable {
    struct Row {
        double h = 0.0;
        double error = 0.0;
        std::optional<double> order;
        std::size_t N = 0;
        double tail_bound = 0.0;  ///< propagated truncation remainder on the window
        std::size_t iterations = 0;
        bool converged = false;
    };
    std::vector<Row> rows;
};

/// Below this multiple of the solver tolerance, errors are treated as noise
/// and no order is computed.
inline constexpr double kOrderFloorFactor = 100.0;

/// Solves at each h (strictly halving sequence) and tabulates the sup error
/// against the exact solution. Throws InvalidInput if h_list does not halve.
ConvergenceTable convergence_study(const ManufacturedProblem& mp, std::span<const double> h_list, double tol,
                                   const NPolicy& policy);

struct TruncationTable {
    struct Row {
        std::size_t N = 0;
        double error = 0.0;
    };
    std::vector<Row> rows;
    std::size_t reference_N = 0;
    std::size_t window = 0;
};

/// Errors on nodes i ≤ window of truncations at each N against a reference
/// solve at N_ref = 4·max(N_list).
TruncationTable truncation_study(const HalfLineProblem& problem, double h, std::span<const std::size_t> N_list,
                                 std::size_t window, double tol);

struct DecayReport {
    bool applicable = false;
    std::string reason;  ///< why the check is inapplicable, empty otherwise
    bool bound_holds = false;
    std::size_t violations = 0;
    double worst_slack = 0.0;  ///< min over nodes of bound_i − |x_i|
    std::vector<double> bound;
    std::vector<double> tail_max;  ///< max_{j ≥ i} |x_j|
    bool tail_max_nonincreasing = false;
};

/// Checks |x_i| ≤ |b_i| + (Cf/|α1|)|e^{(α1−α2)ih} − e^{−α2 ih}| + (Cg/β) e^{−(β−γ)ih}
/// at every node, allowing the solution's certified error. Applicable when
/// β > γ, α1 < α2 and the sampled forcing decays (|b_N| ≤ 1e-3·sup|b|).
DecayReport decay_check(const GridSolution& solution, const HalfLineProblem& problem);

struct InvarianceReport {
    std::size_t samples = 0;
    std::size_t violations = 0;
    double radius = 0.0;
    double max_output_norm = 0.0;
};

/// Applies the operator to inputs sampled from the invariant ball (random
/// draws plus the ±R constant and alternating sequences) and records the
/// largest output norm in original variables. Deterministic in `seed`.
InvarianceReport check_invariance(const TruncatedSystem& system, std::size_t samples, std::uint64_t seed);

struct ContractionReport {
    std::size_t pairs = 0;
    std::size_t violations = 0;
    double bound = 0.0;      ///< contraction + slack
    double max_ratio = 0.0;  ///< max ‖A(x) − A(z)‖ / ‖x − z‖ in the iteration variables
};

/// Samples pairs in the invariant ball and checks the Lipschitz bound of the
/// operator with the system's contraction constant plus `slack`.
ContractionReport check_contraction(const TruncatedSystem& system, std::size_t pairs, std::uint64_t seed,
                                    double slack = 1e-6);

}  // namespace halfline
