#include "halfline/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace halfline {

namespace {

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

/// Generic Picard loop. `apply(in, out)` must write the image of `in`.
template <typename State, typename Apply, typename Flat>
SolveReport iterate(State& x, Apply&& apply, Flat&& flat, double c, double tol, std::size_t max_iter) {
    if (!(tol > 0.0)) throw InvalidInput("picard: tol must be > 0");
    if (!(c < 1.0) || !(c >= 0.0)) throw InvalidInput("picard: contraction constant must lie in [0, 1)");
    if (max_iter == 0) throw InvalidInput("picard: max_iter must be >= 1");

    SolveReport rep;
    rep.contraction_used = c;
    const double factor = c / (1.0 - c);
    State next = x;
    for (std::size_t k = 1; k <= max_iter; ++k) {
        apply(x, next);
        const double step = max_abs_diff(flat(next), flat(x));
        std::swap(x, next);
        rep.iterations = k;
        rep.final_step = step;
        rep.certified_bound = step * factor;
        rep.step_history.push_back(step);
        if (rep.certified_bound <= tol) {
            rep.converged = true;
            break;
        }
    }
    return rep;
}

}  // namespace

PicardResult picard_solve(const TruncatedSystem& sys, double tol, std::size_t max_iter) {
    PicardResult res{sys.b, {}};
    res.report = iterate(
        res.x, [&](const NodeSequence& in, NodeSequence& out) { apply_operator(sys, in, out); },
        [](const NodeSequence& s) { return s.flat(); }, sys.contraction, tol, max_iter);
    return res;
}

GridSolution solve(const HalfLineProblem& problem, const Grid& grid, double tol, std::size_t max_iter) {
    const TruncatedSystem sys = assemble(problem, grid);
    PicardResult res = picard_solve(sys, tol, max_iter);

    GridSolution sol;
    sol.grid = grid;
    sol.case_tag = sys.case_tag;
    sol.delta = sys.delta;
    sol.report = std::move(res.report);
    if (sys.case_tag == SystemCase::II) {
        sol.x = untransform(res.x, *sys.delta, grid);
        sol.node_error_bound = sol.report.certified_bound * std::exp(sys.delta->delta * grid.t(grid.N()));
    } else {
        sol.x = std::move(res.x);
        sol.node_error_bound = sol.report.certified_bound;
    }
    return sol;
}

GronwallZeta gronwall_zeta(const Grid& grid, const Constants& c, const RegularityData& reg, double tol,
                           std::size_t max_iter) {
    const double q = contraction_q(reg, c);
    if (!(q < 1.0)) {
        throw UnsolvableConfiguration("gronwall_zeta: assumption A1 violated (q = " + std::to_string(q) + ")");
    }
    const std::size_t nodes = grid.nodes();
    const std::size_t N = grid.N();
    const double h = grid.h();

    auto apply = [&](const std::vector<double>& z, std::vector<double>& out) {
        for (std::size_t i = 0; i < nodes; ++i) {
            long double acc = 1.0L;
            // first sum starts at j = 1
            for (std::size_t j = 1; j < i; ++j) acc += static_cast<long double>(reg.Lf * volterra_weight(i, j, h, c)) * z[j];
            for (std::size_t k = i; k <= N; ++k) acc += static_cast<long double>(reg.Lg * tail_weight(i, k, h, c)) * z[k];
            out[i] = static_cast<double>(acc);
        }
    };

    GronwallZeta out;
    out.zeta.assign(nodes, 1.0);
    out.report = iterate(out.zeta, apply, [](const std::vector<double>& v) { return std::span<const double>(v); }, q,
                         tol, max_iter);
    out.tail_bound.resize(nodes);
    for (std::size_t i = 0; i < nodes; ++i) out.tail_bound[i] = reg.Lg * tail_remainder(i, N, h, c) / (1.0 - q);
    return out;
}

}  // namespace halfline
