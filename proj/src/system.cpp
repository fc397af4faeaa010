#include "halfline/system.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace halfline {

NodeSequence::NodeSequence(std::size_t nodes, std::size_t dim, double fill) : dim_(dim), values_(nodes * dim, fill) {
    if (dim == 0) throw InvalidInput("NodeSequence: dim must be >= 1");
}

double NodeSequence::sup_norm() const { return max_norm(values_); }

bool NodeSequence::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double sup_distance(const NodeSequence& a, const NodeSequence& b) {
    if (a.dim() != b.dim() || a.nodes() != b.nodes()) throw InvalidInput("sup_distance: shape mismatch");
    double m = 0.0;
    auto fa = a.flat();
    auto fb = b.flat();
    for (std::size_t k = 0; k < fa.size(); ++k) m = std::max(m, std::abs(fa[k] - fb[k]));
    return m;
}

const char* to_string(SystemCase c) { return c == SystemCase::I ? "I" : "II"; }

NodeSequence sample_forcing(const HalfLineProblem& problem, const Grid& grid) {
    NodeSequence b(grid.nodes(), problem.dim);
    for (std::size_t i = 0; i < grid.nodes(); ++i) problem.x0(grid.t(i), b[i]);
    return b;
}

TruncatedSystem assemble(HalfLineProblem problem, const Grid& grid) {
    return assemble(std::make_shared<const HalfLineProblem>(std::move(problem)), grid);
}

TruncatedSystem assemble(std::shared_ptr<const HalfLineProblem> problem, const Grid& grid) {
    if (!problem) throw InvalidInput("assemble: null problem");
    require_valid(*problem);

    TruncatedSystem sys;
    sys.grid = grid;
    sys.b = sample_forcing(*problem, grid);
    if (!sys.b.all_finite()) throw InvalidInput("assemble: forcing x0 produced non-finite values");

    const Constants& c = problem->constants;
    if (rates_equal(c)) {
        sys.case_tag = SystemCase::II;
        sys.delta = select_delta(grid.h(), c, problem->regularity);
        sys.b = transform(sys.b, *sys.delta, grid);
        sys.contraction = sys.delta->theta;
    } else {
        sys.case_tag = SystemCase::I;
        sys.contraction = contraction_q(problem->regularity, c);
    }
    sys.problem = std::move(problem);
    return sys;
}

void apply_operator(const TruncatedSystem& sys, const NodeSequence& x, NodeSequence& out) {
    const HalfLineProblem& p = *sys.problem;
    const std::size_t n = p.dim;
    const std::size_t nodes = sys.grid.nodes();
    if (x.dim() != n || x.nodes() != nodes) {
        throw InvalidInput("apply_operator: input has " + std::to_string(x.nodes()) + " nodes of dim " +
                           std::to_string(x.dim()) + ", expected " + std::to_string(nodes) + " of dim " +
                           std::to_string(n));
    }
    if (out.dim() != n || out.nodes() != nodes) out = NodeSequence(nodes, n);

    const double h = sys.grid.h();
    const std::size_t N = sys.grid.N();
    const Constants& c = p.constants;
    const bool reweighted = sys.case_tag == SystemCase::II;
    const double delta = reweighted ? sys.delta->delta : 0.0;

    // Kernels see original variables x_j = e^{jδh} y_j. Their values are scaled
    // back by e^{−jδh}, so with the reweighted weights the total factor on node j
    // is e^{−iδh}·w_ij and the Lipschitz constant in y stays Lf (resp. Lg).
    const NodeSequence* args = &x;
    NodeSequence unscaled;
    std::vector<double> damp;
    if (reweighted) {
        unscaled = untransform(x, *sys.delta, sys.grid);
        args = &unscaled;
        damp.resize(nodes);
        for (std::size_t j = 0; j < nodes; ++j) damp[j] = std::exp(-delta * sys.grid.t(j));
    }

    std::vector<double> kval(n);
    std::vector<long double> acc(n);
    for (std::size_t i = 0; i < nodes; ++i) {
        const double ti = sys.grid.t(i);
        auto bi = sys.b[i];
        std::copy(bi.begin(), bi.end(), acc.begin());

        for (std::size_t j = 0; j < i; ++j) {
            const double w =
                reweighted ? reweighted_volterra_weight(i, j, h, c, delta) * damp[j] : volterra_weight(i, j, h, c);
            p.kernels.f(ti, sys.grid.t(j), (*args)[j], kval);
            for (std::size_t k = 0; k < n; ++k) acc[k] += static_cast<long double>(w) * kval[k];
        }
        for (std::size_t j = i; j <= N; ++j) {
            const double v =
                reweighted ? reweighted_tail_weight(i, j, h, c, delta) * damp[j] : tail_weight(i, j, h, c);
            p.kernels.g(ti, sys.grid.t(j), (*args)[j], kval);
            for (std::size_t k = 0; k < n; ++k) acc[k] += static_cast<long double>(v) * kval[k];
        }

        auto oi = out[i];
        for (std::size_t k = 0; k < n; ++k) oi[k] = static_cast<double>(acc[k]);
    }
}

NodeSequence apply_operator(const TruncatedSystem& sys, const NodeSequence& x) {
    NodeSequence out;
    apply_operator(sys, x, out);
    return out;
}

double residual(const TruncatedSystem& sys, const NodeSequence& x) {
    return sup_distance(x, apply_operator(sys, x));
}

namespace {

NodeSequence scale_nodes(const NodeSequence& in, double rate, const Grid& grid) {
    NodeSequence out = in;
    for (std::size_t i = 0; i < out.nodes(); ++i) {
        const double s = std::exp(rate * grid.t(i));
        for (double& v : out[i]) v *= s;
    }
    return out;
}

}  // namespace

NodeSequence untransform(const NodeSequence& y, const DeltaParams& delta, const Grid& grid) {
    return scale_nodes(y, delta.delta, grid);
}

NodeSequence transform(const NodeSequence& x, const DeltaParams& delta, const Grid& grid) {
    return scale_nodes(x, -delta.delta, grid);
}

double truncation_remainder_bound(const TruncatedSystem& sys, std::size_t i) {
    const HalfLineProblem& p = *sys.problem;
    return p.regularity.Cg * tail_remainder(i, sys.grid.N(), sys.grid.h(), p.constants);
}

}  // namespace halfline
