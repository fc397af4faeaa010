#include "halfline/verify.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <memory>
#include <random>
#include <sstream>
#include <utility>

namespace halfline {

ManufacturedProblem manufacture(ManufactureInput in, const oracle::QuadOptions& opts) {
    if (!in.exact) throw InvalidInput("manufacture: exact solution must be callable");
    if (!in.kernels.f || !in.kernels.g) throw InvalidInput("manufacture: kernels must be callable");

    ManufacturedProblem mp;
    mp.exact = in.exact;
    HalfLineProblem& p = mp.problem;
    p.dim = in.dim;
    p.constants = in.constants;
    p.kernels = in.kernels;
    p.regularity = in.regularity;
    p.x0_sup = in.x0_sup;

    if (in.closed_form_x0) {
        mp.construction = Construction::closed_form;
        p.x0 = std::move(*in.closed_form_x0);
        return mp;
    }

    mp.construction = Construction::quadrature;
    p.x0 = [dim = in.dim, c = in.constants, kernels = in.kernels, exact = in.exact, cg = in.regularity.Cg,
            opts](double t, std::span<double> out) {
        const auto rhs = oracle::rhs_integrals(dim, c, kernels, exact, t, cg, opts, oracle::Rule::gauss_kronrod);
        exact(t, out);
        for (std::size_t k = 0; k < dim; ++k) out[k] -= rhs.volterra[k] + rhs.tail[k];
    };
    return mp;
}

double consistency_residual(const ManufacturedProblem& mp, double t, const oracle::QuadOptions& opts) {
    const HalfLineProblem& p = mp.problem;
    const auto rhs = oracle::rhs_integrals(p.dim, p.constants, p.kernels, mp.exact, t, p.regularity.Cg, opts,
                                           oracle::Rule::double_exponential);
    std::vector<double> ex(p.dim);
    std::vector<double> x0(p.dim);
    mp.exact(t, ex);
    p.x0(t, x0);
    double r = 0.0;
    for (std::size_t k = 0; k < p.dim; ++k) r = std::max(r, std::abs(ex[k] - x0[k] - rhs.volterra[k] - rhs.tail[k]));
    return r;
}

double error_sup(const GridSolution& sol, const Forcing& exact, NodeRange window) {
    if (window.first > window.last || window.last >= sol.x.nodes()) {
        throw InvalidInput("error_sup: window [" + std::to_string(window.first) + ", " + std::to_string(window.last) +
                           "] outside grid of " + std::to_string(sol.x.nodes()) + " nodes");
    }
    std::vector<double> ex(sol.x.dim());
    double m = 0.0;
    for (std::size_t i = window.first; i <= window.last; ++i) {
        exact(sol.grid.t(i), ex);
        auto xi = sol.x[i];
        for (std::size_t k = 0; k < ex.size(); ++k) m = std::max(m, std::abs(ex[k] - xi[k]));
    }
    return m;
}

std::vector<std::optional<double>> empirical_orders(std::span<const double> errors, double floor) {
    std::vector<std::optional<double>> out(errors.size());
    for (std::size_t r = 1; r < errors.size(); ++r) {
        if (errors[r - 1] < floor || errors[r] < floor) continue;
        out[r] = std::log2(errors[r - 1] / errors[r]);
    }
    return out;
}

double propagated_tail_bound(const HalfLineProblem& problem, const Grid& grid, double window_time) {
    const Constants& c = problem.constants;
    const RegularityData& reg = problem.regularity;
    // tail_remainder is largest at i = N for β ≥ γ
    const double at_end = reg.Cg * tail_remainder(grid.N(), grid.N(), grid.h(), c);
    if (rates_equal(c)) {
        const DeltaParams d = select_delta(grid.h(), c, reg);
        return std::exp(d.delta * (window_time - grid.t(grid.N()))) * at_end / (1.0 - d.theta);
    }
    return at_end / (1.0 - contraction_q(reg, c));
}

NPolicy tail_policy(const HalfLineProblem& problem, double window_time, double target,
                    std::span<const double> h_list) {
    if (!(window_time >= 0.0) || !(target > 0.0)) throw InvalidInput("tail_policy: need window_time >= 0 and target > 0");
    if (h_list.empty()) throw InvalidInput("tail_policy: h_list must be non-empty");
    const Constants& c = problem.constants;
    const RegularityData& reg = problem.regularity;
    NPolicy pol{window_time, window_time};
    if (!(reg.Cg > 0.0)) return pol;

    double needed = 0.0;
    if (rates_equal(c)) {
        double delta = std::numeric_limits<double>::infinity();
        double theta = 0.0;
        for (double h : h_list) {
            const DeltaParams d = select_delta(h, c, reg);
            delta = std::min(delta, d.delta);
            theta = std::max(theta, d.theta);
        }
        needed = window_time + std::log(reg.Cg / (c.beta * (1.0 - theta) * target)) / delta;
    } else {
        const double q = contraction_q(reg, c);
        if (!(q < 1.0)) throw UnsolvableConfiguration("tail_policy: " + std::string(kAssumptionA1) + " violated");
        needed = std::log(reg.Cg / (c.beta * (1.0 - q) * target)) / (c.beta - c.gamma);
    }
    pol.horizon_time = std::max(window_time, needed);
    return pol;
}

namespace {

void require_halving(std::span<const double> h_list) {
    if (h_list.empty()) throw InvalidInput("convergence_study: h_list must be non-empty");
    for (std::size_t r = 1; r < h_list.size(); ++r) {
        const double ratio = h_list[r - 1] / h_list[r];
        if (!(std::abs(ratio - 2.0) <= 1e-9)) {
            std::ostringstream os;
            os << "convergence_study: h_list must be strictly halving (h[" << r - 1 << "]/h[" << r << "] = " << ratio
               << ")";
            throw InvalidInput(os.str());
        }
    }
}

}  // namespace

ConvergenceTable convergence_study(const ManufacturedProblem& mp, std::span<const double> h_list, double tol,
                                   const NPolicy& policy) {
    require_halving(h_list);
    require_valid(mp.problem);

    std::vector<std::future<ConvergenceTable::Row>> jobs;
    for (double h : h_list) {
        jobs.push_back(std::async(std::launch::async, [&, h] {
            const auto N = static_cast<std::size_t>(std::max(1.0, std::ceil(policy.horizon_time / h - 1e-9)));
            const Grid grid(h, N);
            const auto last = std::min<std::size_t>(N, static_cast<std::size_t>(std::floor(policy.window_time / h + 1e-9)));
            const GridSolution sol = solve(mp.problem, grid, tol);

            ConvergenceTable::Row row;
            row.h = h;
            row.N = N;
            row.error = error_sup(sol, mp.exact, {0, last});
            row.tail_bound = propagated_tail_bound(mp.problem, grid, grid.t(last));
            row.iterations = sol.report.iterations;
            row.converged = sol.report.converged;
            return row;
        }));
    }

    ConvergenceTable table;
    for (auto& j : jobs) table.rows.push_back(j.get());
    std::vector<double> errs;
    for (const auto& r : table.rows) errs.push_back(r.error);
    const auto orders = empirical_orders(errs, kOrderFloorFactor * tol);
    for (std::size_t r = 0; r < table.rows.size(); ++r) table.rows[r].order = orders[r];
    return table;
}

TruncationTable truncation_study(const HalfLineProblem& problem, double h, std::span<const std::size_t> N_list,
                                 std::size_t window, double tol) {
    TruncationTable table;
    table.window = window;
    if (N_list.empty()) return table;
    for (std::size_t r = 1; r < N_list.size(); ++r) {
        if (N_list[r] <= N_list[r - 1]) throw InvalidInput("truncation_study: N_list must be strictly increasing");
    }
    if (window > N_list.front()) throw InvalidInput("truncation_study: window must not exceed min(N_list)");
    require_valid(problem);

    const auto shared = std::make_shared<const HalfLineProblem>(problem);
    table.reference_N = 4 * N_list.back();

    auto run = [shared, h, tol](std::size_t N) {
        const TruncatedSystem sys = assemble(shared, Grid(h, N));
        PicardResult res = picard_solve(sys, tol);
        if (!res.report.converged) throw UnsolvableConfiguration("truncation_study: solve at N=" + std::to_string(N) + " did not converge");
        return sys.delta ? untransform(res.x, *sys.delta, sys.grid) : std::move(res.x);
    };

    auto ref_job = std::async(std::launch::async, run, table.reference_N);
    std::vector<std::future<NodeSequence>> jobs;
    for (std::size_t N : N_list) jobs.push_back(std::async(std::launch::async, run, N));
    const NodeSequence ref = ref_job.get();

    for (std::size_t r = 0; r < N_list.size(); ++r) {
        const NodeSequence x = jobs[r].get();
        double err = 0.0;
        for (std::size_t i = 0; i <= window; ++i) {
            auto a = x[i];
            auto b = ref[i];
            for (std::size_t k = 0; k < a.size(); ++k) err = std::max(err, std::abs(a[k] - b[k]));
        }
        table.rows.push_back({N_list[r], err});
    }
    return table;
}

DecayReport decay_check(const GridSolution& sol, const HalfLineProblem& problem) {
    DecayReport rep;
    const Constants& c = problem.constants;
    if (rates_equal(c)) {
        rep.reason = "requires beta > gamma";
        return rep;
    }
    if (!(c.alpha1 < c.alpha2)) {
        rep.reason = "requires alpha1 < alpha2";
        return rep;
    }
    const NodeSequence b = sample_forcing(problem, sol.grid);
    const double b_sup = b.sup_norm();
    const double b_last = max_norm(b[b.nodes() - 1]);
    if (!(b_last <= 1e-3 * b_sup)) {
        std::ostringstream os;
        os << "requires decaying forcing: |b_N| = " << b_last << " > 1e-3 * sup|b| = " << 1e-3 * b_sup;
        rep.reason = os.str();
        return rep;
    }
    rep.applicable = true;

    const RegularityData& reg = problem.regularity;
    const std::size_t nodes = sol.x.nodes();
    rep.bound.resize(nodes);
    rep.worst_slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nodes; ++i) {
        const double ti = sol.grid.t(i);
        const double volterra = std::abs(std::exp(-c.alpha2 * ti) * std::expm1(c.alpha1 * ti));
        rep.bound[i] = max_norm(b[i]) + reg.Cf / std::abs(c.alpha1) * volterra +
                       reg.Cg / c.beta * std::exp(-(c.beta - c.gamma) * ti);
        const double xi = max_norm(sol.x[i]);
        const double slack = rep.bound[i] - xi;
        rep.worst_slack = std::min(rep.worst_slack, slack);
        if (slack < -(sol.node_error_bound + 1e-12 * (1.0 + rep.bound[i]))) ++rep.violations;
    }
    rep.bound_holds = rep.violations == 0;

    rep.tail_max.resize(nodes);
    double running = 0.0;
    for (std::size_t i = nodes; i-- > 0;) {
        running = std::max(running, max_norm(sol.x[i]));
        rep.tail_max[i] = running;
    }
    rep.tail_max_nonincreasing = std::is_sorted(rep.tail_max.rbegin(), rep.tail_max.rend());
    return rep;
}

namespace {

/// Input in original variables → iteration variables of the system.
NodeSequence to_iteration(const TruncatedSystem& sys, const NodeSequence& x) {
    return sys.delta ? transform(x, *sys.delta, sys.grid) : x;
}

NodeSequence to_original(const TruncatedSystem& sys, const NodeSequence& y) {
    return sys.delta ? untransform(y, *sys.delta, sys.grid) : y;
}

class BallSampler {
public:
    BallSampler(const TruncatedSystem& sys, std::uint64_t seed)
        : nodes_(sys.grid.nodes()), dim_(sys.problem->dim), radius_(safe_radius(*sys.problem)), rng_(seed) {}

    /// The first four draws are structured (+R, −R, alternating, zero); the rest uniform.
    NodeSequence draw() {
        NodeSequence x(nodes_, dim_);
        auto flat = x.flat();
        switch (count_++) {
            case 0: std::fill(flat.begin(), flat.end(), radius_); break;
            case 1: std::fill(flat.begin(), flat.end(), -radius_); break;
            case 2:
                for (std::size_t k = 0; k < flat.size(); ++k) flat[k] = (k % 2 == 0) ? radius_ : -radius_;
                break;
            case 3: break;
            default: {
                std::uniform_real_distribution<double> u(-radius_, radius_);
                for (double& v : flat) v = u(rng_);
            }
        }
        return x;
    }

    [[nodiscard]] double radius() const { return radius_; }

private:
    std::size_t nodes_;
    std::size_t dim_;
    double radius_;
    std::mt19937_64 rng_;
    std::size_t count_ = 0;
};

}  // namespace

InvarianceReport check_invariance(const TruncatedSystem& sys, std::size_t samples, std::uint64_t seed) {
    BallSampler sampler(sys, seed);
    InvarianceReport rep;
    rep.radius = sampler.radius();
    const double allowed = rep.radius * (1.0 + 1e-12) + 1e-14;
    NodeSequence out;
    for (std::size_t s = 0; s < samples; ++s) {
        apply_operator(sys, to_iteration(sys, sampler.draw()), out);
        const double norm = to_original(sys, out).sup_norm();
        rep.max_output_norm = std::max(rep.max_output_norm, norm);
        if (norm > allowed) ++rep.violations;
        ++rep.samples;
    }
    return rep;
}

ContractionReport check_contraction(const TruncatedSystem& sys, std::size_t pairs, std::uint64_t seed, double slack) {
    BallSampler sampler(sys, seed);
    ContractionReport rep;
    rep.bound = sys.contraction + slack;
    NodeSequence ax;
    NodeSequence az;
    for (std::size_t s = 0; s < pairs; ++s) {
        const NodeSequence x = to_iteration(sys, sampler.draw());
        const NodeSequence z = to_iteration(sys, sampler.draw());
        const double dist = sup_distance(x, z);
        ++rep.pairs;
        if (dist == 0.0) continue;
        apply_operator(sys, x, ax);
        apply_operator(sys, z, az);
        const double ratio = sup_distance(ax, az) / dist;
        rep.max_ratio = std::max(rep.max_ratio, ratio);
        if (ratio > rep.bound) ++rep.violations;
    }
    return rep;
}

}  // namespace halfline
