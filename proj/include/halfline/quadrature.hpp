#pragma once

#include "halfline/problem.hpp"

#include <functional>
#include <span>
#include <vector>

namespace halfline::oracle {

/// Accuracy controls for oracle integrals. Tail integrals over [t, ∞) are cut
/// at T with e^{−β(T−t)} ≤ tail_eps·β and the analytic remainder is added to
/// the reported error.
struct QuadOptions {
    /// Above the ~1e-12 round-off floor of the Gauss-Kronrod estimate, which
    /// otherwise forces bisection down to max_depth.
    double rel_tol = 1e-11;
    double tail_eps = 1e-12;
    unsigned max_depth = 15;
    /// Integrals whose error estimate exceeds this raise OracleFailure.
    double max_abs_error = 1e-9;
};

struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

/// Adaptive Gauss–Kronrod on [a, b].
Estimate integrate(const std::function<double(double)>& fn, double a, double b, const QuadOptions& opts = {});

/// tanh-sinh on [a, b]; a second rule family for cross-checks.
Estimate integrate_tanh_sinh(const std::function<double(double)>& fn, double a, double b, const QuadOptions& opts = {});

/// exp-sinh on [a, ∞).
Estimate integrate_exp_sinh(const std::function<double(double)>& fn, double a, const QuadOptions& opts = {});

/// Right-hand-side integrals of the half-line equation evaluated on a known
/// function x(·): component-wise
///   V(t) = ∫_0^t e^{α1 s − α2 t} f(t,s,x(s)) ds,   W(t) = ∫_t^∞ e^{−β s + γ t} g(t,s,x(s)) ds.
struct RhsIntegrals {
    std::vector<double> volterra;
    std::vector<double> tail;
    double error = 0.0;  ///< max component error estimate, tail cut remainder included
};

enum class Rule { gauss_kronrod, double_exponential };

/// `cg_bound` bounds |g| for the analytic cut-off remainder (Gauss–Kronrod rule only).
RhsIntegrals rhs_integrals(std::size_t dim, const Constants& c, const KernelPair& kernels, const Forcing& x, double t,
                           double cg_bound, const QuadOptions& opts = {}, Rule rule = Rule::gauss_kronrod);

}  // namespace halfline::oracle
