#include "halfline/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace halfline::oracle {

namespace {

void check(const Estimate& e, const QuadOptions& opts, const char* what) {
    if (!std::isfinite(e.value) || !(e.error <= opts.max_abs_error)) {
        std::ostringstream os;
        os << what << ": oracle quadrature did not converge (value=" << e.value << ", error estimate=" << e.error
           << ", limit=" << opts.max_abs_error << ")";
        throw OracleFailure(os.str());
    }
}

}  // namespace

Estimate integrate(const std::function<double(double)>& fn, double a, double b, const QuadOptions& opts) {
    if (a == b) return {};
    double err = 0.0;
    const double v =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(fn, a, b, opts.max_depth, opts.rel_tol, &err);
    // boost's estimate refers to the reference interval [-1, 1]
    Estimate e{v, err * std::max(1.0, 0.5 * std::abs(b - a))};
    check(e, opts, "gauss-kronrod");
    return e;
}

Estimate integrate_tanh_sinh(const std::function<double(double)>& fn, double a, double b, const QuadOptions& opts) {
    if (a == b) return {};
    boost::math::quadrature::tanh_sinh<double> integrator;
    double err = 0.0;
    double l1 = 0.0;
    const double v = integrator.integrate(fn, a, b, opts.rel_tol, &err, &l1);
    Estimate e{v, err};
    check(e, opts, "tanh-sinh");
    return e;
}

Estimate integrate_exp_sinh(const std::function<double(double)>& fn, double a, const QuadOptions& opts) {
    boost::math::quadrature::exp_sinh<double> integrator;
    double err = 0.0;
    double l1 = 0.0;
    const double v = integrator.integrate(fn, a, std::numeric_limits<double>::infinity(), opts.rel_tol, &err, &l1);
    Estimate e{v, err};
    check(e, opts, "exp-sinh");
    return e;
}

RhsIntegrals rhs_integrals(std::size_t dim, const Constants& c, const KernelPair& kernels, const Forcing& x, double t,
                           double cg_bound, const QuadOptions& opts, Rule rule) {
    RhsIntegrals out;
    out.volterra.assign(dim, 0.0);
    out.tail.assign(dim, 0.0);

    std::vector<double> xs(dim);
    std::vector<double> k(dim);
    auto volterra_component = [&](std::size_t comp) {
        return [&, comp](double s) {
            x(s, xs);
            kernels.f(t, s, xs, k);
            return std::exp(c.alpha1 * s - c.alpha2 * t) * k[comp];
        };
    };
    auto tail_component = [&](std::size_t comp) {
        return [&, comp](double s) {
            x(s, xs);
            kernels.g(t, s, xs, k);
            // −βs + γt = −β(s−t) − (β−γ)t, both terms ≤ 0
            return std::exp(-c.beta * (s - t) - (c.beta - c.gamma) * t) * k[comp];
        };
    };

    const double cut = t + std::log(1.0 / (opts.tail_eps * c.beta)) / c.beta;
    const double cut_remainder = cg_bound * std::exp(-c.beta * cut + c.gamma * t) / c.beta;

    for (std::size_t comp = 0; comp < dim; ++comp) {
        Estimate v;
        Estimate w;
        if (rule == Rule::gauss_kronrod) {
            v = integrate(volterra_component(comp), 0.0, t, opts);
            w = integrate(tail_component(comp), t, cut, opts);
            w.error += cut_remainder;
        } else {
            v = integrate_tanh_sinh(volterra_component(comp), 0.0, t, opts);
            w = integrate_exp_sinh(tail_component(comp), t, opts);
        }
        out.volterra[comp] = v.value;
        out.tail[comp] = w.value;
        out.error = std::max({out.error, v.error, w.error});
    }
    return out;
}

}  // namespace halfline::oracle
