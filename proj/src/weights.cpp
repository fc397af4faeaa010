#include "halfline/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace halfline {

namespace {

constexpr int kMaxHalvings = 60;

double as_double(std::size_t k) { return static_cast<double>(k); }

void require_volterra_range(std::size_t i, std::size_t j) {
    if (j >= i) throw InvalidInput("volterra weight requires j < i (got i=" + std::to_string(i) + ", j=" + std::to_string(j) + ")");
}

void require_tail_range(std::size_t i, std::size_t j) {
    if (j < i) throw InvalidInput("tail weight requires j >= i (got i=" + std::to_string(i) + ", j=" + std::to_string(j) + ")");
}

}  // namespace

Grid::Grid(double h, std::size_t N) : h_(h), N_(N) {
    if (!(h > 0.0) || !std::isfinite(h)) throw InvalidInput("Grid invariant violated: h > 0 (got h=" + std::to_string(h) + ")");
    if (N < 1) throw InvalidInput("Grid invariant violated: N >= 1");
}

bool rates_equal(const Constants& c) { return c.beta - c.gamma <= kEqualRateTolerance; }

double volterra_weight(std::size_t i, std::size_t j, double h, const Constants& c) {
    require_volterra_range(i, j);
    const double expo = (c.alpha1 * as_double(j) - c.alpha2 * as_double(i)) * h;
    return std::exp(expo) * std::expm1(c.alpha1 * h) / c.alpha1;
}

double tail_weight(std::size_t i, std::size_t j, double h, const Constants& c) {
    require_tail_range(i, j);
    const double expo = (-c.beta * as_double(j) + c.gamma * as_double(i)) * h;
    return std::exp(expo) * (-std::expm1(-c.beta * h)) / c.beta;
}

double volterra_prefix_sum(std::size_t i, double h, const Constants& c) {
    if (i == 0) return 0.0;
    const double ti = as_double(i) * h;
    // e^{(α1−α2)t} − e^{−α2 t} = e^{−α2 t}·expm1(α1 t)
    return std::exp(-c.alpha2 * ti) * std::expm1(c.alpha1 * ti) / c.alpha1;
}

double tail_weight_sum(std::size_t i, double h, const Constants& c) {
    return std::exp(-(c.beta - c.gamma) * as_double(i) * h) / c.beta;
}

double tail_remainder(std::size_t i, std::size_t N, double h, const Constants& c) {
    return std::exp((-c.beta * as_double(N + 1) + c.gamma * as_double(i)) * h) / c.beta;
}

double reweighted_volterra_weight(std::size_t i, std::size_t j, double h, const Constants& c, double delta) {
    require_volterra_range(i, j);
    const double expo = ((c.alpha1 + delta) * as_double(j) - (c.alpha2 + delta) * as_double(i)) * h;
    return std::exp(expo) * std::expm1(c.alpha1 * h) / c.alpha1;
}

double reweighted_tail_weight(std::size_t i, std::size_t j, double h, const Constants& c, double delta) {
    require_tail_range(i, j);
    const double expo = (-(c.beta - delta) * as_double(j) + (c.gamma - delta) * as_double(i)) * h;
    return std::exp(expo) * (-std::expm1(-c.beta * h)) / c.beta;
}

bool delta_feasible(double delta, const Constants& c) {
    const bool same_sign = (c.alpha1 > 0.0) ? (c.alpha1 + delta > 0.0) : (c.alpha1 + delta < 0.0);
    return same_sign && c.beta - delta > 0.0 && c.gamma - delta > 0.0;
}

double theta(double delta, double h, const Constants& c, const RegularityData& reg) {
    if (!(delta > 0.0) || !delta_feasible(delta, c)) {
        std::ostringstream os;
        os << "theta: delta=" << delta << " violates DeltaParams invariants "
           << "(delta > 0, alpha1+delta same sign as alpha1, beta-delta > 0, gamma-delta > 0)";
        throw InvalidInput(os.str());
    }
    const double volterra_ratio = std::expm1(c.alpha1 * h) / std::expm1((c.alpha1 + delta) * h);
    const double tail_ratio = std::expm1(-c.beta * h) / std::expm1(-(c.beta - delta) * h);
    return reg.Lf / std::abs(c.alpha1) * volterra_ratio + reg.Lg / c.beta * tail_ratio;
}

DeltaParams select_delta(double h, const Constants& c, const RegularityData& reg, std::optional<double> delta0) {
    const double q = contraction_q(reg, c);
    if (!(q < 1.0)) {
        throw UnsolvableConfiguration("select_delta: assumption A1 violated (Lf/|alpha1| + Lg/beta = " +
                                      std::to_string(q) + " >= 1); no reweighting exponent exists");
    }
    double delta = 0.0;
    if (delta0) {
        delta = *delta0;
    } else {
        double cap = std::min(c.beta, c.gamma);
        if (c.alpha1 < 0.0) cap = std::min(cap, std::abs(c.alpha1));
        delta = 0.5 * cap;
    }
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw UnsolvableConfiguration("select_delta: initial delta must be positive (requires gamma > 0; got delta0=" +
                                      std::to_string(delta) + ")");
    }

    for (int k = 0; k <= kMaxHalvings; ++k, delta *= 0.5) {
        if (!delta_feasible(delta, c)) continue;
        const double th = theta(delta, h, c, reg);
        if (th < 1.0) {
            const DeltaParams out{delta, th};
            if (!(out.delta > 0.0 && delta_feasible(out.delta, c) && out.theta < 1.0)) {
                throw UnsolvableConfiguration("select_delta: internal invariant check failed");
            }
            return out;
        }
    }
    throw UnsolvableConfiguration("select_delta: no admissible delta after 60 halvings (q=" + std::to_string(q) + ")");
}

}  // namespace halfline
