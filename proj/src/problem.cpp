#include "halfline/problem.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <utility>

namespace halfline {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

void add(ValidationReport& r, std::string name, bool ok, std::string detail) {
    r.checks.push_back({std::move(name), ok, std::move(detail)});
}

void add_nonneg(ValidationReport& r, const char* name, double v) {
    add(r, std::string(name) + " >= 0", std::isfinite(v) && v >= 0.0, std::string(name) + " = " + fmt(v));
}

}  // namespace

bool ValidationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

std::string ValidationReport::failure_summary() const {
    std::string out;
    for (const auto& c : checks) {
        if (c.passed) continue;
        if (!out.empty()) out += "; ";
        out += c.name + " (" + c.detail + ")";
    }
    return out;
}

ValidationError::ValidationError(ValidationReport report)
    : InvalidInput("problem failed validation: " + report.failure_summary()), report_(std::move(report)) {}

ValidationReport validate(const Constants& c, const RegularityData& reg) {
    ValidationReport r;
    add(r, "alpha1 != 0", c.alpha1 != 0.0 && std::isfinite(c.alpha1), "alpha1 = " + fmt(c.alpha1));
    add(r, "alpha2 >= 0", c.alpha2 >= 0.0 && std::isfinite(c.alpha2), "alpha2 = " + fmt(c.alpha2));
    add(r, "alpha1 <= alpha2", c.alpha1 <= c.alpha2, "alpha1 = " + fmt(c.alpha1) + ", alpha2 = " + fmt(c.alpha2));
    add(r, "beta > 0", c.beta > 0.0 && std::isfinite(c.beta), "beta = " + fmt(c.beta));
    add(r, "beta >= gamma", c.beta >= c.gamma && std::isfinite(c.gamma),
        "beta = " + fmt(c.beta) + ", gamma = " + fmt(c.gamma));

    add_nonneg(r, "Lf", reg.Lf);
    add_nonneg(r, "Lg", reg.Lg);
    add_nonneg(r, "Cf", reg.Cf);
    add_nonneg(r, "Cg", reg.Cg);
    if (reg.Ef) add_nonneg(r, "Ef", *reg.Ef);
    if (reg.Eg) add_nonneg(r, "Eg", *reg.Eg);
    if (reg.Df) add_nonneg(r, "Df", *reg.Df);
    if (reg.Dg) add_nonneg(r, "Dg", *reg.Dg);

    // q is only meaningful once α1 ≠ 0 and β > 0.
    if (c.alpha1 != 0.0 && c.beta > 0.0) {
        const double q = contraction_q(reg, c);
        add(r, kAssumptionA1, q < 1.0, "Lf/|alpha1| + Lg/beta = " + fmt(q));
    } else {
        add(r, kAssumptionA1, false, "undefined: requires alpha1 != 0 and beta > 0");
    }
    return r;
}

ValidationReport validate(const HalfLineProblem& p) {
    ValidationReport r = validate(p.constants, p.regularity);
    add(r, "dim >= 1", p.dim >= 1, "dim = " + std::to_string(p.dim));
    add_nonneg(r, "x0_sup", p.x0_sup);
    add(r, "kernels and forcing set", p.kernels.f && p.kernels.g && p.x0, "f, g and x0 must be callable");
    return r;
}

void require_valid(const HalfLineProblem& problem) {
    auto report = validate(problem);
    if (!report.passed()) throw ValidationError(std::move(report));
}

double contraction_q(const RegularityData& reg, const Constants& c) {
    return reg.Lf / std::abs(c.alpha1) + reg.Lg / c.beta;
}

double safe_radius(const HalfLineProblem& p) {
    return p.x0_sup + p.regularity.Cf / std::abs(p.constants.alpha1) + p.regularity.Cg / p.constants.beta;
}

double max_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

HalfLineProblem time_reverse(std::size_t dim, Forcing z0, Kernel F, Kernel G, const ReductionMetadata& meta) {
    if (!z0 || !F || !G) throw InvalidInput("time_reverse: z0, F and G must be callable");
    const Constants c = meta.constants;

    HalfLineProblem p;
    p.dim = dim;
    p.constants = c;
    p.regularity = meta.regularity;
    p.x0_sup = meta.x0_sup;
    p.x0 = [z0 = std::move(z0)](double tau, std::span<double> out) { z0(-tau, out); };
    p.kernels.f = [F = std::move(F), c](double tau, double sigma, std::span<const double> x, std::span<double> out) {
        F(-tau, -sigma, x, out);
        const double w = -std::exp(-c.alpha1 * sigma + c.alpha2 * tau);
        for (double& v : out) v *= w;
    };
    p.kernels.g = [G = std::move(G), c](double tau, double sigma, std::span<const double> x, std::span<double> out) {
        G(-tau, -sigma, x, out);
        const double w = std::exp(c.beta * sigma - c.gamma * tau);
        for (double& v : out) v *= w;
    };
    require_valid(p);
    return p;
}

HalfLineProblem from_memory_ide(MemoryRhs f1, Kernel g1, std::vector<double> u0, const ReductionMetadata& meta) {
    if (!f1 || !g1) throw InvalidInput("from_memory_ide: f1 and g1 must be callable");
    const std::size_t n = u0.size();
    if (n == 0) throw InvalidInput("from_memory_ide: u0 must be non-empty");

    Forcing z0 = [u0 = std::move(u0)](double, std::span<double> out) {
        std::copy(u0.begin(), u0.end(), out.begin());
        std::fill(out.begin() + static_cast<std::ptrdiff_t>(u0.size()), out.end(), 0.0);
    };
    Kernel F = [f1 = std::move(f1), n](double, double s, std::span<const double> z, std::span<double> out) {
        f1(s, z.first(n), z.subspan(n, n), out.first(n));
        std::fill(out.begin() + static_cast<std::ptrdiff_t>(n), out.end(), 0.0);
    };
    Kernel G = [g1 = std::move(g1), n](double t, double s, std::span<const double> z, std::span<double> out) {
        std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(n), 0.0);
        g1(t, s, z.first(n), out.subspan(n, n));
    };
    return time_reverse(2 * n, std::move(z0), std::move(F), std::move(G), meta);
}

}  // namespace halfline
