#include "halfline/catalog.hpp"

#include <cmath>

namespace halfline {

namespace {

Kernel linear_kernel(double a) {
    return [a](double, double, std::span<const double> x, std::span<double> out) {
        for (std::size_t k = 0; k < x.size(); ++k) out[k] = a * x[k];
    };
}

Forcing constant(double v) {
    return [v](double, std::span<double> out) { out[0] = v; };
}

// Linear kernels 0.25·x with Lf = Lg = 0.25 (q = 0.5). Cf, Cg are 0.25·R for
// the self-consistent radius R = x0_sup / (1 − q) = 1.5.
RegularityData p1_regularity() {
    RegularityData r;
    r.Lf = 0.25;
    r.Lg = 0.25;
    r.Cf = 0.375;
    r.Cg = 0.375;
    r.Ef = 0.0;
    r.Eg = 0.0;
    r.Df = 0.0;
    r.Dg = 0.0;
    return r;
}

CatalogEntry make_p1() {
    ManufactureInput in;
    in.exact = constant(1.0);
    in.kernels = {linear_kernel(0.25), linear_kernel(0.25)};
    in.constants = {1.0, 1.0, 1.0, 0.0};
    in.regularity = p1_regularity();
    in.x0_sup = 0.75;
    // 1 − 0.25(1 − e^{−t}) − 0.25 e^{−t}
    in.closed_form_x0 = constant(0.75);
    auto mp = manufacture(std::move(in));
    return {"P1", "linear, beta > gamma, exact x = 1", std::move(mp.problem), std::move(mp.exact), mp.construction,
            Grid(0.1, 200)};
}

CatalogEntry make_p1_prime() {
    ManufactureInput in;
    in.exact = constant(1.0);
    in.kernels = {linear_kernel(0.25), linear_kernel(0.25)};
    in.constants = {1.0, 1.0, 1.0, 1.0};
    in.regularity = p1_regularity();
    in.x0_sup = 0.75;
    // 1 − 0.25(1 − e^{−t}) − 0.25
    in.closed_form_x0 = Forcing([](double t, std::span<double> out) { out[0] = 0.5 + 0.25 * std::exp(-t); });
    auto mp = manufacture(std::move(in));
    return {"P1'", "P1 with gamma = beta, exact x = 1", std::move(mp.problem), std::move(mp.exact), mp.construction,
            Grid(0.1, 200)};
}

CatalogEntry make_p2() {
    ManufactureInput in;
    in.exact = [](double t, std::span<double> out) { out[0] = std::exp(-t); };
    in.kernels.f = [](double, double s, std::span<const double> x, std::span<double> out) {
        out[0] = 0.3 * std::sin(x[0]) / (1.0 + s);
    };
    in.kernels.g = [](double t, double s, std::span<const double> x, std::span<double> out) {
        out[0] = 0.3 * std::cos(x[0]) * std::exp(-0.5 * (s - t));
    };
    in.constants = {1.0, 1.0, 1.0, 0.0};
    in.regularity.Lf = 0.3;
    in.regularity.Lg = 0.3;
    in.regularity.Cf = 0.3;
    in.regularity.Cg = 0.3;
    in.regularity.Ef = 0.3;
    in.regularity.Df = 0.0;
    in.regularity.Eg = 0.15;
    in.regularity.Dg = 0.15;
    // |e^{−t}| + Cf/|α1| + Cg/β
    in.x0_sup = 1.6;
    auto mp = manufacture(std::move(in));
    return {"P2", "nonlinear scalar, s-dependent kernels, exact x = exp(-t)", std::move(mp.problem),
            std::move(mp.exact), mp.construction, Grid(0.1, 300)};
}

// u' = 0.2 e^{t} (cos u − tanh v),  v(t) = ∫_{−∞}^t 0.3 e^{s−t} sin u(s) ds,  u(0) = 0.5,
// reduced with α1 = −1, α2 = 0, β = γ = 1. The wrapped kernels are
//   f(τ,σ,[u,v]) = [−0.2 (cos u − tanh v), 0],  g(τ,σ,[u,v]) = [0, 0.3 sin u].
CatalogEntry make_p3() {
    MemoryRhs f1 = [](double t, std::span<const double> u, std::span<const double> v, std::span<double> out) {
        out[0] = 0.2 * std::exp(t) * (std::cos(u[0]) - std::tanh(v[0]));
    };
    Kernel g1 = [](double t, double s, std::span<const double> u, std::span<double> out) {
        out[0] = 0.3 * std::exp(s - t) * std::sin(u[0]);
    };
    ReductionMetadata meta;
    meta.constants = {-1.0, 0.0, 1.0, 1.0};
    meta.regularity.Lf = 0.4;  // max-norm: 0.2 + 0.2
    meta.regularity.Lg = 0.3;
    meta.regularity.Cf = 0.4;
    meta.regularity.Cg = 0.3;
    meta.x0_sup = 0.5;
    HalfLineProblem p = from_memory_ide(std::move(f1), std::move(g1), {0.5}, meta);
    return {"P3", "2-component system from a memory integro-differential equation", std::move(p), {},
            Construction::closed_form, Grid(0.1, 150)};
}

CatalogEntry make_p4() {
    HalfLineProblem p;
    p.dim = 1;
    p.constants = {1.0, 2.0, 1.0, 0.0};
    auto sine = [](double, double, std::span<const double> x, std::span<double> out) { out[0] = 0.2 * std::sin(x[0]); };
    p.kernels = {sine, sine};
    p.regularity.Lf = 0.2;
    p.regularity.Lg = 0.2;
    p.regularity.Cf = 0.2;
    p.regularity.Cg = 0.2;
    p.x0 = [](double t, std::span<double> out) { out[0] = std::exp(-t); };
    p.x0_sup = 1.0;
    return {"P4", "decaying forcing exp(-t), alpha1 < alpha2, beta > gamma", std::move(p), {},
            Construction::closed_form, Grid(0.1, 200)};
}

}  // namespace

std::vector<std::string> catalog_ids() { return {"P1", "P1'", "P2", "P3", "P4"}; }

CatalogEntry catalog_entry(std::string_view id) {
    if (id == "P1") return make_p1();
    if (id == "P1'" || id == "P1prime") return make_p1_prime();
    if (id == "P2") return make_p2();
    if (id == "P3") return make_p3();
    if (id == "P4") return make_p4();
    std::string ids;
    for (const auto& s : catalog_ids()) ids += (ids.empty() ? "" : ", ") + s;
    throw InvalidInput("unknown catalog id '" + std::string(id) + "'; available ids: " + ids);
}

ManufacturedProblem manufactured(const CatalogEntry& entry) {
    if (!entry.exact) throw InvalidInput("catalog problem " + entry.id + " has no exact solution");
    return {entry.problem, entry.exact, entry.construction};
}

}  // namespace halfline
