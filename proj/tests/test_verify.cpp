#include "halfline/catalog.hpp"
#include "halfline/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

namespace halfline {
namespace {

Kernel scaled(double a) {
    return [a](double, double, std::span<const double> x, std::span<double> o) { o[0] = a * x[0]; };
}

Forcing constant(double v) {
    return [v](double, std::span<double> o) { o[0] = v; };
}

HalfLineProblem zero_kernels_decaying_forcing() {
    HalfLineProblem p;
    p.kernels = {scaled(0.0), scaled(0.0)};
    p.constants = {1, 2, 1, 0};
    p.x0 = [](double t, std::span<double> o) { o[0] = std::exp(-t); };
    p.x0_sup = 1.0;
    return p;
}

TEST(Quadrature, KnownIntegrals) {
    const auto a = oracle::integrate([](double s) { return std::exp(-s); }, 0.0, 3.0);
    EXPECT_NEAR(a.value, 1.0 - std::exp(-3.0), 1e-15);
    const auto b = oracle::integrate_tanh_sinh([](double s) { return std::sin(s); }, 0.0, std::numbers::pi);
    EXPECT_NEAR(b.value, 2.0, 1e-14);
    const auto c = oracle::integrate_exp_sinh([](double s) { return std::exp(-2.0 * s); }, 1.0);
    EXPECT_NEAR(c.value, 0.5 * std::exp(-2.0), 1e-15);
    EXPECT_THROW(oracle::integrate([](double) { return std::numeric_limits<double>::quiet_NaN(); }, 0.0, 1.0),
                 OracleFailure);
}

TEST(Quadrature, ErrorEstimateScalesWithInterval) {
    // a wide oscillatory integrand where the raw reference-interval estimate
    // understates the absolute error
    oracle::QuadOptions o;
    o.max_abs_error = 1.0;
    const auto r = oracle::integrate([](double s) { return std::cos(s); }, 0.0, 200.0, o);
    EXPECT_NEAR(r.value, std::sin(200.0), std::max(r.error, 1e-12));
}

TEST(Manufacture, ZeroKernelsReproduceExact) {
    ManufactureInput in;
    in.exact = [](double t, std::span<double> o) { o[0] = std::cos(t); };
    in.kernels = {scaled(0.0), scaled(0.0)};
    in.x0_sup = 1.0;
    const auto mp = manufacture(in);
    double v = 0.0;
    for (double t : {0.0, 0.7, 3.0}) {
        mp.problem.x0(t, std::span<double>(&v, 1));
        EXPECT_NEAR(v, std::cos(t), 1e-14);
    }
}

TEST(Manufacture, QuadratureForcingMatchesClosedForms) {
    for (double gamma : {0.0, 1.0}) {
        ManufactureInput in;
        in.exact = constant(1.0);
        in.kernels = {scaled(0.25), scaled(0.25)};
        in.constants = {1, 1, 1, gamma};
        in.regularity.Lf = in.regularity.Lg = 0.25;
        in.regularity.Cf = in.regularity.Cg = 0.375;
        in.x0_sup = 0.75;
        const auto mp = manufacture(in);
        EXPECT_EQ(mp.construction, Construction::quadrature);
        double v = 0.0;
        for (double t : {0.0, 0.5, 1.0, 2.0, 5.0}) {
            mp.problem.x0(t, std::span<double>(&v, 1));
            const double want = gamma == 0.0 ? 0.75 : 0.5 + 0.25 * std::exp(-t);
            EXPECT_NEAR(v, want, 1e-10) << "gamma=" << gamma << " t=" << t;
        }
    }
}

TEST(Manufacture, CatalogConsistencyResiduals) {
    for (const auto& id : catalog_ids()) {
        const auto entry = catalog_entry(id);
        if (!entry.exact) continue;
        const auto mp = manufactured(entry);
        for (double t : {0.0, 0.5, 1.0, 2.0, 5.0}) EXPECT_LE(consistency_residual(mp, t), 1e-8) << id << " t=" << t;
    }
    EXPECT_THROW(manufactured(catalog_entry("P3")), InvalidInput);
}

TEST(ErrorSup, P1WindowAndIdentity) {
    const auto entry = catalog_entry("P1");
    const auto sol = solve(entry.problem, Grid(0.1, 200), 1e-10);
    EXPECT_LE(error_sup(sol, entry.exact, {0, 100}), 1e-8);

    const Forcing self = [&](double t, std::span<double> o) {
        o[0] = sol.x[static_cast<std::size_t>(std::lround(t / 0.1))][0];
    };
    EXPECT_EQ(error_sup(sol, self, {0, 200}), 0.0);
}

TEST(ErrorSup, P2IsPositive) {
    const auto entry = catalog_entry("P2");
    const auto sol = solve(entry.problem, Grid(0.1, 150), 1e-10);
    EXPECT_GT(error_sup(sol, entry.exact, {0, 50}), 0.0);
}

TEST(EmpiricalOrders, HalvingArithmetic) {
    const std::vector<double> e{0.02, 0.01, 0.005};
    const auto o = empirical_orders(e, 1e-12);
    ASSERT_EQ(o.size(), 3u);
    EXPECT_FALSE(o[0].has_value());
    EXPECT_NEAR(*o[1], 1.0, 1e-14);
    EXPECT_NEAR(*o[2], 1.0, 1e-14);
    const auto floored = empirical_orders(e, 0.008);
    EXPECT_TRUE(floored[1].has_value());
    EXPECT_FALSE(floored[2].has_value());
}

TEST(ConvergenceStudy, P2FirstOrder) {
    const auto mp = manufactured(catalog_entry("P2"));
    const std::vector<double> hs{0.2, 0.1, 0.05};
    const auto pol = tail_policy(mp.problem, 5.0, 1e-6, hs);
    const auto t = convergence_study(mp, hs, 1e-10, pol);
    ASSERT_EQ(t.rows.size(), 3u);
    for (std::size_t r = 0; r < 3; ++r) {
        EXPECT_TRUE(t.rows[r].converged);
        EXPECT_LT(t.rows[r].tail_bound, 0.01 * t.rows[r].error);
    }
    for (std::size_t r = 1; r < 3; ++r) {
        ASSERT_TRUE(t.rows[r].order.has_value());
        EXPECT_GE(*t.rows[r].order, 0.8);
        EXPECT_LE(*t.rows[r].order, 1.2);
    }
}

TEST(ConvergenceStudy, P1OrdersAbsentBelowFloor) {
    const auto mp = manufactured(catalog_entry("P1"));
    const std::vector<double> hs{0.2, 0.1, 0.05};
    const double tol = 1e-8;
    const auto t = convergence_study(mp, hs, tol, tail_policy(mp.problem, 5.0, 1e-7, hs));
    for (const auto& row : t.rows) {
        EXPECT_LT(row.error, kOrderFloorFactor * tol);
        EXPECT_FALSE(row.order.has_value());
    }
}

TEST(ConvergenceStudy, RejectsNonHalvingSequence) {
    const auto mp = manufactured(catalog_entry("P1"));
    const std::vector<double> hs{0.2, 0.12};
    EXPECT_THROW(convergence_study(mp, hs, 1e-8, NPolicy{}), InvalidInput);
}

TEST(TailPolicy, HorizonMeetsTarget) {
    for (const char* id : {"P1", "P1'", "P2", "P3", "P4"}) {
        const auto p = catalog_entry(id).problem;
        const std::vector<double> hs{0.2, 0.1};
        const auto pol = tail_policy(p, 4.0, 1e-7, hs);
        for (double h : hs) {
            const auto N = static_cast<std::size_t>(std::ceil(pol.horizon_time / h - 1e-9));
            EXPECT_LE(propagated_tail_bound(p, Grid(h, N), 4.0), 1e-7 * (1 + 1e-9)) << id << " h=" << h;
        }
    }
}

TEST(TruncationStudy, P1GeometricDecay) {
    const std::vector<std::size_t> Ns{50, 100, 200};
    const auto t = truncation_study(catalog_entry("P1").problem, 0.1, Ns, 40, 1e-12);
    ASSERT_EQ(t.rows.size(), 3u);
    EXPECT_EQ(t.reference_N, 800u);
    EXPECT_LE(t.rows[1].error / t.rows[0].error, std::exp(-5.0) * 10);
    EXPECT_LE(t.rows[1].error, 0.1 * t.rows[0].error);
    EXPECT_LE(t.rows[2].error, t.rows[1].error);
}

TEST(TruncationStudy, P1PrimeMonotone) {
    const std::vector<std::size_t> Ns{50, 100, 200};
    const auto t = truncation_study(catalog_entry("P1'").problem, 0.1, Ns, 40, 1e-12);
    EXPECT_GT(t.rows[0].error, t.rows[1].error);
    EXPECT_GT(t.rows[1].error, t.rows[2].error);
}

TEST(TruncationStudy, SingleEntryAndPreconditions) {
    const auto p = catalog_entry("P1").problem;
    const std::vector<std::size_t> one{60};
    EXPECT_EQ(truncation_study(p, 0.1, one, 40, 1e-10).rows.size(), 1u);
    const std::vector<std::size_t> bad{60, 50};
    EXPECT_THROW(truncation_study(p, 0.1, bad, 40, 1e-10), InvalidInput);
    const std::vector<std::size_t> narrow{30};
    EXPECT_THROW(truncation_study(p, 0.1, narrow, 40, 1e-10), InvalidInput);
}

TEST(Decay, P4BoundHolds) {
    const auto p = catalog_entry("P4").problem;
    const auto sol = solve(p, Grid(0.1, 200), 1e-12);
    const auto rep = decay_check(sol, p);
    ASSERT_TRUE(rep.applicable) << rep.reason;
    EXPECT_TRUE(rep.bound_holds);
    EXPECT_EQ(rep.violations, 0u);
    EXPECT_TRUE(rep.tail_max_nonincreasing);
    EXPECT_LT(rep.tail_max.back(), 1e-3 * rep.tail_max.front());
}

TEST(Decay, ZeroKernelsTrivial) {
    const auto p = zero_kernels_decaying_forcing();
    const auto sol = solve(p, Grid(0.1, 100), 1e-12);
    const auto rep = decay_check(sol, p);
    ASSERT_TRUE(rep.applicable) << rep.reason;
    EXPECT_TRUE(rep.bound_holds);
    for (std::size_t i = 0; i <= 100; ++i) EXPECT_NEAR(sol.x[i][0], std::exp(-0.1 * double(i)), 1e-15);
}

TEST(Decay, EqualRatesInapplicable) {
    const auto p = catalog_entry("P1'").problem;
    const auto rep = decay_check(solve(p, Grid(0.1, 50), 1e-10), p);
    EXPECT_FALSE(rep.applicable);
    EXPECT_FALSE(rep.reason.empty());
}

TEST(SampledChecks, InvarianceAndContractionOnCatalog) {
    for (const auto& id : catalog_ids()) {
        const auto e = catalog_entry(id);
        const auto sys = assemble(e.problem, e.default_grid);
        const auto inv = check_invariance(sys, 50, 17);
        EXPECT_EQ(inv.violations, 0u) << id << " max " << inv.max_output_norm << " R " << inv.radius;
        const auto con = check_contraction(sys, 200, 18);
        EXPECT_EQ(con.pairs, 200u);
        EXPECT_EQ(con.violations, 0u) << id << " max ratio " << con.max_ratio;
    }
}

TEST(SampledChecks, DeterministicInSeed) {
    const auto e = catalog_entry("P2");
    const auto sys = assemble(e.problem, e.default_grid);
    EXPECT_EQ(check_contraction(sys, 20, 5).max_ratio, check_contraction(sys, 20, 5).max_ratio);
}

}  // namespace
}  // namespace halfline
