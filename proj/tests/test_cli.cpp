#include "halfline/cli.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace halfline::cli {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

class TempDir : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("halfline_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    fs::path dir_;
};

RunConfig must_parse(const std::string& text) {
    auto r = parse_config(text);
    EXPECT_TRUE(r.ok()) << (r.errors.empty() ? "" : r.errors.front());
    return r.config.value_or(RunConfig{});
}

TEST(ParseConfig, MinimalSolveDocument) {
    const auto c =
        must_parse(R"({"command": "solve", "problem": {"id": "P1"}, "grid": {"h": 0.1, "N": 200}, "tol": 1e-10})");
    EXPECT_EQ(c.command, Command::solve);
    EXPECT_EQ(std::get<std::string>(c.problem), "P1");
    EXPECT_EQ(*c.grid.h, 0.1);
    EXPECT_EQ(*c.grid.N, 200u);
    EXPECT_EQ(c.tol, 1e-10);
    EXPECT_FALSE(c.tol_defaulted);
    EXPECT_TRUE(c.output.empty());
}

TEST(ParseConfig, MissingTolDefaultsAndIsReported) {
    const auto c = must_parse(R"({"command": "solve", "problem": {"id": "P1"}, "grid": {"N": 20}})");
    EXPECT_EQ(c.tol, 1e-8);
    EXPECT_TRUE(c.tol_defaulted);
    const auto res = run(c);
    EXPECT_EQ(res.exit_code, kExitSuccess);
    EXPECT_NE(res.summary.find("(default)"), std::string::npos) << res.summary;
}

TEST(ParseConfig, NonPositiveStepNamesGridInvariant) {
    for (const char* h : {"0", "-0.1"}) {
        const auto r = parse_config(std::string(R"({"command": "solve", "problem": {"id": "P1"}, "grid": {"h": )") + h +
                                    "}}");
        ASSERT_FALSE(r.ok());
        EXPECT_NE(r.errors.front().find("Grid invariant violated: h > 0"), std::string::npos) << r.errors.front();
        EXPECT_NE(r.errors.front().find("grid.h"), std::string::npos);
    }
}

TEST(ParseConfig, SyntaxErrorCarriesLineContext) {
    const auto r = parse_config("{\n  \"command\": \"solve\",\n  \"problem\": {\"id\": \"P1\"\n}");
    ASSERT_FALSE(r.ok());
    EXPECT_NE(r.errors.front().find("line 4"), std::string::npos) << r.errors.front();
}

TEST(ParseConfig, StructuralInvariants) {
    auto errs = [](const std::string& text) {
        const auto r = parse_config(text);
        EXPECT_FALSE(r.ok()) << text;
        return r.errors.empty() ? std::string() : r.errors.front();
    };
    EXPECT_NE(errs(R"({"command": "solve"})").find("exactly one problem source"), std::string::npos);
    EXPECT_NE(errs(R"({"command": "solve", "problem": {"id": "P1", "inline": {}}})").find("exactly one"),
              std::string::npos);
    EXPECT_NE(errs(R"({"command": "converge", "problem": {"id": "P2"}, "grid": {"h_list": [0.2, 0.15]}})")
                  .find("strictly halving"),
              std::string::npos);
    EXPECT_NE(errs(R"({"command": "truncate", "problem": {"id": "P1"}, "grid": {"N_list": [100, 50]}})")
                  .find("strictly increasing"),
              std::string::npos);
    EXPECT_NE(errs(R"({"command": "plot", "problem": {"id": "P1"}})").find("unknown command"), std::string::npos);
    EXPECT_NE(errs(R"({"command": "solve", "problem": {"id": "P1"}, "grdi": {}})").find("grdi"), std::string::npos);
}

TEST(ParseConfig, InlineProblem) {
    const auto c = must_parse(R"({
        "command": "solve",
        "problem": {"inline": {"alpha1": 1, "alpha2": 1, "beta": 1, "gamma": 0,
                               "A": [[0.25]], "B": 0.25,
                               "x0_family": "exp_decay", "x0_params": {"offset": 0.5, "scale": 0.25, "rate": 1}}},
        "grid": {"h": 0.1, "N": 100}
    })");
    const auto& spec = std::get<InlineLinearProblem>(c.problem);
    EXPECT_EQ(spec.A.size(), 1u);
    EXPECT_EQ(spec.B[0][0], 0.25);
    const auto p = build_inline_problem(spec);
    EXPECT_EQ(p.regularity.Lf, 0.25);
    EXPECT_EQ(p.regularity.Lg, 0.25);
    EXPECT_EQ(p.x0_sup, 0.75);
    EXPECT_DOUBLE_EQ(p.regularity.Cg, 0.25 * 1.5);
    double v = 0.0;
    p.x0(1.0, std::span<double>(&v, 1));
    EXPECT_NEAR(v, 0.5 + 0.25 * std::exp(-1.0), 1e-16);
}

TEST(ParseConfig, InlineShapeErrors) {
    const auto r = parse_config(R"({"command": "solve", "problem": {"inline": {"alpha1": 1, "alpha2": 1,
        "beta": 1, "gamma": 0, "A": [[0.1, 0], [0, 0.1]], "B": [[0.1]], "x0_params": {"value": 1}}}})");
    ASSERT_FALSE(r.ok());
    EXPECT_NE(r.errors.front().find("problem.inline.B"), std::string::npos) << r.errors.front();
}

TEST(Run, A1ViolationExitsInvalid) {
    const auto c = must_parse(R"({"command": "solve", "problem": {"inline": {"alpha1": 1, "alpha2": 1,
        "beta": 0.5, "gamma": 0, "A": 0.3, "B": 0.4, "x0_params": {"value": 1}}}})");
    const auto res = run(c);
    EXPECT_EQ(res.exit_code, kExitInvalid);
    EXPECT_NE(res.diagnostic.find("A1"), std::string::npos) << res.diagnostic;
}

TEST(Run, UnknownIdListsCatalog) {
    const auto res = run(must_parse(R"({"command": "solve", "problem": {"id": "P7"}})"));
    EXPECT_EQ(res.exit_code, kExitInvalid);
    for (const char* id : {"P1", "P1'", "P2", "P3", "P4"}) EXPECT_NE(res.diagnostic.find(id), std::string::npos);
}

TEST(Run, UnconvergedSolveExitsOne) {
    // q = 0.999 needs thousands of sweeps to certify 1e-12, far beyond a cap of 20
    const auto c = must_parse(R"({"command": "solve", "problem": {"inline": {"alpha1": 1, "alpha2": 1,
        "beta": 1, "gamma": 0, "A": 0.4995, "B": 0.4995, "x0_params": {"value": 1}}},
        "grid": {"h": 0.1, "N": 200}, "tol": 1e-12, "max_iter": 20})");
    const auto res = run(c);
    EXPECT_EQ(res.exit_code, kExitUnconverged) << res.summary << res.diagnostic;
}

TEST(Run, SummaryNamesCaseAndConstants) {
    const auto r1 = run(must_parse(R"({"command": "solve", "problem": {"id": "P1"}, "grid": {"N": 50}})"));
    EXPECT_NE(r1.summary.find("case: I\n"), std::string::npos);
    EXPECT_NE(r1.summary.find("q: 0.5"), std::string::npos);
    EXPECT_NE(r1.summary.find("iterations:"), std::string::npos);
    EXPECT_NE(r1.summary.find("certified bound:"), std::string::npos);
    const auto r2 = run(must_parse(R"({"command": "solve", "problem": {"id": "P1'"}, "grid": {"N": 50}})"));
    EXPECT_NE(r2.summary.find("case: II"), std::string::npos);
    EXPECT_NE(r2.summary.find("delta: 0.5"), std::string::npos);
    EXPECT_NE(r2.summary.find("theta:"), std::string::npos);
}

TEST_F(TempDir, ConvergeP2WritesOrders) {
    const auto out = dir_ / "conv.csv";
    auto c = must_parse(R"({"command": "converge", "problem": {"id": "P2"}, "grid": {"h_list": [0.2, 0.1, 0.05]}})");
    c.output = out.string();
    const auto res = run(c);
    ASSERT_EQ(res.exit_code, kExitSuccess) << res.diagnostic;
    std::istringstream csv(slurp(out));
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "h,error,order");
    std::getline(csv, line);
    EXPECT_EQ(line.back(), ',');  // no order for the coarsest row
    int rows = 1;
    while (std::getline(csv, line)) {
        ++rows;
        const double order = std::stod(line.substr(line.rfind(',') + 1));
        EXPECT_GE(order, 0.8);
        EXPECT_LE(order, 1.2);
    }
    EXPECT_EQ(rows, 3);
}

TEST_F(TempDir, CsvShapes) {
    ConvergenceTable ct;
    for (double h : {0.2, 0.1, 0.05}) ct.rows.push_back({h, h / 10, std::nullopt, 10, 0.0, 5, true});
    emit_csv(to_table(ct), (dir_ / "c.csv").string());
    const auto text = slurp(dir_ / "c.csv");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
    EXPECT_EQ(text.back(), '\n');

    emit_csv(to_table(TruncationTable{}), (dir_ / "t.csv").string());
    EXPECT_EQ(slurp(dir_ / "t.csv"), "N,error\n");

    EXPECT_THROW(emit_csv(to_table(TruncationTable{}), (dir_ / "missing" / "x.csv").string()), OutputError);
}

TEST(Csv, NumberFormatting) {
    CsvTable t{{"a", "b", "c", "d"}, {{0.1, std::int64_t{42}, std::monostate{}, std::string("x,y")}}};
    EXPECT_EQ(to_csv(t), "a,b,c,d\n0.10000000000000001,42,,\"x,y\"\n");
    CsvTable u{{"v"}, {{1e-20}, {1.0}, {123456.5}}};
    EXPECT_EQ(to_csv(u), "v\n9.9999999999999995e-21\n1\n123456.5\n");
}

TEST_F(TempDir, SolveCsvColumnsAndDeterminism) {
    auto c = must_parse(R"({"command": "solve", "problem": {"id": "P3"}, "grid": {"h": 0.1, "N": 60}})");
    c.output = (dir_ / "a.csv").string();
    ASSERT_EQ(run(c).exit_code, kExitSuccess);
    c.output = (dir_ / "b.csv").string();
    ASSERT_EQ(run(c).exit_code, kExitSuccess);
    const auto a = slurp(dir_ / "a.csv");
    EXPECT_EQ(a, slurp(dir_ / "b.csv"));
    EXPECT_EQ(a.substr(0, a.find('\n')), "i,t,x_0,x_1");
    EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 62);
}

TEST_F(TempDir, VerifyTableAndCatalog) {
    auto c = must_parse(R"({"command": "verify", "problem": {"id": "P4"}})");
    c.output = (dir_ / "v.csv").string();
    const auto res = run(c);
    EXPECT_EQ(res.exit_code, kExitSuccess) << res.summary;
    const auto v = slurp(dir_ / "v.csv");
    EXPECT_EQ(v.substr(0, v.find('\n')), "check,name,status,detail");
    EXPECT_EQ(v.find(",fail,"), std::string::npos) << v;
    EXPECT_NE(v.find("decay,"), std::string::npos);

    auto k = must_parse(R"({"command": "catalog"})");
    k.output = (dir_ / "k.csv").string();
    EXPECT_EQ(run(k).exit_code, kExitSuccess);
    const auto kt = slurp(dir_ / "k.csv");
    EXPECT_EQ(kt.substr(0, kt.find('\n')), "id,dim,case,q,description");
    EXPECT_EQ(std::count(kt.begin(), kt.end(), '\n'), 6);
}

TEST_F(TempDir, TruncateP1Table) {
    auto c = must_parse(R"({"command": "truncate", "problem": {"id": "P1"}, "grid": {"h": 0.1, "N_list": [50, 100],
        "window": 40}, "tol": 1e-12})");
    c.output = (dir_ / "t.csv").string();
    ASSERT_EQ(run(c).exit_code, kExitSuccess);
    std::istringstream csv(slurp(dir_ / "t.csv"));
    std::string header, r1, r2;
    std::getline(csv, header);
    std::getline(csv, r1);
    std::getline(csv, r2);
    EXPECT_EQ(header, "N,error");
    const double e50 = std::stod(r1.substr(r1.find(',') + 1));
    const double e100 = std::stod(r2.substr(r2.find(',') + 1));
    EXPECT_LE(e100, 0.1 * e50);
}

}  // namespace
}  // namespace halfline::cli
