#include "halfline/cli.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

namespace halfline::cli {

using nlohmann::json;

const char* to_string(Command c) {
    switch (c) {
        case Command::solve: return "solve";
        case Command::converge: return "converge";
        case Command::truncate: return "truncate";
        case Command::verify: return "verify";
        case Command::catalog: return "catalog";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// parsing

namespace {

std::string line_context(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t line_start = 0;
    const std::size_t end = std::min(byte, text.size());
    for (std::size_t k = 0; k < end; ++k) {
        if (text[k] == '\n') {
            ++line;
            line_start = k + 1;
        }
    }
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::ostringstream os;
    os << "line " << line << ", column " << (end - line_start + 1) << ": "
       << text.substr(line_start, line_end - line_start);
    return os.str();
}

class Reader {
public:
    explicit Reader(std::vector<std::string>& errors) : errors_(errors) {}

    void error(const std::string& path, const std::string& msg) { errors_.push_back(path + ": " + msg); }

    std::optional<double> number(const json& obj, const std::string& key, const std::string& path) {
        if (!obj.contains(key)) return std::nullopt;
        const json& v = obj.at(key);
        if (!v.is_number()) {
            error(path + key, "expected a number");
            return std::nullopt;
        }
        const double d = v.get<double>();
        if (!std::isfinite(d)) {
            error(path + key, "must be finite");
            return std::nullopt;
        }
        return d;
    }

    std::optional<std::size_t> count(const json& v, const std::string& where) {
        if (!v.is_number_integer() || v.get<long long>() < 0) {
            error(where, "expected a non-negative integer");
            return std::nullopt;
        }
        return static_cast<std::size_t>(v.get<long long>());
    }

    /// Accepts a number or an array of numbers.
    std::optional<std::vector<double>> vector(const json& v, const std::string& where) {
        if (v.is_number()) return std::vector<double>{v.get<double>()};
        if (!v.is_array() || v.empty()) {
            error(where, "expected a number or a non-empty array of numbers");
            return std::nullopt;
        }
        std::vector<double> out;
        for (const auto& e : v) {
            if (!e.is_number()) {
                error(where, "expected numbers only");
                return std::nullopt;
            }
            out.push_back(e.get<double>());
        }
        return out;
    }

    /// Accepts a number (1×1), or an array of equal-length rows.
    std::optional<std::vector<std::vector<double>>> matrix(const json& v, const std::string& where) {
        if (v.is_number()) return std::vector<std::vector<double>>{{v.get<double>()}};
        if (!v.is_array() || v.empty()) {
            error(where, "expected a number or a non-empty array of rows");
            return std::nullopt;
        }
        std::vector<std::vector<double>> out;
        for (const auto& row : v) {
            auto r = vector(row, where);
            if (!r) return std::nullopt;
            out.push_back(std::move(*r));
        }
        const std::size_t n = out.size();
        for (const auto& r : out) {
            if (r.size() != n) {
                error(where, "matrix must be square (" + std::to_string(n) + " rows)");
                return std::nullopt;
            }
        }
        return out;
    }

private:
    std::vector<std::string>& errors_;
};

void reject_unknown(Reader& rd, const json& obj, std::initializer_list<const char*> known, const std::string& path) {
    for (const auto& [key, _] : obj.items()) {
        if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; })) {
            rd.error(path + key, "unknown key");
        }
    }
}

std::optional<InlineLinearProblem> parse_inline(Reader& rd, const json& obj) {
    const std::string path = "problem.inline.";
    if (!obj.is_object()) {
        rd.error("problem.inline", "expected an object");
        return std::nullopt;
    }
    reject_unknown(rd, obj,
                   {"alpha1", "alpha2", "beta", "gamma", "A", "B", "x0_family", "x0_params", "Lf", "Lg", "Cf", "Cg"},
                   path);
    InlineLinearProblem p;
    bool ok = true;
    auto req = [&](const char* key, double& dst) {
        auto v = rd.number(obj, key, path);
        if (v) {
            dst = *v;
        } else {
            if (!obj.contains(key)) rd.error(path + key, "required");
            ok = false;
        }
    };
    req("alpha1", p.constants.alpha1);
    req("alpha2", p.constants.alpha2);
    req("beta", p.constants.beta);
    req("gamma", p.constants.gamma);
    p.Lf = rd.number(obj, "Lf", path);
    p.Lg = rd.number(obj, "Lg", path);
    p.Cf = rd.number(obj, "Cf", path);
    p.Cg = rd.number(obj, "Cg", path);

    for (const char* key : {"A", "B"}) {
        if (!obj.contains(key)) {
            rd.error(path + key, "required");
            ok = false;
            continue;
        }
        auto m = rd.matrix(obj.at(key), path + key);
        if (!m) {
            ok = false;
            continue;
        }
        (std::string(key) == "A" ? p.A : p.B) = std::move(*m);
    }
    if (ok && p.A.size() != p.B.size()) {
        rd.error(path + "B", "must have the same dimension as A");
        ok = false;
    }
    const std::size_t n = p.A.size();

    const std::string family = obj.value("x0_family", std::string("constant"));
    const json params = obj.value("x0_params", json::object());
    if (!params.is_object()) {
        rd.error(path + "x0_params", "expected an object");
        return std::nullopt;
    }
    auto sized = [&](const char* key, std::vector<double>& dst, bool required) {
        if (!params.contains(key)) {
            if (required) {
                rd.error(path + "x0_params." + key, "required");
                ok = false;
            } else {
                dst.assign(n, 0.0);
            }
            return;
        }
        auto v = rd.vector(params.at(key), path + "x0_params." + key);
        if (!v) {
            ok = false;
            return;
        }
        if (v->size() == 1 && n > 1) v->assign(n, v->front());
        if (v->size() != n) {
            rd.error(path + "x0_params." + key, "expected " + std::to_string(n) + " components");
            ok = false;
            return;
        }
        dst = std::move(*v);
    };
    if (family == "constant") {
        p.x0.kind = X0Family::Kind::constant;
        sized("value", p.x0.offset, true);
        p.x0.scale.assign(n, 0.0);
    } else if (family == "exp_decay") {
        p.x0.kind = X0Family::Kind::exp_decay;
        sized("offset", p.x0.offset, false);
        sized("scale", p.x0.scale, true);
        auto r = rd.number(params, "rate", path + "x0_params.");
        if (!r || *r < 0.0) {
            rd.error(path + "x0_params.rate", "required, must be >= 0");
            ok = false;
        } else {
            p.x0.rate = *r;
        }
    } else {
        rd.error(path + "x0_family", "unknown family '" + family + "' (available: constant, exp_decay)");
        ok = false;
    }
    if (!ok) return std::nullopt;
    return p;
}

std::optional<Command> parse_command(const std::string& s) {
    static const std::array<std::pair<const char*, Command>, 5> table{{{"solve", Command::solve},
                                                                        {"converge", Command::converge},
                                                                        {"truncate", Command::truncate},
                                                                        {"verify", Command::verify},
                                                                        {"catalog", Command::catalog}}};
    for (const auto& [name, c] : table) {
        if (s == name) return c;
    }
    return std::nullopt;
}

}  // namespace

ParseResult parse_config(std::string_view text) {
    ParseResult res;
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        res.errors.push_back("parse error at " + line_context(text, e.byte == 0 ? 0 : e.byte - 1) + " (" + e.what() +
                             ")");
        return res;
    }
    Reader rd(res.errors);
    if (!doc.is_object()) {
        rd.error("<root>", "expected an object");
        return res;
    }
    reject_unknown(rd, doc, {"command", "problem", "grid", "tol", "max_iter", "output"}, "");

    RunConfig cfg;
    if (!doc.contains("command") || !doc.at("command").is_string()) {
        rd.error("command", "required string (solve, converge, truncate, verify, catalog)");
    } else if (auto c = parse_command(doc.at("command").get<std::string>())) {
        cfg.command = *c;
    } else {
        rd.error("command", "unknown command '" + doc.at("command").get<std::string>() +
                                "' (solve, converge, truncate, verify, catalog)");
    }

    if (doc.contains("problem")) {
        const json& pr = doc.at("problem");
        if (!pr.is_object()) {
            rd.error("problem", "expected an object");
        } else {
            reject_unknown(rd, pr, {"id", "inline"}, "problem.");
            const bool has_id = pr.contains("id");
            const bool has_inline = pr.contains("inline");
            if (has_id == has_inline) {
                rd.error("problem", "exactly one problem source required: problem.id or problem.inline");
            } else if (has_id) {
                if (!pr.at("id").is_string()) {
                    rd.error("problem.id", "expected a string");
                } else {
                    cfg.problem = pr.at("id").get<std::string>();
                }
            } else if (auto p = parse_inline(rd, pr.at("inline"))) {
                cfg.problem = std::move(*p);
            }
        }
    } else if (cfg.command != Command::catalog) {
        rd.error("problem", "exactly one problem source required: problem.id or problem.inline");
    }

    if (doc.contains("grid")) {
        const json& g = doc.at("grid");
        if (!g.is_object()) {
            rd.error("grid", "expected an object");
        } else {
            reject_unknown(rd, g, {"h", "N", "h_list", "N_list", "window"}, "grid.");
            cfg.grid.h = rd.number(g, "h", "grid.");
            if (cfg.grid.h && !(*cfg.grid.h > 0.0)) rd.error("grid.h", "Grid invariant violated: h > 0");
            if (g.contains("N")) {
                cfg.grid.N = rd.count(g.at("N"), "grid.N");
                if (cfg.grid.N && *cfg.grid.N < 1) rd.error("grid.N", "Grid invariant violated: N >= 1");
            }
            cfg.grid.window = rd.number(g, "window", "grid.");
            if (cfg.grid.window && *cfg.grid.window < 0.0) rd.error("grid.window", "must be >= 0");
            if (g.contains("h_list")) {
                if (auto v = rd.vector(g.at("h_list"), "grid.h_list")) {
                    cfg.grid.h_list = *v;
                    for (double h : cfg.grid.h_list) {
                        if (!(h > 0.0)) rd.error("grid.h_list", "Grid invariant violated: h > 0");
                    }
                    for (std::size_t r = 1; r < cfg.grid.h_list.size(); ++r) {
                        if (std::abs(cfg.grid.h_list[r - 1] / cfg.grid.h_list[r] - 2.0) > 1e-9) {
                            rd.error("grid.h_list", "must be strictly halving");
                            break;
                        }
                    }
                }
            }
            if (g.contains("N_list")) {
                if (!g.at("N_list").is_array()) {
                    rd.error("grid.N_list", "expected an array of integers");
                } else {
                    for (const auto& e : g.at("N_list")) {
                        if (auto n = rd.count(e, "grid.N_list")) cfg.grid.N_list.push_back(*n);
                    }
                    for (std::size_t r = 1; r < cfg.grid.N_list.size(); ++r) {
                        if (cfg.grid.N_list[r] <= cfg.grid.N_list[r - 1]) {
                            rd.error("grid.N_list", "must be strictly increasing");
                            break;
                        }
                    }
                }
            }
        }
    }

    if (auto tol = rd.number(doc, "tol", "")) {
        if (!(*tol > 0.0)) {
            rd.error("tol", "must be > 0");
        } else {
            cfg.tol = *tol;
            cfg.tol_defaulted = false;
        }
    }
    if (doc.contains("max_iter")) {
        if (auto n = rd.count(doc.at("max_iter"), "max_iter")) {
            if (*n == 0) {
                rd.error("max_iter", "must be >= 1");
            } else {
                cfg.max_iter = *n;
            }
        }
    }
    if (doc.contains("output")) {
        if (!doc.at("output").is_string()) {
            rd.error("output", "expected a path string");
        } else {
            cfg.output = doc.at("output").get<std::string>();
        }
    }

    if (res.errors.empty()) res.config = std::move(cfg);
    return res;
}

HalfLineProblem build_inline_problem(const InlineLinearProblem& in) {
    const std::size_t n = in.A.size();
    if (n == 0 || in.B.size() != n) throw InvalidInput("inline problem: A and B must be non-empty n×n matrices");
    auto row_norm = [](const std::vector<std::vector<double>>& M) {
        double m = 0.0;
        for (const auto& r : M) {
            double s = 0.0;
            for (double v : r) s += std::abs(v);
            m = std::max(m, s);
        }
        return m;
    };

    HalfLineProblem p;
    p.dim = n;
    p.constants = in.constants;
    auto matvec = [](std::vector<std::vector<double>> M) {
        return [M = std::move(M)](double, double, std::span<const double> x, std::span<double> out) {
            for (std::size_t r = 0; r < M.size(); ++r) {
                double s = 0.0;
                for (std::size_t k = 0; k < x.size(); ++k) s += M[r][k] * x[k];
                out[r] = s;
            }
        };
    };
    p.kernels = {matvec(in.A), matvec(in.B)};
    p.x0 = [x0 = in.x0](double t, std::span<double> out) {
        const double e = x0.kind == X0Family::Kind::exp_decay ? std::exp(-x0.rate * t) : 0.0;
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = x0.offset[k] + x0.scale[k] * e;
    };
    p.x0_sup = 0.0;
    for (std::size_t k = 0; k < n; ++k) p.x0_sup = std::max(p.x0_sup, std::abs(in.x0.offset[k]) + std::abs(in.x0.scale[k]));

    RegularityData& reg = p.regularity;
    reg.Lf = in.Lf.value_or(row_norm(in.A));
    reg.Lg = in.Lg.value_or(row_norm(in.B));
    reg.Ef = reg.Eg = reg.Df = reg.Dg = 0.0;
    double radius = p.x0_sup;
    if (in.constants.alpha1 != 0.0 && in.constants.beta > 0.0) {
        const double q = contraction_q(reg, in.constants);
        if (q < 1.0) radius = p.x0_sup / (1.0 - q);
    }
    reg.Cf = in.Cf.value_or(row_norm(in.A) * radius);
    reg.Cg = in.Cg.value_or(row_norm(in.B) * radius);
    return p;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

void append_cell(std::string& out, const CsvCell& cell) {
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
            } else if constexpr (std::is_same_v<T, std::string>) {
                if (v.find_first_of(",\"\n") == std::string::npos) {
                    out += v;
                } else {
                    out += '"';
                    for (char ch : v) {
                        if (ch == '"') out += '"';
                        out += ch;
                    }
                    out += '"';
                }
            } else {
                std::array<char, 64> buf{};
                std::to_chars_result r;
                if constexpr (std::is_same_v<T, double>) {
                    r = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
                } else {
                    r = std::to_chars(buf.data(), buf.data() + buf.size(), v);
                }
                out.append(buf.data(), r.ptr);
            }
        },
        cell);
}

}  // namespace

std::string to_csv(const CsvTable& table) {
    std::string out;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (c) out += ',';
        out += table.header[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            append_cell(out, row[c]);
        }
        out += '\n';
    }
    return out;
}

void emit_csv(const CsvTable& table, const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw OutputError("cannot open output path '" + path + "' for writing");
    const std::string s = to_csv(table);
    f.write(s.data(), static_cast<std::streamsize>(s.size()));
    f.close();
    if (!f) throw OutputError("failed writing output path '" + path + "'");
}

CsvTable to_table(const ConvergenceTable& t) {
    CsvTable out{{"h", "error", "order"}, {}};
    for (const auto& r : t.rows) {
        out.rows.push_back({r.h, r.error, r.order ? CsvCell{*r.order} : CsvCell{}});
    }
    return out;
}

CsvTable to_table(const TruncationTable& t) {
    CsvTable out{{"N", "error"}, {}};
    for (const auto& r : t.rows) out.rows.push_back({static_cast<std::int64_t>(r.N), r.error});
    return out;
}

CsvTable to_table(const GridSolution& s) {
    CsvTable out;
    out.header = {"i", "t"};
    for (std::size_t k = 0; k < s.x.dim(); ++k) out.header.push_back("x_" + std::to_string(k));
    for (std::size_t i = 0; i < s.x.nodes(); ++i) {
        std::vector<CsvCell> row{static_cast<std::int64_t>(i), s.grid.t(i)};
        for (double v : s.x[i]) row.emplace_back(v);
        out.rows.push_back(std::move(row));
    }
    return out;
}

// ---------------------------------------------------------------------------
// run

namespace {

struct Resolved {
    std::string label;
    HalfLineProblem problem;
    Forcing exact;
    Construction construction = Construction::closed_form;
    Grid default_grid{0.1, 200};
};

Resolved resolve(const RunConfig& cfg) {
    if (const auto* id = std::get_if<std::string>(&cfg.problem)) {
        CatalogEntry e = catalog_entry(*id);
        return {e.id, std::move(e.problem), std::move(e.exact), e.construction, e.default_grid};
    }
    if (const auto* in = std::get_if<InlineLinearProblem>(&cfg.problem)) {
        return {"inline", build_inline_problem(*in), {}, Construction::closed_form, Grid(0.1, 200)};
    }
    throw InvalidInput("problem: exactly one problem source required: problem.id or problem.inline");
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

void describe_system(std::ostringstream& os, const TruncatedSystem& sys) {
    const HalfLineProblem& p = *sys.problem;
    os << "case: " << to_string(sys.case_tag) << "\n";
    os << "q: " << num(contraction_q(p.regularity, p.constants)) << "\n";
    if (sys.delta) os << "delta: " << num(sys.delta->delta) << "\ntheta: " << num(sys.delta->theta) << "\n";
    os << "safe radius: " << num(safe_radius(p)) << "\n";
}

void describe_report(std::ostringstream& os, const SolveReport& r) {
    os << "iterations: " << r.iterations << "\nconverged: " << (r.converged ? "yes" : "no")
       << "\ncertified bound: " << num(r.certified_bound) << "\n";
}

void maybe_emit(const RunConfig& cfg, const CsvTable& table, std::ostringstream& os) {
    if (cfg.output.empty()) return;
    emit_csv(table, cfg.output);
    os << "wrote: " << cfg.output << "\n";
}

int run_solve(const RunConfig& cfg, Resolved& r, std::ostringstream& os) {
    const Grid grid(cfg.grid.h.value_or(r.default_grid.h()), cfg.grid.N.value_or(r.default_grid.N()));
    const TruncatedSystem sys = assemble(r.problem, grid);
    describe_system(os, sys);
    const GridSolution sol = solve(r.problem, grid, cfg.tol, cfg.max_iter);
    os << "h: " << num(grid.h()) << "\nN: " << grid.N() << "\n";
    describe_report(os, sol.report);
    os << "node error bound: " << num(sol.node_error_bound) << "\n";
    maybe_emit(cfg, to_table(sol), os);
    return sol.report.converged ? kExitSuccess : kExitUnconverged;
}

int run_converge(const RunConfig& cfg, Resolved& r, std::ostringstream& os) {
    if (!r.exact) {
        std::string ids;
        for (const auto& id : catalog_ids()) {
            if (catalog_entry(id).exact) ids += (ids.empty() ? "" : ", ") + id;
        }
        throw InvalidInput("converge requires a problem with a known exact solution (catalog ids: " + ids + ")");
    }
    const std::vector<double> h_list = cfg.grid.h_list.empty() ? std::vector<double>{0.2, 0.1, 0.05} : cfg.grid.h_list;
    const double window = cfg.grid.window.value_or(5.0);
    const NPolicy policy = tail_policy(r.problem, window, 1e-6, h_list);
    const ManufacturedProblem mp{r.problem, r.exact, r.construction};
    const ConvergenceTable t = convergence_study(mp, h_list, cfg.tol, policy);

    const TruncatedSystem sys = assemble(r.problem, Grid(h_list.front(), 1));
    describe_system(os, sys);
    os << "window: t <= " << num(window) << "\nhorizon: " << num(policy.horizon_time) << "\n";
    bool all_converged = true;
    for (const auto& row : t.rows) {
        os << "h=" << num(row.h) << " N=" << row.N << " error=" << num(row.error)
           << " order=" << (row.order ? num(*row.order) : std::string("-")) << " iterations=" << row.iterations
           << (row.converged ? "" : " (unconverged)") << "\n";
        all_converged = all_converged && row.converged;
    }
    maybe_emit(cfg, to_table(t), os);
    return all_converged ? kExitSuccess : kExitUnconverged;
}

int run_truncate(const RunConfig& cfg, Resolved& r, std::ostringstream& os) {
    const double h = cfg.grid.h.value_or(r.default_grid.h());
    const std::vector<std::size_t> N_list =
        cfg.grid.N_list.empty() ? std::vector<std::size_t>{50, 100, 200} : cfg.grid.N_list;
    const double w = cfg.grid.window.value_or(40.0);
    if (w != std::floor(w)) throw InvalidInput("grid.window: truncate expects a node index");
    const auto window = static_cast<std::size_t>(w);

    const TruncatedSystem sys = assemble(r.problem, Grid(h, N_list.empty() ? 1 : N_list.front()));
    describe_system(os, sys);
    const TruncationTable t = truncation_study(r.problem, h, N_list, window, cfg.tol);
    os << "window: i <= " << t.window << "\nreference N: " << t.reference_N << "\n";
    for (const auto& row : t.rows) os << "N=" << row.N << " error=" << num(row.error) << "\n";
    maybe_emit(cfg, to_table(t), os);
    return kExitSuccess;
}

int run_verify(const RunConfig& cfg, Resolved& r, std::ostringstream& os) {
    const Grid grid(cfg.grid.h.value_or(r.default_grid.h()), cfg.grid.N.value_or(r.default_grid.N()));
    CsvTable table{{"check", "name", "status", "detail"}, {}};
    bool failed = false;
    auto add = [&](const std::string& check, const std::string& name, const char* status, const std::string& detail) {
        table.rows.push_back({check, name, std::string(status), detail});
        if (std::string(status) == "fail") failed = true;
    };
    auto pf = [](bool ok) { return ok ? "pass" : "fail"; };

    for (const auto& c : validate(r.problem).checks) add("validate", c.name, pf(c.passed), c.detail);

    const TruncatedSystem sys = assemble(r.problem, grid);
    describe_system(os, sys);

    const auto inv = check_invariance(sys, 20, 1);
    add("invariance", "operator maps the invariant ball into itself", pf(inv.violations == 0),
        "max output norm " + num(inv.max_output_norm) + " vs radius " + num(inv.radius));
    const auto con = check_contraction(sys, 200, 2);
    add("contraction", "sampled Lipschitz ratio <= contraction constant", pf(con.violations == 0),
        "max ratio " + num(con.max_ratio) + " vs " + num(con.bound));

    const GridSolution sol = solve(r.problem, grid, cfg.tol, cfg.max_iter);
    describe_report(os, sol.report);
    add("solve", "picard iteration converged", pf(sol.report.converged),
        std::to_string(sol.report.iterations) + " iterations, certified bound " + num(sol.report.certified_bound));

    const auto zeta = gronwall_zeta(grid, r.problem.constants, r.problem.regularity);
    const double q = contraction_q(r.problem.regularity, r.problem.constants);
    const auto [zmin, zmax] = std::minmax_element(zeta.zeta.begin(), zeta.zeta.end());
    add("gronwall", "1 <= zeta_i <= 1/(1-q)", pf(*zmin >= 1.0 && *zmax <= 1.0 / (1.0 - q) + 1e-8),
        "zeta in [" + num(*zmin) + ", " + num(*zmax) + "], 1/(1-q) = " + num(1.0 / (1.0 - q)));

    if (r.exact) {
        const ManufacturedProblem mp{r.problem, r.exact, r.construction};
        for (double t : {0.0, 0.5, 1.0, 2.0, 5.0}) {
            const double res = consistency_residual(mp, t);
            add("consistency", "exact solution residual at t=" + num(t), pf(res <= 1e-8), num(res));
        }
    } else {
        add("consistency", "exact solution residual", "skip", "no exact solution");
    }

    const DecayReport decay = decay_check(sol, r.problem);
    if (decay.applicable) {
        add("decay", "|x_i| within decay bound", pf(decay.bound_holds && decay.tail_max_nonincreasing),
            std::to_string(decay.violations) + " violations, worst slack " + num(decay.worst_slack));
    } else {
        add("decay", "|x_i| within decay bound", "skip", decay.reason);
    }

    std::size_t npass = 0;
    for (const auto& row : table.rows) npass += std::get<std::string>(row[2]) == "pass";
    os << "checks passed: " << npass << "/" << table.rows.size() << "\n";
    maybe_emit(cfg, table, os);
    if (!sol.report.converged) return kExitUnconverged;
    return failed ? kExitUnconverged : kExitSuccess;
}

int run_catalog(const RunConfig& cfg, std::ostringstream& os) {
    CsvTable table{{"id", "dim", "case", "q", "description"}, {}};
    os << "catalog version " << kCatalogVersion << "\n";
    for (const auto& id : catalog_ids()) {
        const CatalogEntry e = catalog_entry(id);
        const char* c = rates_equal(e.problem.constants) ? "II" : "I";
        const double q = contraction_q(e.problem.regularity, e.problem.constants);
        os << id << "  dim=" << e.problem.dim << " case=" << c << " q=" << num(q) << "  " << e.description << "\n";
        table.rows.push_back({id, static_cast<std::int64_t>(e.problem.dim), std::string(c), q, e.description});
    }
    maybe_emit(cfg, table, os);
    return kExitSuccess;
}

}  // namespace

RunResult run(const RunConfig& cfg) {
    RunResult res;
    std::ostringstream os;
    os << "command: " << to_string(cfg.command) << "\n";
    if (cfg.tol_defaulted && cfg.command != Command::catalog) os << "tol: " << num(cfg.tol) << " (default)\n";
    try {
        if (cfg.command == Command::catalog) {
            res.exit_code = run_catalog(cfg, os);
        } else {
            Resolved r = resolve(cfg);
            os << "problem: " << r.label << " (dim " << r.problem.dim << ")\n";
            require_valid(r.problem);
            switch (cfg.command) {
                case Command::solve: res.exit_code = run_solve(cfg, r, os); break;
                case Command::converge: res.exit_code = run_converge(cfg, r, os); break;
                case Command::truncate: res.exit_code = run_truncate(cfg, r, os); break;
                case Command::verify: res.exit_code = run_verify(cfg, r, os); break;
                case Command::catalog: break;
            }
        }
        if (res.exit_code == kExitUnconverged) res.diagnostic = "unconverged solve or failed check; see summary";
    } catch (const ValidationError& e) {
        res.exit_code = kExitInvalid;
        res.diagnostic = "invalid problem: " + e.report().failure_summary();
    } catch (const InvalidInput& e) {
        res.exit_code = kExitInvalid;
        res.diagnostic = e.what();
    } catch (const UnsolvableConfiguration& e) {
        res.exit_code = kExitInvalid;
        res.diagnostic = e.what();
    } catch (const OutputError& e) {
        res.exit_code = kExitInvalid;
        res.diagnostic = e.what();
    } catch (const OracleFailure& e) {
        res.exit_code = kExitUnconverged;
        res.diagnostic = e.what();
    }
    res.summary = os.str();
    return res;
}

}  // namespace halfline::cli
