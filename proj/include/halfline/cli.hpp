#pragma once

#include "halfline/catalog.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace halfline::cli {

enum class Command { solve, converge, truncate, verify, catalog };

const char* to_string(Command c);

/// Closed-form forcing families available to inline problems:
///   constant:  x0(t) = value
///   exp_decay: x0(t) = offset + scale·e^{−rate·t}   (rate ≥ 0)
struct X0Family {
    enum class Kind { constant, exp_decay };
    Kind kind = Kind::constant;
    std::vector<double> offset;  ///< `value` for the constant family
    std::vector<double> scale;
    double rate = 0.0;
};

/// Linear kernels f = A·x, g = B·x. Regularity constants default to
/// Lf = ‖A‖∞, Lg = ‖B‖∞, Cf = Lf·R, Cg = Lg·R with R = x0_sup/(1 − q).
struct InlineLinearProblem {
    Constants constants;
    std::vector<std::vector<double>> A;
    std::vector<std::vector<double>> B;
    X0Family x0;
    std::optional<double> Lf, Lg, Cf, Cg;
};

struct GridConfig {
    std::optional<double> h;
    std::optional<std::size_t> N;
    std::vector<double> h_list;
    std::vector<std::size_t> N_list;
    /// truncate: last node index of the comparison window;
    /// converge: length of the comparison window in time units.
    std::optional<double> window;
};

inline constexpr double kDefaultTol = 1e-8;

struct RunConfig {
    Command command = Command::solve;
    std::variant<std::monostate, std::string, InlineLinearProblem> problem;
    GridConfig grid;
    double tol = kDefaultTol;
    bool tol_defaulted = true;
    std::size_t max_iter = kDefaultMaxIter;  ///< Picard sweep cap for solve and verify
    std::string output;  ///< empty: no CSV is written
};

struct ParseResult {
    std::optional<RunConfig> config;
    std::vector<std::string> errors;

    [[nodiscard]] bool ok() const { return config.has_value() && errors.empty(); }
};

/// Parses a JSON run configuration. Never throws; problems are reported in
/// `errors` with line/column context for syntax errors and key paths otherwise.
ParseResult parse_config(std::string_view text);

HalfLineProblem build_inline_problem(const InlineLinearProblem& spec);

using CsvCell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<CsvCell>> rows;
};

/// Header row then one row per entry, '\n'-terminated. Doubles use 17
/// significant digits in the shortest of fixed/scientific notation, '.' as
/// decimal separator regardless of locale; empty cells stay empty.
std::string to_csv(const CsvTable& table);

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Writes to_csv(table) to `path`; throws OutputError if it cannot be written.
void emit_csv(const CsvTable& table, const std::string& path);

CsvTable to_table(const ConvergenceTable& table);
CsvTable to_table(const TruncationTable& table);
CsvTable to_table(const GridSolution& solution);

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitUnconverged = 1;
inline constexpr int kExitInvalid = 2;

struct RunResult {
    int exit_code = kExitSuccess;
    std::string summary;     ///< human-readable, for standard output
    std::string diagnostic;  ///< set for non-zero exits, for standard error
};

/// Executes one command. Exit codes: 0 success, 1 unconverged solve or failed
/// verification check, 2 invalid input.
RunResult run(const RunConfig& config);

}  // namespace halfline::cli
