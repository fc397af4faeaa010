#pragma once

#include "halfline/errors.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace halfline {

/// Exponential rates of the two integral terms:
///
///   x(t) = x0(t) + ∫_0^t e^{α1 s − α2 t} f(t,s,x(s)) ds
///                + ∫_t^∞ e^{−β s + γ t} g(t,s,x(s)) ds
///
/// Admissible when α1 ≠ 0, α2 ≥ 0, α1 ≤ α2, β > 0 and β ≥ γ.
struct Constants {
    double alpha1 = 1.0;
    double alpha2 = 1.0;
    double beta = 1.0;
    double gamma = 0.0;
};

/// User-declared regularity metadata of the kernels. These cannot be derived
/// from black-box evaluators; only the arithmetic relations among them are checked.
struct RegularityData {
    double Lf = 0.0;  ///< Lipschitz constant of f in x
    double Lg = 0.0;  ///< Lipschitz constant of g in x
    double Cf = 0.0;  ///< bound of |f| on the invariant set
    double Cg = 0.0;  ///< bound of |g| on the invariant set
    std::optional<double> Ef;  ///< bound of ∂f/∂s
    std::optional<double> Eg;  ///< bound of ∂g/∂s
    std::optional<double> Df;  ///< bound of ∂f/∂t
    std::optional<double> Dg;  ///< bound of ∂g/∂t
};

/// Kernel evaluator: writes k(t, s, x) into `out` (same length as x).
/// Must be pure and reentrant.
using Kernel = std::function<void(double t, double s, std::span<const double> x, std::span<double> out)>;

/// Time-dependent vector function, e.g. the forcing x0(t).
using Forcing = std::function<void(double t, std::span<double> out)>;

struct KernelPair {
    Kernel f;  ///< Volterra kernel, evaluated for 0 ≤ s ≤ t
    Kernel g;  ///< tail kernel, evaluated for 0 ≤ t ≤ s
};

struct HalfLineProblem {
    std::size_t dim = 1;
    Constants constants;
    KernelPair kernels;
    RegularityData regularity;
    Forcing x0;
    double x0_sup = 0.0;  ///< declared sup-norm bound of x0 over t ≥ 0
};

struct ValidationCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;

    [[nodiscard]] bool passed() const;
    /// Semicolon-separated "name (detail)" list of the failed checks.
    [[nodiscard]] std::string failure_summary() const;
};

/// Raised when a problem fails validation; carries the full report.
class ValidationError : public InvalidInput {
public:
    explicit ValidationError(ValidationReport report);
    [[nodiscard]] const ValidationReport& report() const noexcept { return report_; }

private:
    ValidationReport report_;
};

/// Name of the smallness check on the Lipschitz constants.
inline constexpr const char* kAssumptionA1 = "A1: Lf/|alpha1| + Lg/beta < 1";

ValidationReport validate(const Constants& constants, const RegularityData& regularity);
ValidationReport validate(const HalfLineProblem& problem);

/// Throws ValidationError unless validate(problem) passes.
void require_valid(const HalfLineProblem& problem);

/// q = Lf/|α1| + Lg/β.
double contraction_q(const RegularityData& regularity, const Constants& constants);

/// Radius of the invariant set: ‖x0‖∞ + Cf/|α1| + Cg/β.
double safe_radius(const HalfLineProblem& problem);

/// Max-norm on R^n; the vector norm used throughout.
double max_norm(std::span<const double> v);

/// Growth constants and regularity bounds that accompany a reduction to
/// half-line form. The bounds refer to the wrapped kernels, not the inputs.
struct ReductionMetadata {
    Constants constants;
    RegularityData regularity;
    double x0_sup = 0.0;
};

/// Reduces z(t) = z0(t) + ∫_0^t F(t,s,z(s)) ds + ∫_{−∞}^t G(t,s,z(s)) ds on t ≤ 0
/// to half-line form via τ = −t. The exponential weights are divided out of
/// the wrapped kernels:
///
///   f(τ,σ,x) = −F(−τ,−σ,x) e^{−α1 σ + α2 τ},   g(τ,σ,x) = G(−τ,−σ,x) e^{β σ − γ τ},
///   x0(τ) = z0(−τ).
///
/// Applying the reduction twice with the same constants is the identity on
/// evaluators. Throws ValidationError if the result does not validate.
HalfLineProblem time_reverse(std::size_t dim, Forcing z0, Kernel F, Kernel G, const ReductionMetadata& meta);

/// Right-hand side f1(t, u, v) of du/dt = f1(t, u, ∫_{−∞}^t g1(t,s,u(s)) ds).
using MemoryRhs =
    std::function<void(double t, std::span<const double> u, std::span<const double> v, std::span<double> out)>;

/// Builds the coupled problem in z = [u; v] (dimension 2n) with
///   F(t,s,z) = [f1(s,u,v); 0],  G(t,s,z) = [0; g1(t,s,u)],  z0 = [u0; 0]
/// and returns its time reversal. `meta` describes the wrapped 2n-dimensional kernels.
HalfLineProblem from_memory_ide(MemoryRhs f1, Kernel g1, std::vector<double> u0, const ReductionMetadata& meta);

}  // namespace halfline
