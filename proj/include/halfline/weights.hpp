#pragma once

#include "halfline/problem.hpp"

#include <cstddef>
#include <optional>

namespace halfline {

/// Uniform grid t_i = i h, i = 0..N.
class Grid {
public:
    /// Throws InvalidInput unless h > 0 (finite) and N ≥ 1.
    Grid(double h, std::size_t N);

    [[nodiscard]] double h() const noexcept { return h_; }
    [[nodiscard]] std::size_t N() const noexcept { return N_; }
    [[nodiscard]] std::size_t nodes() const noexcept { return N_ + 1; }
    [[nodiscard]] double t(std::size_t i) const noexcept { return static_cast<double>(i) * h_; }

private:
    double h_;
    std::size_t N_;
};

/// Reweighting exponent δ (1/time) for the slow-decay case and the
/// contraction constant ϑ of the reweighted system.
struct DeltaParams {
    double delta = 0.0;
    double theta = 0.0;
};

/// Absolute tolerance on β − γ below which the problem is treated as the
/// non-decaying (β = γ) case.
inline constexpr double kEqualRateTolerance = 1e-12;

/// True when β − γ ≤ kEqualRateTolerance.
bool rates_equal(const Constants& c);

/// ∫_{jh}^{(j+1)h} e^{α1 s − α2 i h} ds for 0 ≤ j < i.
double volterra_weight(std::size_t i, std::size_t j, double h, const Constants& c);

/// ∫_{jh}^{(j+1)h} e^{−β s + γ i h} ds for j ≥ i.
double tail_weight(std::size_t i, std::size_t j, double h, const Constants& c);

/// Σ_{j<i} volterra_weight = (1/α1)[e^{(α1−α2)ih} − e^{−α2 ih}]; zero for i = 0.
double volterra_prefix_sum(std::size_t i, double h, const Constants& c);

/// Σ_{j≥i} tail_weight = (1/β) e^{−(β−γ)ih}.
double tail_weight_sum(std::size_t i, double h, const Constants& c);

/// Σ_{j>N} tail_weight(i, j) = (1/β) e^{−β(N+1)h + γ i h}: the mass dropped
/// from row i by truncating at N.
double tail_remainder(std::size_t i, std::size_t N, double h, const Constants& c);

/// volterra_weight(i, j) · e^{(j−i)δh}, computed without the intermediate product.
double reweighted_volterra_weight(std::size_t i, std::size_t j, double h, const Constants& c, double delta);

/// tail_weight(i, j) · e^{(j−i)δh}.
double reweighted_tail_weight(std::size_t i, std::size_t j, double h, const Constants& c, double delta);

/// α1 + δ keeps the sign of α1, β − δ > 0 and γ − δ > 0.
bool delta_feasible(double delta, const Constants& c);

/// Contraction constant of the δ-reweighted system:
///
///   ϑ = (Lf/|α1|)·(e^{α1 h} − 1)/(e^{(α1+δ)h} − 1) + (Lg/β)·(1 − e^{−βh})/(1 − e^{−(β−δ)h}).
///
/// Tends to q as δ → 0⁺. Throws InvalidInput unless δ > 0 and delta_feasible.
double theta(double delta, double h, const Constants& c, const RegularityData& reg);

/// Halving search for δ with ϑ(δ) < 1, starting from `delta0` or, by default,
/// half the smallest applicable cap among γ, β and |α1| (the last only for α1 < 0).
/// Throws UnsolvableConfiguration when q ≥ 1 or after 60 halvings.
DeltaParams select_delta(double h, const Constants& c, const RegularityData& reg,
                         std::optional<double> delta0 = std::nullopt);

}  // namespace halfline
