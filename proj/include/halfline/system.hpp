#pragma once

#include "halfline/problem.hpp"
#include "halfline/weights.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace halfline {

/// Values x_0..x_N of an R^n-valued grid function, stored node-major.
class NodeSequence {
public:
    NodeSequence() = default;
    NodeSequence(std::size_t nodes, std::size_t dim, double fill = 0.0);

    [[nodiscard]] std::size_t nodes() const noexcept { return dim_ == 0 ? 0 : values_.size() / dim_; }
    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }

    [[nodiscard]] std::span<double> operator[](std::size_t i) { return {values_.data() + i * dim_, dim_}; }
    [[nodiscard]] std::span<const double> operator[](std::size_t i) const { return {values_.data() + i * dim_, dim_}; }

    [[nodiscard]] std::span<const double> flat() const noexcept { return values_; }
    [[nodiscard]] std::span<double> flat() noexcept { return values_; }

    /// max over nodes of the max-norm
    [[nodiscard]] double sup_norm() const;
    [[nodiscard]] bool all_finite() const;

    friend bool operator==(const NodeSequence&, const NodeSequence&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<double> values_;
};

/// ‖a − b‖∞ over all nodes; sequences must have equal shape.
double sup_distance(const NodeSequence& a, const NodeSequence& b);

enum class SystemCase { I, II };

const char* to_string(SystemCase c);

/// The finite fixed-point system obtained by truncating the discretized
/// equation at node N. Case I (β > γ) iterates in x directly; case II (β = γ)
/// iterates in y_i = e^{−iδh} x_i, where the operator contracts with ϑ.
struct TruncatedSystem {
    SystemCase case_tag = SystemCase::I;
    Grid grid{1.0, 1};
    std::shared_ptr<const HalfLineProblem> problem;
    std::optional<DeltaParams> delta;
    NodeSequence b;  ///< x0(ih), or e^{−iδh} x0(ih) in case II
    double contraction = 0.0;
};

/// Validates the problem, picks the case, selects δ for case II and samples
/// the forcing. Throws ValidationError / UnsolvableConfiguration.
TruncatedSystem assemble(HalfLineProblem problem, const Grid& grid);
TruncatedSystem assemble(std::shared_ptr<const HalfLineProblem> problem, const Grid& grid);

/// One application of the discrete operator, written into `out` (resized as needed).
/// Entry i is  b_i + Σ_{j<i} w_ij f(ih,jh,x_j) + Σ_{j=i}^{N} v_ij g(ih,jh,x_j)  in case I,
/// and the reweighted analogue with x_j = e^{jδh} y_j in case II.
void apply_operator(const TruncatedSystem& system, const NodeSequence& x, NodeSequence& out);
NodeSequence apply_operator(const TruncatedSystem& system, const NodeSequence& x);

/// ‖x − apply_operator(x)‖∞.
double residual(const TruncatedSystem& system, const NodeSequence& x);

/// x_i = e^{iδh} y_i.
NodeSequence untransform(const NodeSequence& y, const DeltaParams& delta, const Grid& grid);
/// y_i = e^{−iδh} x_i.
NodeSequence transform(const NodeSequence& x, const DeltaParams& delta, const Grid& grid);

/// Bound on the dropped tail of row i in original variables,
/// (Cg/β) e^{−β(N+1)h + γ i h}.
double truncation_remainder_bound(const TruncatedSystem& system, std::size_t i);

/// Samples x0 at the grid nodes.
NodeSequence sample_forcing(const HalfLineProblem& problem, const Grid& grid);

}  // namespace halfline
