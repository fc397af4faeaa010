#pragma once

#include "halfline/verify.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace halfline {

/// Fixed, versioned test problems.
///
///   P1   linear, β > γ, exact x ≡ 1, x0 ≡ 0.75 (the discretization is exact)
///   P1'  P1 with γ = β, x0 = 0.5 + 0.25 e^{−t}
///   P2   nonlinear scalar with s-dependent kernels, exact x = e^{−t}, x0 by quadrature
///   P3   two-component system reduced from a memory integro-differential equation
///   P4   decaying forcing x0 = e^{−t} with α1 < α2, β > γ
struct CatalogEntry {
    std::string id;
    std::string description;
    HalfLineProblem problem;
    Forcing exact;  ///< empty when no exact solution is known
    Construction construction = Construction::closed_form;
    Grid default_grid{0.1, 200};
};

inline constexpr const char* kCatalogVersion = "1";

std::vector<std::string> catalog_ids();

/// Throws InvalidInput naming the available ids when `id` is unknown.
CatalogEntry catalog_entry(std::string_view id);

/// Throws InvalidInput when the entry has no exact solution.
ManufacturedProblem manufactured(const CatalogEntry& entry);

}  // namespace halfline
