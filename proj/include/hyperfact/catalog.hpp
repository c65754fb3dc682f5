#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string_view>

#include "hyperfact/family.hpp"

namespace hyperfact {

struct CatalogEntry {
    int id;
    std::string_view name;
    Kind kind;
    /// Entries 7–10 live on the ρ = σ^k subfamilies and carry δ.
    bool shifted;
    /// A representative valid parameter choice.
    double alpha;
    double beta;
    double delta;
};

const std::array<CatalogEntry, 10>& catalog();
/// Throws ParameterViolation for ids outside 1..10.
const CatalogEntry& catalog_entry(int id);

struct CatalogValue {
    double V_upper;  // V_{m+1} or Ṽ_{m+1}
    double W;        // W_{m,γ} or W̃_{m,γ}
    double lambda;   // λ_m or λ̃_m
};

/// The closed forms of the ten named examples evaluated as printed, with
/// α_m = −(2m+α−1)/2 and α'_m = (2m−α−1)/2. The integral in the deformation
/// term runs from the family's base point. The closed forms are evaluated for
/// any α, β (no family constraints are checked). Entries 7–10 require the
/// weight-power subfamily (α = 0 for σ = s, β = 0 otherwise); δ defaults to 0.
CatalogValue catalog_reference(int id, double alpha, double beta, int m, double x, double gamma = INFINITY,
                               std::optional<double> delta = std::nullopt);

}  // namespace hyperfact
