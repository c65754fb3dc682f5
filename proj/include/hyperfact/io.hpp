#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "hyperfact/ladder.hpp"
#include "hyperfact/oracle.hpp"
#include "hyperfact/polyfun.hpp"
#include "hyperfact/riccati.hpp"
#include "hyperfact/verify.hpp"

namespace hyperfact {

using Json = nlohmann::ordered_json;

/// {"kind": tag, "alpha": number, "beta": number}; string values "p/q" are read exactly.
Json to_json(const Family& f);
Family family_from_json(const Json& j);

/// Exact coefficients as strings, float coefficients as numbers.
Json to_json(const Poly<Rational>& p);
Json to_json(const Poly<double>& p);
Json to_json(const AssociatedFunction<Rational>& af);

/// {"family":…, "m":…, "gamma": number|"inf", "s0":…, "delta": number|null}
Json to_json(const Deformation& d);
Json to_json(const GammaRays& r);
Json to_json(const IdentityReport& r);
Json to_json(const SpectralReport& r);
Json to_json(const Check& c);
Json to_json(const SuiteReport& r);

/// γ from a JSON number or the string "inf".
double gamma_from_json(const Json& j);

/// The six kinds with their constraints and weight-power subfamilies, and the
/// ten catalog entries with their family bindings.
Json families_listing();
std::string families_table();
/// One catalog entry with its binding, e.g. σ = s, τ = β, k = β − 1 for id 7.
Json catalog_binding(int id);
std::string catalog_binding_text(int id);

/// Columns x, s, V_upper, V_partner, W, then psi_ℓ per requested level.
struct GridTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// `points` equally spaced x values on [x_min, x_max], endpoints included.
/// Values that cannot be evaluated at a point are NaN.
GridTable grid_table(const Deformation& d, double x_min, double x_max, int points, const std::vector<int>& levels);
std::string to_csv(const GridTable& t);
Json to_json(const GridTable& t);
/// Plain SVG line plot of V_upper, V_partner and W.
std::string to_svg(const GridTable& t);

/// Targets λ_ℓ (λ̃ with δ) for the levels and the admissible-γ rays.
Json derive_metadata(const Deformation& d, const std::vector<int>& levels);

/// Writes through a temporary file in the same directory and renames it into place.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace hyperfact
