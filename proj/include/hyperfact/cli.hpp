#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hyperfact/io.hpp"

namespace hyperfact {

struct GridSpec {
    double x_min;
    double x_max;
    int points;
};

struct JobConfig {
    std::optional<Family> family;
    int m = 0;
    /// Unset means ∞ for derive and the default γ set for verify.
    std::optional<double> gamma;
    std::optional<Rational> delta;
    std::optional<double> s0;
    TildeForm form = TildeForm::printed;
    std::vector<int> levels;
    std::optional<GridSpec> grid;
    std::string output;
    std::string format = "csv";
    std::string meta;
    std::string svg;
    std::string suite = "all";
    std::string report;
};

/// Reads a JSON config: {"family": {...}, "m", "gamma", "delta", "s0", "form",
/// "levels", "grid": {"x_min", "x_max", "N"}, "output": {"path", "format",
/// "meta", "svg"}, "suite", "report"}.
JobConfig config_from_json(const Json& j);
JobConfig load_config(const std::string& path);

/// The deformation a config describes. Throws on invalid parameters or an inadmissible γ.
Deformation make_deformation(const JobConfig& c);
/// Levels m+1..m+3 below the cutoff unless the config lists them.
std::vector<int> derive_levels(const JobConfig& c);
/// A window of the x-domain avoiding coordinate singularities, 601 points.
GridSpec default_export_grid(Kind kind);

/// Exit codes: 0 success, 1 invariant failure, 2 invalid parameters,
/// 3 inadmissible deformation, 4 numerical non-convergence.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hyperfact
