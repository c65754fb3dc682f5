#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "hyperfact/riccati.hpp"

namespace hyperfact {

/// N interior points x_i = x_min + i·h, i = 1..N, h = (x_max − x_min)/(N+1),
/// with Dirichlet walls at x_min and x_max.
struct Grid {
    double x_min;
    double x_max;
    int N;

    double step() const { return (x_max - x_min) / (N + 1); }
    double point(int i) const { return x_min + (i + 1) * step(); }
    /// The same box with 2N+1 points (step halved).
    Grid refined() const { return {x_min, x_max, 2 * N + 1}; }
};

/// Number of eigenvalues below x of the symmetric tridiagonal matrix with
/// diagonal `diag` and constant off-diagonal `off` (Sturm sequence).
int sturm_count(const std::vector<double>& diag, double off, double x);

/// The lowest `count` eigenvalues, ascending, by Sturm bisection.
std::vector<double> tridiagonal_eigenvalues(const std::vector<double>& diag, double off, int count);

/// Lowest eigenvalues of −D² + V with the three-point stencil on one grid,
/// from potential values at the grid's interior points.
std::vector<double> fd_eigenvalues(const std::vector<double>& values, double h, int count);

struct FdSpectrum {
    Grid grid;
    /// Richardson combination (4λ(h/2) − λ(h))/3, ascending.
    std::vector<double> eigenvalues;
    std::vector<double> coarse;
    std::vector<double> fine;
    double max_disagreement = 0.0;
};

using Potential = std::function<double(double)>;

/// Lowest n_states eigenvalues at N and 2N+1 points, Richardson-combined.
/// Throws ParameterViolation for N < 200, NonFinite for a non-finite
/// potential value and GridTooCoarse when the two resolutions differ by more
/// than 10·tol.
FdSpectrum fd_spectrum(const Potential& V, const Grid& grid, int n_states, double tol = 1e-3);
/// All states below `ceiling` (at both resolutions).
FdSpectrum fd_spectrum_below(const Potential& V, const Grid& grid, double ceiling, double tol = 1e-3);

enum class Operator { upper, partner };

struct SpectralMatch {
    int level;
    double target;
    double found;
    double residual;
};

struct SpectralReport {
    Grid grid;
    std::vector<double> eigenvalues;
    std::vector<double> targets;
    std::vector<SpectralMatch> matched;
    /// Targets without an eigenvalue within 0.05(1+|target|).
    std::vector<double> missing;
    /// Eigenvalues matched to no target (e.g. a partner state near λ_m).
    std::vector<double> extras;

    /// Every target matched with residual ≤ tol.
    bool passed(double tol) const;
};

/// Greedy nearest-target matching within 0.05(1+|target|), targets ascending.
SpectralReport match_spectrum(const FdSpectrum& spectrum, const std::vector<double>& targets, int first_level);

/// Targets {λ_ℓ : m+1 ≤ ℓ < min(m+1+n_levels, Λ)}, λ̃-shifted when the
/// deformation carries δ.
std::vector<double> spectral_targets(const Deformation& d, int n_levels);

/// Dirichlet box for the Schrödinger operator: singular ends trimmed where V
/// drops below 1e6, infinite ends extended until the decay action
/// ∫√(V − E) dx beyond the turning point reaches 35 for E = `energy`.
Grid default_grid(const Potential& V, Kind kind, double energy);

/// Runs the FD oracle on V_{m+1} (upper) or V_{m,γ} (partner) from
/// schrod::potentials and matches the eigenvalues against spectral_targets.
SpectralReport verify_spectrum(const Deformation& d, Operator which, int n_levels,
                               std::optional<Grid> grid = std::nullopt, double tol = 1e-3);

}  // namespace hyperfact
