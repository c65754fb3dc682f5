#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperfact/family.hpp"
#include "hyperfact/oracle.hpp"

namespace hyperfact {

enum class Suite { algebra, recurrence, orthogonality, riccati, catalog, spectrum };

inline constexpr std::array<Suite, 6> all_suites{Suite::algebra,  Suite::recurrence, Suite::orthogonality,
                                                 Suite::riccati,  Suite::catalog,    Suite::spectrum};

std::string_view suite_name(Suite s) noexcept;
/// Throws ParameterViolation for an unknown name.
Suite suite_from_name(std::string_view name);

/// One asserted residual. l is -1 when the check is not tied to a level.
struct Check {
    std::string subject;
    std::string identity;
    int l;
    int m;
    double residual;
    double tolerance;
    /// Set when the check raised instead of producing a residual.
    std::string error;

    bool passed() const { return error.empty() && residual <= tolerance; }
};

struct SuiteReport {
    Suite suite;
    std::vector<Check> checks;
    /// Spectral reports behind the spectrum suite's checks.
    std::vector<std::pair<std::string, SpectralReport>> spectra;
    double seconds = 0.0;

    bool passed() const;
    std::vector<Check> failures() const;
};

/// One parameter choice per family: const(−2,0), linear(−1,2),
/// one_minus_s2(−4,1), s2_minus_one(−5,9), s2(−7,2), s2_plus_one(−8,1).
std::vector<Family> default_test_matrix();

/// Readable "kind(alpha=…, beta=…)".
std::string family_label(const Family& f);

/// Largest ℓ checked for a family: min(6, Λ−1).
int level_limit(const Family& f);

/// An admissible finite γ one unit beyond the nearer ray endpoint.
double finite_gamma(const Family& f, int m);

struct VerifyConfig {
    /// Replaces the default test matrix (and the spectrum fixtures) when set.
    std::optional<Family> family;
    std::vector<int> orders{0, 1};
    /// Restricts the Riccati and spectrum suites to this γ (plus ∞ for the upper operator).
    std::optional<double> gamma;
    std::optional<Rational> delta;
};

SuiteReport run_suite(Suite suite, const VerifyConfig& config = {});
/// Runs the suites concurrently; reports come back in the order requested.
std::vector<SuiteReport> run_suites(const std::vector<Suite>& suites, const VerifyConfig& config = {});

}  // namespace hyperfact
