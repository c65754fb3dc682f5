#include "hyperfact/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hyperfact/schrod.hpp"

namespace hyperfact {

namespace {

constexpr double wall_potential = 1e6;
constexpr double decay_action = 35.0;

std::vector<double> sample(const Potential& V, const Grid& g) {
    std::vector<double> v(static_cast<std::size_t>(g.N));
    for (int i = 0; i < g.N; ++i) {
        const double x = g.point(i);
        const double val = V(x);
        if (!std::isfinite(val)) {
            throw Error(ErrorKind::NonFinite, "potential is not finite at x=" + std::to_string(x));
        }
        v[static_cast<std::size_t>(i)] = val;
    }
    return v;
}

std::vector<double> stencil_diagonal(const std::vector<double>& values, double h) {
    std::vector<double> d(values);
    for (auto& x : d) x += 2.0 / (h * h);
    return d;
}

void check_grid(const Grid& g) {
    if (g.N < 200) throw Error(ErrorKind::ParameterViolation, "finite-difference grids need N >= 200");
    if (!(g.x_max > g.x_min)) throw Error(ErrorKind::ParameterViolation, "grid needs x_min < x_max");
}

FdSpectrum combine(const Grid& grid, std::vector<double> coarse, std::vector<double> fine, double tol) {
    FdSpectrum out{grid, {}, std::move(coarse), std::move(fine), 0.0};
    const std::size_t n = std::min(out.coarse.size(), out.fine.size());
    out.coarse.resize(n);
    out.fine.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.max_disagreement = std::max(out.max_disagreement, std::abs(out.fine[i] - out.coarse[i]));
        out.eigenvalues.push_back((4.0 * out.fine[i] - out.coarse[i]) / 3.0);
    }
    if (out.max_disagreement > 10.0 * tol) {
        throw Error(ErrorKind::GridTooCoarse, "resolutions N and 2N+1 disagree by " +
                                                  std::to_string(out.max_disagreement));
    }
    return out;
}

double probe(const Potential& V, double x) {
    try {
        return V(x);
    } catch (const Error&) {
        return NAN;
    }
}

double walk(const Potential& V, double from, double end, double energy, int direction) {
    double action = 0.0;
    double x = from;
    if (std::isinf(end)) {
        constexpr double step = 0.02;
        for (int i = 0; i < 200000; ++i) {
            const double next = x + direction * step;
            const double v = probe(V, next);
            if (!std::isfinite(v) || v >= wall_potential) return x;
            action += std::sqrt(std::max(v - energy, 0.0)) * step;
            x = next;
            if (action >= decay_action) return x;
        }
        return x;
    }
    constexpr double dt = 0.01;
    const double span = from - end;
    for (int i = 1; i <= 6000; ++i) {
        const double next = end + span * std::exp(-dt * i);
        if (std::abs(next - end) < 1e-6 * std::abs(span)) return x;
        const double v = probe(V, next);
        if (!std::isfinite(v) || v >= wall_potential) return x;
        action += std::sqrt(std::max(v - energy, 0.0)) * std::abs(x - next);
        x = next;
        if (action >= decay_action) return x;
    }
    return x;
}

}  // namespace

int sturm_count(const std::vector<double>& diag, double off, double x) {
    const double off2 = off * off;
    int count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < diag.size(); ++i) {
        q = diag[i] - x - (i == 0 ? 0.0 : off2 / q);
        if (q == 0.0) q = -std::numeric_limits<double>::epsilon() * (std::abs(diag[i]) + std::abs(x) + std::abs(off));
        if (q < 0.0) ++count;
    }
    return count;
}

std::vector<double> tridiagonal_eigenvalues(const std::vector<double>& diag, double off, int count) {
    if (diag.empty() || count <= 0) return {};
    count = std::min<int>(count, static_cast<int>(diag.size()));
    double lo = diag[0], hi = diag[0];
    for (double d : diag) {
        lo = std::min(lo, d - 2.0 * std::abs(off));
        hi = std::max(hi, d + 2.0 * std::abs(off));
    }
    std::vector<double> eig;
    eig.reserve(static_cast<std::size_t>(count));
    double floor = lo;
    for (int k = 0; k < count; ++k) {
        double a = floor, b = hi;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (a + b);
            if (mid == a || mid == b) break;
            if (sturm_count(diag, off, mid) > k) b = mid;
            else a = mid;
        }
        const double value = 0.5 * (a + b);
        eig.push_back(value);
        floor = a;
    }
    return eig;
}

std::vector<double> fd_eigenvalues(const std::vector<double>& values, double h, int count) {
    return tridiagonal_eigenvalues(stencil_diagonal(values, h), -1.0 / (h * h), count);
}

FdSpectrum fd_spectrum(const Potential& V, const Grid& grid, int n_states, double tol) {
    check_grid(grid);
    const Grid fine = grid.refined();
    auto c = fd_eigenvalues(sample(V, grid), grid.step(), n_states);
    auto f = fd_eigenvalues(sample(V, fine), fine.step(), n_states);
    return combine(grid, std::move(c), std::move(f), tol);
}

FdSpectrum fd_spectrum_below(const Potential& V, const Grid& grid, double ceiling, double tol) {
    check_grid(grid);
    const Grid fine = grid.refined();
    const auto dc = stencil_diagonal(sample(V, grid), grid.step());
    const auto df = stencil_diagonal(sample(V, fine), fine.step());
    const double oc = -1.0 / (grid.step() * grid.step());
    const double of = -1.0 / (fine.step() * fine.step());
    const int n = std::min(sturm_count(dc, oc, ceiling), sturm_count(df, of, ceiling));
    return combine(grid, tridiagonal_eigenvalues(dc, oc, n), tridiagonal_eigenvalues(df, of, n), tol);
}

bool SpectralReport::passed(double tol) const {
    if (!missing.empty()) return false;
    for (const auto& m : matched)
        if (m.residual > tol) return false;
    return true;
}

SpectralReport match_spectrum(const FdSpectrum& spectrum, const std::vector<double>& targets, int first_level) {
    SpectralReport r{spectrum.grid, spectrum.eigenvalues, targets, {}, {}, {}};
    std::vector<bool> used(spectrum.eigenvalues.size(), false);
    for (std::size_t t = 0; t < targets.size(); ++t) {
        const double target = targets[t];
        const double window = 0.05 * (1.0 + std::abs(target));
        int best = -1;
        for (std::size_t i = 0; i < spectrum.eigenvalues.size(); ++i) {
            if (used[i]) continue;
            const double dist = std::abs(spectrum.eigenvalues[i] - target);
            if (dist <= window && (best < 0 || dist < std::abs(spectrum.eigenvalues[static_cast<std::size_t>(best)] - target)))
                best = static_cast<int>(i);
        }
        if (best < 0) {
            r.missing.push_back(target);
            continue;
        }
        used[static_cast<std::size_t>(best)] = true;
        const double found = spectrum.eigenvalues[static_cast<std::size_t>(best)];
        r.matched.push_back({first_level + static_cast<int>(t), target, found, std::abs(found - target)});
    }
    for (std::size_t i = 0; i < used.size(); ++i)
        if (!used[i]) r.extras.push_back(spectrum.eigenvalues[i]);
    return r;
}

std::vector<double> spectral_targets(const Deformation& d, int n_levels) {
    const Family& f = d.family();
    const Cutoff c = cutoff(f);
    std::vector<double> t;
    for (int l = d.m() + 1; l < d.m() + 1 + n_levels && c.admits(l); ++l) {
        Rational lam = eigenvalue_formula(f, l);
        if (d.delta()) {
            const Rational shift = *d.delta() / tilde_denominator(f, l);
            lam -= shift * shift;
        }
        t.push_back(lam.get_d());
    }
    return t;
}

Grid default_grid(const Potential& V, Kind kind, double energy) {
    const Interval xd = CoordinateMap(kind).x_domain();
    const double lo = std::isinf(xd.lower) ? -60.0 : xd.lower;
    const double hi = std::isinf(xd.upper) ? 60.0 : xd.upper;
    double centre = 0.5 * (lo + hi), vmin = INFINITY;
    constexpr int probes = 4000;
    for (int i = 1; i < probes; ++i) {
        const double x = lo + (hi - lo) * i / probes;
        const double v = probe(V, x);
        if (std::isfinite(v) && v < vmin) {
            vmin = v;
            centre = x;
        }
    }
    if (!std::isfinite(vmin)) throw Error(ErrorKind::NonFinite, "potential is not finite anywhere on the probe grid");
    const double x_min = walk(V, centre, xd.lower, energy, -1);
    const double x_max = walk(V, centre, xd.upper, energy, +1);
    const double h = 2.0 * M_PI / (100.0 * std::sqrt(1.0 + std::max(energy - vmin, 0.0)));
    const int N = std::clamp(static_cast<int>((x_max - x_min) / h), 400, 30000);
    return {x_min, x_max, N};
}

SpectralReport verify_spectrum(const Deformation& d, Operator which, int n_levels, std::optional<Grid> grid,
                               double tol) {
    const std::vector<double> targets = spectral_targets(d, n_levels);
    Potential V = [&d, which](double x) {
        const PotentialPair p = potentials(d, x);
        return which == Operator::upper ? p.upper : p.partner;
    };
    const double top = targets.empty() ? d.lambda_m_shifted() : targets.back();
    const Grid g = grid.value_or(default_grid(V, d.family().kind(), top));
    const double ceiling = top + 0.05 * (1.0 + std::abs(top));
    return match_spectrum(fd_spectrum_below(V, g, ceiling, tol), targets, d.m() + 1);
}

}  // namespace hyperfact
