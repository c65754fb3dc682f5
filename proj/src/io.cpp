#include "hyperfact/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hyperfact/catalog.hpp"
#include "hyperfact/schrod.hpp"

namespace hyperfact {

namespace {

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string_view interval_label(Kind k) {
    switch (k) {
    case Kind::constant: return "(-inf, inf)";
    case Kind::linear: return "(0, inf)";
    case Kind::one_minus_s2: return "(-1, 1)";
    case Kind::s2_minus_one: return "(1, inf)";
    case Kind::s2: return "(0, inf)";
    case Kind::s2_plus_one: return "(-inf, inf)";
    }
    return "";
}

std::string_view cutoff_label(Kind k) {
    switch (k) {
    case Kind::constant:
    case Kind::linear:
    case Kind::one_minus_s2: return "inf";
    default: return "(1-alpha)/2";
    }
}

std::string_view weight_power_label(Kind k) {
    switch (k) {
    case Kind::constant: return "none";
    case Kind::linear: return "alpha=0: k=beta-1";
    case Kind::one_minus_s2: return "beta=0: k=-alpha/2-1";
    default: return "beta=0: k=alpha/2-1";
    }
}

std::string_view tau_label(const CatalogEntry& e) {
    if (!e.shifted) return "alpha*s+beta";
    return e.kind == Kind::linear ? "beta" : "alpha*s";
}

std::string_view k_label(const CatalogEntry& e) {
    if (!e.shifted) return "";
    switch (e.kind) {
    case Kind::linear: return "beta-1";
    case Kind::one_minus_s2: return "-alpha/2-1";
    default: return "alpha/2-1";
    }
}

}  // namespace

Json to_json(const Family& f) {
    Json j;
    j["kind"] = tag(f.kind());
    j["alpha"] = f.alpha();
    j["beta"] = f.beta();
    return j;
}

Family family_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("alpha") || !j.contains("beta"))
        throw Error(ErrorKind::ParameterViolation, "a family needs \"kind\", \"alpha\" and \"beta\"");
    auto param = [](const Json& v) -> Rational {
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number()) return to_rational(v.get<double>());
        throw Error(ErrorKind::ParameterViolation, "alpha and beta must be numbers or \"p/q\" strings");
    };
    return make_family(kind_from_tag(j.at("kind").get<std::string>()), param(j.at("alpha")), param(j.at("beta")));
}

Json to_json(const Poly<Rational>& p) {
    Json a = Json::array();
    for (const Rational& c : p.coeffs()) a.push_back(to_string(c));
    return a;
}

Json to_json(const Poly<double>& p) {
    Json a = Json::array();
    for (double c : p.coeffs()) a.push_back(c);
    return a;
}

Json to_json(const AssociatedFunction<Rational>& af) {
    return Json{{"family", to_json(af.family)}, {"l", af.l}, {"m", af.m}, {"coeffs", to_json(af.poly)}};
}

double gamma_from_json(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return INFINITY;
    if (j.is_number()) return j.get<double>();
    throw Error(ErrorKind::ParameterViolation, "gamma must be a number or \"inf\"");
}

Json to_json(const Deformation& d) {
    Json j;
    j["family"] = to_json(d.family());
    j["m"] = d.m();
    j["gamma"] = std::isinf(d.gamma()) ? Json("inf") : Json(d.gamma());
    j["s0"] = d.s0();
    j["delta"] = d.delta() ? Json(d.delta()->get_d()) : Json(nullptr);
    return j;
}

Json to_json(const GammaRays& r) {
    Json j;
    j["upper_ray"] = r.has_upper_ray() ? Json{{"gamma_min", -r.lower_limit}} : Json(nullptr);
    j["lower_ray"] = r.has_lower_ray() ? Json{{"gamma_max", -r.upper_limit}} : Json(nullptr);
    j["description"] = r.describe();
    return j;
}

Json to_json(const IdentityReport& r) {
    Json j;
    j["family"] = to_json(r.family);
    j["m"] = r.m;
    j["exact"] = r.exact;
    j["delta"] = r.delta ? Json(to_string(*r.delta)) : Json(nullptr);
    Json residuals = Json::object();
    for (const IdentityEntry& e : r.entries) {
        std::string key = e.l >= 0 ? "l=" + std::to_string(e.l) : "probe k=" + std::to_string(e.probe);
        key += ",m=" + std::to_string(e.m);
        residuals[e.identity][key] = e.residual;
    }
    j["residuals"] = residuals;
    j["max_residual"] = r.max_residual();
    j["passed"] = r.passed();
    return j;
}

Json to_json(const SpectralReport& r) {
    Json j;
    j["grid"] = Json{{"x_min", r.grid.x_min}, {"x_max", r.grid.x_max}, {"N", r.grid.N}};
    j["eigenvalues"] = r.eigenvalues;
    j["targets"] = r.targets;
    Json matched = Json::array();
    for (const SpectralMatch& m : r.matched)
        matched.push_back(Json{{"target", m.target}, {"found", m.found}, {"residual", m.residual}});
    j["matched"] = matched;
    j["extras"] = r.extras;
    return j;
}

Json to_json(const Check& c) {
    Json j;
    j["subject"] = c.subject;
    j["identity"] = c.identity;
    j["l"] = c.l >= 0 ? Json(c.l) : Json(nullptr);
    j["m"] = c.m;
    j["residual"] = number_or_null(c.residual);
    j["tolerance"] = c.tolerance;
    j["passed"] = c.passed();
    if (!c.error.empty()) j["error"] = c.error;
    return j;
}

Json to_json(const SuiteReport& r) {
    Json j;
    j["suite"] = suite_name(r.suite);
    j["passed"] = r.passed();
    j["seconds"] = r.seconds;
    j["checks"] = r.checks.size();
    double worst = 0.0;
    for (const Check& c : r.checks)
        if (c.passed()) worst = std::max(worst, c.residual);
    j["max_residual"] = worst;
    Json failures = Json::array();
    for (const Check& c : r.failures()) failures.push_back(to_json(c));
    j["failures"] = failures;
    Json all = Json::array();
    for (const Check& c : r.checks) all.push_back(to_json(c));
    j["results"] = all;
    if (!r.spectra.empty()) {
        Json spectra = Json::object();
        for (const auto& [name, rep] : r.spectra) spectra[name] = to_json(rep);
        j["spectra"] = spectra;
    }
    return j;
}

Json families_listing() {
    Json kinds = Json::array();
    for (Kind k : all_kinds) {
        kinds.push_back(Json{{"kind", tag(k)},
                             {"sigma", sigma_label(k)},
                             {"interval", interval_label(k)},
                             {"constraint", constraint_label(k)},
                             {"cutoff", cutoff_label(k)},
                             {"weight_power", weight_power_label(k)}});
    }
    Json cat = Json::array();
    for (const CatalogEntry& e : catalog()) cat.push_back(catalog_binding(e.id));
    return Json{{"families", kinds}, {"catalog", cat}};
}

std::string families_table() {
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof line, "%-14s %-8s %-13s %-26s %-12s %s\n", "kind", "sigma", "interval", "constraint",
                  "cutoff", "weight power");
    os << line;
    for (Kind k : all_kinds) {
        std::snprintf(line, sizeof line, "%-14s %-8s %-13s %-26s %-12s %s\n", std::string(tag(k)).c_str(),
                      std::string(sigma_label(k)).c_str(), std::string(interval_label(k)).c_str(),
                      std::string(constraint_label(k)).c_str(), std::string(cutoff_label(k)).c_str(),
                      std::string(weight_power_label(k)).c_str());
        os << line;
    }
    os << "\ncatalog\n";
    for (const CatalogEntry& e : catalog()) {
        std::snprintf(line, sizeof line, "%3d  %-42s %s\n", e.id, std::string(e.name).c_str(),
                      std::string(tag(e.kind)).c_str());
        os << line;
    }
    return os.str();
}

Json catalog_binding(int id) {
    const CatalogEntry& e = catalog_entry(id);
    Json j{{"id", e.id},
           {"name", e.name},
           {"kind", tag(e.kind)},
           {"sigma", sigma_label(e.kind)},
           {"tau", tau_label(e)},
           {"k", e.shifted ? Json(k_label(e)) : Json(nullptr)},
           {"alpha", e.alpha},
           {"beta", e.beta}};
    j["delta"] = e.shifted ? Json(e.delta) : Json(nullptr);
    return j;
}

std::string catalog_binding_text(int id) {
    const CatalogEntry& e = catalog_entry(id);
    std::ostringstream os;
    os << e.id << " " << e.name << "\n"
       << "  kind:  " << tag(e.kind) << "\n"
       << "  sigma: " << sigma_label(e.kind) << "\n"
       << "  tau:   " << tau_label(e) << "\n";
    if (e.shifted) os << "  k:     " << k_label(e) << "\n";
    os << "  default parameters: alpha=" << e.alpha << " beta=" << e.beta;
    if (e.shifted) os << " delta=" << e.delta;
    os << "\n";
    return os.str();
}

GridTable grid_table(const Deformation& d, double x_min, double x_max, int points, const std::vector<int>& levels) {
    if (points < 2) throw Error(ErrorKind::ParameterViolation, "a grid export needs at least 2 points");
    if (!(x_max > x_min)) throw Error(ErrorKind::ParameterViolation, "a grid export needs x_min < x_max");
    const CoordinateMap map(d.family().kind());
    GridTable t{{"x", "s", "V_upper", "V_partner", "W"}, {}};
    std::vector<PartnerEigenfunction> states;
    for (int l : levels) {
        states.push_back(partner_eigenfunction(d, l));
        t.columns.push_back("psi_" + std::to_string(l));
    }
    for (int i = 0; i < points; ++i) {
        const double x = i == points - 1 ? x_max : x_min + (x_max - x_min) * i / (points - 1);
        std::vector<double> row(t.columns.size(), NAN);
        row[0] = x;
        if (map.contains(x)) {
            try {
                const Locus p = map.locus(d.family(), x);
                row[1] = p.s;
                const PotentialPair v = potentials(d, x);
                row[2] = v.upper;
                row[3] = v.partner;
                row[4] = superpotential_dx(d, x).value;
                const double amplitude = std::exp(log_sqrt_kappa_rho(d.family(), p));
                for (std::size_t k = 0; k < states.size(); ++k) row[5 + k] = amplitude * states[k].upper(p.s).value;
            } catch (const Error&) {
            }
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::string to_csv(const GridTable& t) {
    std::string out;
    for (std::size_t c = 0; c < t.columns.size(); ++c) out += (c ? "," : "") + t.columns[c];
    out += "\n";
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + format_number(row[c]);
        out += "\n";
    }
    return out;
}

Json to_json(const GridTable& t) {
    Json j;
    j["columns"] = t.columns;
    Json data = Json::object();
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        Json col = Json::array();
        for (const auto& row : t.rows) col.push_back(number_or_null(row[c]));
        data[t.columns[c]] = col;
    }
    j["data"] = data;
    return j;
}

std::string to_svg(const GridTable& t) {
    constexpr double width = 800, height = 500, pad = 40;
    std::vector<double> ys;
    for (const auto& row : t.rows)
        for (std::size_t c = 2; c <= 4; ++c)
            if (std::isfinite(row[c])) ys.push_back(row[c]);
    double lo = -1, hi = 1;
    if (!ys.empty()) {
        std::sort(ys.begin(), ys.end());
        lo = ys[ys.size() / 50];
        hi = ys[ys.size() - 1 - ys.size() / 50];
        if (hi - lo < 1e-12) {
            lo -= 1;
            hi += 1;
        }
    }
    const double x0 = t.rows.front()[0], x1 = t.rows.back()[0];
    auto px = [&](double x) { return pad + (x - x0) / (x1 - x0) * (width - 2 * pad); };
    auto py = [&](double y) { return height - pad - (std::clamp(y, lo, hi) - lo) / (hi - lo) * (height - 2 * pad); };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" viewBox=\"0 0 "
       << width << " " << height << "\">\n";
    os << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << width - 2 * pad << "\" height=\"" << height - 2 * pad
       << "\" fill=\"none\" stroke=\"#888\"/>\n";
    const std::array<const char*, 3> colours{"#1f77b4", "#d62728", "#2ca02c"};
    for (std::size_t c = 2; c <= 4; ++c) {
        std::ostringstream path;
        bool pen = false;
        for (const auto& row : t.rows) {
            if (!std::isfinite(row[c])) {
                pen = false;
                continue;
            }
            path << (pen ? " L" : " M") << px(row[0]) << "," << py(row[c]);
            pen = true;
        }
        os << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << colours[c - 2]
           << "\" stroke-width=\"1.5\"/>\n";
        os << "<text x=\"" << pad + 10 << "\" y=\"" << pad + 16 * (c - 1) << "\" fill=\"" << colours[c - 2]
           << "\" font-size=\"12\">" << t.columns[c] << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

Json derive_metadata(const Deformation& d, const std::vector<int>& levels) {
    Json j;
    j["deformation"] = to_json(d);
    j["lambda_m"] = d.lambda_m_shifted();
    Json targets = Json::array();
    for (int l : levels) targets.push_back(Json{{"l", l}, {"lambda", partner_eigenfunction(d, l).eigenvalue()}});
    j["targets"] = targets;
    j["gamma_rays"] = to_json(d.rays());
    return j;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::ParameterViolation, "cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw Error(ErrorKind::ParameterViolation, "cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

}  // namespace hyperfact
