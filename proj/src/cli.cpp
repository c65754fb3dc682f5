#include "hyperfact/cli.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"

#include "hyperfact/catalog.hpp"

namespace hyperfact {

namespace {

double parse_gamma(const std::string& text) {
    if (text == "inf" || text == "+inf" || text == "infinity") return INFINITY;
    try {
        std::size_t used = 0;
        const double g = std::stod(text, &used);
        if (used == text.size()) return g;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::ParameterViolation, "gamma must be a number or \"inf\", got '" + text + "'");
}

TildeForm parse_form(const std::string& text) {
    if (text == "printed") return TildeForm::printed;
    if (text == "isospectral") return TildeForm::isospectral;
    throw Error(ErrorKind::ParameterViolation, "form must be \"printed\" or \"isospectral\"");
}

Rational parse_json_rational(const Json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number()) return to_rational(v.get<double>());
    throw Error(ErrorKind::ParameterViolation, "expected a number or a \"p/q\" string");
}

struct FamilyFlags {
    std::optional<std::string> kind, alpha, beta, gamma, delta, form;
    std::optional<int> m;
    std::optional<double> s0;
    std::optional<std::string> config;

    void attach(CLI::App* app) {
        app->add_option("--config", config, "JSON config file (flags override it)");
        app->add_option("--kind", kind, "const | linear | one_minus_s2 | s2_minus_one | s2 | s2_plus_one");
        app->add_option("--alpha", alpha, "alpha (decimal or p/q)");
        app->add_option("--beta", beta, "beta (decimal or p/q)");
        app->add_option("--m", m, "order index m");
        app->add_option("--gamma", gamma, "deformation parameter, a number or inf");
        app->add_option("--delta", delta, "tilde shift delta (decimal or p/q)");
        app->add_option("--s0", s0, "base point of the cumulative weight");
        app->add_option("--form", form, "printed | isospectral (tilde partners)");
    }

    JobConfig resolve() const {
        JobConfig c = config ? load_config(*config) : JobConfig{};
        if (kind || alpha || beta) {
            if (!(kind && alpha && beta) && !c.family)
                throw Error(ErrorKind::ParameterViolation, "--kind, --alpha and --beta go together");
            const Kind k = kind ? kind_from_tag(*kind) : c.family->kind();
            const Rational a = alpha ? parse_rational(*alpha) : c.family->alpha_exact();
            const Rational b = beta ? parse_rational(*beta) : c.family->beta_exact();
            c.family = make_family(k, a, b);
        }
        if (m) c.m = *m;
        if (gamma) c.gamma = parse_gamma(*gamma);
        if (delta) c.delta = parse_rational(*delta);
        if (s0) c.s0 = *s0;
        if (form) c.form = parse_form(*form);
        return c;
    }
};

void write_or_print(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty() || path == "-") out << content;
    else write_file_atomic(path, content);
}

int cmd_families(bool json, std::optional<int> catalog_id, std::ostream& out) {
    if (catalog_id) {
        if (json) out << catalog_binding(*catalog_id).dump(2) << "\n";
        else out << catalog_binding_text(*catalog_id);
        return 0;
    }
    if (json) out << families_listing().dump(2) << "\n";
    else out << families_table();
    return 0;
}

int cmd_derive(const JobConfig& c, bool json, std::ostream& out) {
    const Deformation d = make_deformation(c);
    const std::vector<int> levels = derive_levels(c);
    const GridSpec g = c.grid.value_or(default_export_grid(d.family().kind()));
    const GridTable table = grid_table(d, g.x_min, g.x_max, g.points, levels);
    const bool as_json = json || c.format == "json";
    if (!as_json && c.format != "csv") throw Error(ErrorKind::ParameterViolation, "format must be csv or json");
    write_or_print(c.output, as_json ? to_json(table).dump() + "\n" : to_csv(table), out);
    const Json meta = derive_metadata(d, levels);
    std::string meta_path = c.meta;
    if (meta_path.empty() && !c.output.empty() && c.output != "-") meta_path = c.output + ".meta.json";
    if (!meta_path.empty()) write_file_atomic(meta_path, meta.dump(2) + "\n");
    if (!c.svg.empty()) write_file_atomic(c.svg, to_svg(table));
    return 0;
}

int cmd_verify(const JobConfig& c, bool json, std::ostream& out) {
    std::vector<Suite> suites;
    if (c.suite == "all") suites.assign(all_suites.begin(), all_suites.end());
    else suites.push_back(suite_from_name(c.suite));
    VerifyConfig vc;
    vc.family = c.family;
    if (c.family) vc.orders = {c.m};
    if (c.gamma) vc.gamma = c.gamma;
    vc.delta = c.delta;
    const std::vector<SuiteReport> reports = run_suites(suites, vc);
    bool ok = true;
    Json all = Json::object();
    for (const SuiteReport& r : reports) {
        ok = ok && r.passed();
        all[std::string(suite_name(r.suite))] = to_json(r);
    }
    if (!c.report.empty()) write_file_atomic(c.report, all.dump(2) + "\n");
    if (json) {
        out << all.dump(2) << "\n";
    } else {
        for (const SuiteReport& r : reports) {
            double worst = 0.0;
            for (const Check& ch : r.checks)
                if (ch.passed()) worst = std::max(worst, ch.residual);
            char line[160];
            std::snprintf(line, sizeof line, "%-14s %s  %5zu checks  max residual %.3g  %.2f s\n",
                          std::string(suite_name(r.suite)).c_str(), r.passed() ? "PASS" : "FAIL", r.checks.size(), worst,
                          r.seconds);
            out << line;
            for (const Check& f : r.failures()) {
                out << "  failed: " << f.subject << " l=" << f.l << " m=" << f.m << " " << f.identity;
                if (f.error.empty()) out << " residual " << f.residual << " > " << f.tolerance;
                else out << " " << f.error;
                out << "\n";
            }
        }
    }
    return ok ? 0 : 1;
}

}  // namespace

JobConfig config_from_json(const Json& j) {
    JobConfig c;
    if (!j.is_object()) throw Error(ErrorKind::ParameterViolation, "config must be a JSON object");
    try {
        if (j.contains("family")) c.family = family_from_json(j.at("family"));
        if (j.contains("m")) c.m = j.at("m").get<int>();
        if (j.contains("gamma")) c.gamma = gamma_from_json(j.at("gamma"));
        if (j.contains("delta") && !j.at("delta").is_null()) c.delta = parse_json_rational(j.at("delta"));
        if (j.contains("s0") && !j.at("s0").is_null()) c.s0 = j.at("s0").get<double>();
        if (j.contains("form")) c.form = parse_form(j.at("form").get<std::string>());
        if (j.contains("levels")) c.levels = j.at("levels").get<std::vector<int>>();
        if (j.contains("grid")) {
            const Json& g = j.at("grid");
            c.grid = GridSpec{g.at("x_min").get<double>(), g.at("x_max").get<double>(), g.at("N").get<int>()};
        }
        if (j.contains("output")) {
            const Json& o = j.at("output");
            c.output = o.value("path", "");
            c.format = o.value("format", "csv");
            c.meta = o.value("meta", "");
            c.svg = o.value("svg", "");
        }
        if (j.contains("suite")) c.suite = j.at("suite").get<std::string>();
        if (j.contains("report")) c.report = j.at("report").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParameterViolation, std::string("bad config: ") + e.what());
    }
    return c;
}

JobConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParameterViolation, "cannot read config " + path);
    try {
        return config_from_json(Json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::ParameterViolation, "config " + path + " is not valid JSON: " + e.what());
    }
}

Deformation make_deformation(const JobConfig& c) {
    if (!c.family) throw Error(ErrorKind::ParameterViolation, "no family given (use --kind/--alpha/--beta or a config)");
    return Deformation::make(*c.family, c.m, c.gamma.value_or(INFINITY), c.s0, c.delta, c.form);
}

std::vector<int> derive_levels(const JobConfig& c) {
    if (!c.levels.empty()) return c.levels;
    std::vector<int> out;
    for (int l = c.m + 1; l <= c.m + 3 && cutoff(*c.family).admits(l); ++l) out.push_back(l);
    return out;
}

GridSpec default_export_grid(Kind kind) {
    switch (kind) {
    case Kind::constant: return {-6, 6, 601};
    case Kind::linear: return {0.05, 12, 601};
    case Kind::one_minus_s2: return {0.05, M_PI - 0.05, 601};
    case Kind::s2_minus_one: return {0.05, 6, 601};
    case Kind::s2: return {-4, 4, 601};
    case Kind::s2_plus_one: return {-6, 6, 601};
    }
    return {-6, 6, 601};
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hypergeometric-type operators, ladder factorizations and Mielnik partner potentials"};
    app.require_subcommand(1);

    bool json = false;
    std::optional<int> catalog_id;
    CLI::App* families = app.add_subcommand("families", "List the six families and the ten catalog potentials");
    families->add_flag("--json", json, "machine-readable listing");
    families->add_option("--catalog", catalog_id, "show one catalog entry (1-10)");

    FamilyFlags derive_flags;
    std::vector<int> levels;
    std::optional<double> x_min, x_max;
    std::optional<int> points;
    std::optional<std::string> output, format, meta, svg;
    CLI::App* derive = app.add_subcommand("derive", "Export potentials, superpotential and wavefunctions on a grid");
    derive_flags.attach(derive);
    derive->add_flag("--json", json, "JSON grid export instead of CSV");
    derive->add_option("--levels", levels, "levels l for psi_l columns")->delimiter(',');
    derive->add_option("--x-min", x_min, "grid start");
    derive->add_option("--x-max", x_max, "grid end");
    derive->add_option("--points", points, "number of grid points, endpoints included");
    derive->add_option("--out", output, "grid export path (stdout when omitted)");
    derive->add_option("--format", format, "csv | json");
    derive->add_option("--meta", meta, "metadata JSON path (default <out>.meta.json)");
    derive->add_option("--svg", svg, "SVG plot path");

    FamilyFlags verify_flags;
    std::optional<std::string> suite, report;
    CLI::App* verify = app.add_subcommand("verify", "Run the invariant suites");
    verify_flags.attach(verify);
    verify->add_flag("--json", json, "JSON report on stdout");
    verify->add_option("--suite", suite, "algebra | recurrence | orthogonality | riccati | catalog | spectrum | all");
    verify->add_option("--report", report, "write the JSON report to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (families->parsed()) return cmd_families(json, catalog_id, out);
        if (derive->parsed()) {
            JobConfig c = derive_flags.resolve();
            if (!levels.empty()) c.levels = levels;
            if (x_min || x_max || points) {
                GridSpec g = c.grid.value_or(c.family ? default_export_grid(c.family->kind()) : GridSpec{-6, 6, 601});
                if (x_min) g.x_min = *x_min;
                if (x_max) g.x_max = *x_max;
                if (points) g.points = *points;
                c.grid = g;
            }
            if (output) c.output = *output;
            if (format) c.format = *format;
            if (meta) c.meta = *meta;
            if (svg) c.svg = *svg;
            return cmd_derive(c, json, out);
        }
        JobConfig c = verify_flags.resolve();
        if (suite) c.suite = *suite;
        if (report) c.report = *report;
        return cmd_verify(c, json, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace hyperfact
