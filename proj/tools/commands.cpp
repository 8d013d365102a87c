#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

namespace mesodefect::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr double sample_clearance = 1e-6;
constexpr double jump_tol = 1e-8;
constexpr double reassembly_tol = 1e-10;
constexpr double coefficient_tol = 1e-14;
constexpr int decomposition_probes = 50;

json to_json(const ValidationReport& r) {
    json v = json::array();
    for (const auto& x : r.violations) v.push_back({{"code", x.code}, {"message", x.message}, {"lines", x.lines}});
    return {{"ok", r.ok}, {"violations", v}};
}

json vector_json(std::span<const double> v) {
    json a = json::array();
    for (double x : v) a.push_back(x);
    return a;
}

struct Check {
    std::string name;
    std::vector<double> lhs, rhs;
    double abs_err = 0.0;
    bool pass = false;
    bool inconclusive = false;
    std::string diagnostic;

    json to_json() const {
        json j{{"name", name},
               {"status", inconclusive ? "inconclusive" : (pass ? "pass" : "fail")},
               {"lhs", vector_json(lhs)},
               {"rhs", vector_json(rhs)},
               {"abs_err", abs_err},
               {"pass", pass}};
        if (!diagnostic.empty()) j["diagnostic"] = diagnostic;
        return j;
    }
};

Check from_pairing(const PairingReport& r) {
    Check c;
    c.name = r.label;
    c.inconclusive = r.inconclusive;
    c.pass = r.pass;
    c.abs_err = r.abs_error;
    c.diagnostic = r.diagnostic;
    for (const auto& p : r.components) {
        c.lhs.push_back(p.quadrature_value);
        c.rhs.push_back(p.predicted_value);
    }
    return c;
}

Check exact_check(const std::string& name, std::vector<double> lhs, std::vector<double> rhs, double tol) {
    Check c{name, std::move(lhs), std::move(rhs)};
    for (std::size_t i = 0; i < c.lhs.size(); ++i) c.abs_err = std::max(c.abs_err, std::abs(c.lhs[i] - c.rhs[i]));
    c.pass = c.abs_err <= tol;
    return c;
}

Check pairing_check(const std::string& name, const Vec3& lhs, const PairingTolerance& tol) {
    const std::array<double, 3> l{lhs[0], lhs[1], lhs[2]}, r{};
    auto rep = compare_pairings(name, l, r, tol);
    return from_pairing(rep);
}

double min_distance(const DefectEnsemble& e, const Vec2& x) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& l : e.lines()) d = std::min(d, (l.position - x).norm());
    return d;
}

std::pair<Vec2, Vec2> bounding_box(const DefectEnsemble& e) {
    Vec2 lo = e.line(0).position, hi = lo;
    for (const auto& l : e.lines()) {
        lo = lo.cwiseMin(l.position);
        hi = hi.cwiseMax(l.position);
    }
    return {lo, hi};
}

std::vector<Check> weingarten_checks(const RunConfig& c, const DefectEnsemble& e) {
    std::vector<Check> out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        double r = 0.5;
        for (std::size_t k = 0; k < e.size(); ++k)
            if (k != i) r = std::min(r, 0.4 * (e.line(k).position - e.line(i).position).norm());
        const LoopJump j = jump_around_loop(e, CircleLoop{e.line(i).position, r, true});
        const Vec3& b = c.declared_burgers[i];
        out.push_back(exact_check("weingarten[" + std::to_string(i) + "]",
                                  {j.frank_jump[0], j.frank_jump[1], j.frank_jump[2], j.burgers_jump[0],
                                   j.burgers_jump[1], j.burgers_jump[2]},
                                  {0.0, 0.0, e.line(i).frank_z, b[0], b[1], b[2]}, jump_tol));
    }
    return out;
}

Check stokes_all(const DefectEnsemble& e) {
    const auto [lo, hi] = bounding_box(e);
    const StokesReport s = stokes_check(e, CircleLoop{0.5 * (lo + hi), 0.5 * (hi - lo).norm() + 1.0, true}, jump_tol);
    Check c = exact_check("stokes",
                          {s.frank_lhs[0], s.frank_lhs[1], s.frank_lhs[2], s.burgers_lhs[0], s.burgers_lhs[1],
                           s.burgers_lhs[2]},
                          {s.frank_rhs[0], s.frank_rhs[1], s.frank_rhs[2], s.burgers_rhs[0], s.burgers_rhs[1],
                           s.burgers_rhs[2]},
                          jump_tol);
    return c;
}

Check contortion_check(const DefectEnsemble& e) {
    const auto a = predicted_incompatibility(e);
    const auto b = incompatibility_via_contortion(densities_from_ensemble(e));
    std::vector<double> l, r;
    for (int k = 0; k < 3; ++k) {
        for (const auto& t : a[k].terms()) l.insert(l.end(), {t.w0, t.w1.x(), t.w1.y()});
        for (const auto& t : b[k].terms()) r.insert(r.end(), {t.w0, t.w1.x(), t.w1.y()});
    }
    if (l.size() != r.size()) {
        Check c{"contortion_identity", l, r};
        c.abs_err = std::numeric_limits<double>::infinity();
        return c;
    }
    return exact_check("contortion_identity", l, r, coefficient_tol);
}

Check reassembly_check(const RunConfig& c, const DefectEnsemble& e) {
    const auto [lo, hi] = bounding_box(e);
    Rng rng(c.suite.seed);
    double worst = 0.0;
    int probes = 0;
    while (probes < decomposition_probes) {
        const Vec2 x(rng.uniform(lo.x() - 1, hi.x() + 1), rng.uniform(lo.y() - 1, hi.y() + 1));
        if (min_distance(e, x) < 1e-3) continue;
        const auto s = decompose_at(e, x);
        const double scale = std::max(1.0, s.solenoidal.max_abs());
        worst = std::max(worst, (s.solenoidal - (s.singular + s.correction)).max_abs() / scale);
        ++probes;
    }
    return exact_check("decomposition_identity", {worst}, {0.0}, reassembly_tol);
}

std::vector<Check> per_bump_checks(const RunConfig& c, const DefectEnsemble& e,
                                   const std::vector<BumpTestFunction>& suite) {
    const PairingTolerance tol{c.tol, 1e-6};
    const auto theorem = verify_main_theorem(e, suite, tol, c.quadrature);
    const auto densities = verify_density_identities(e, suite, tol, c.quadrature);
    const StrainSource sol = solenoidal_source(e), rem = remainder_source(e), cor = correction_source(e);
    const auto decomposition = parallel_map<std::array<Check, 3>>(suite.size(), [&](std::size_t i) {
        std::array<Check, 3> out;
        const std::string n = "[" + std::to_string(i) + "]";
        const std::array<std::pair<std::string, const StrainSource*>, 3> parts{
            {{"solenoidality" + n, &sol}, {"remainder_compatibility" + n, &rem}, {"correction_compatibility" + n, &cor}}};
        for (std::size_t p = 0; p < 3; ++p) {
            try {
                const Vec3 v = p == 0 ? pair_divergence(*parts[p].second, suite[i], c.quadrature)
                                      : pair_incompatibility_all(*parts[p].second, suite[i], c.quadrature);
                out[p] = pairing_check(parts[p].first, v, tol);
            } catch (const QuadratureError& err) {
                out[p] = from_pairing(inconclusive_report(parts[p].first, err.what(), tol));
            }
        }
        return out;
    });
    std::vector<Check> out;
    for (std::size_t i = 0; i < suite.size(); ++i) {
        out.push_back(from_pairing(theorem[i]));
        out.push_back(from_pairing(densities[2 * i]));
        out.push_back(from_pairing(densities[2 * i + 1]));
        for (const auto& d : decomposition[i]) out.push_back(d);
    }
    return out;
}

void write_csv_value(std::ostream& os, double v) { os << ',' << v; }

} // namespace

int cmd_validate(const RunConfig& c, std::ostream& out) {
    const DefectEnsemble e = c.ensemble();
    const ValidationReport r = validate_ensemble(e);
    json j = to_json(r);
    j["lines"] = e.size();
    if (c.window) {
        const auto s = summability_report(e, *c.window);
        j["summability"] = {{"count", s.count}, {"sum_abs_frank", s.sum_abs_frank}, {"sum_norm_burgers", s.sum_norm_burgers}};
    }
    out << j.dump(2) << '\n';
    return r.ok ? exit_pass : exit_fail;
}

int cmd_sample(const RunConfig& c, const std::string& what, std::ostream& out, std::ostream& err) {
    const DefectEnsemble e = c.ensemble();
    const ValidationReport r = validate_ensemble(e);
    if (!r.ok) {
        err << to_json(r).dump(2) << '\n';
        return exit_fail;
    }
    if (!c.window) {
        err << "sample needs a window (--window or config \"window\")\n";
        return exit_input;
    }
    const Window w = *c.window;
    if (!(w.hi.x() > w.lo.x()) || !(w.hi.y() > w.lo.y())) {
        err << "zero-area sampling window\n";
        return exit_fail;
    }
    std::function<std::vector<double>(const Vec2&)> f;
    std::vector<std::string> columns;
    const std::vector<std::string> sym{"xx", "xy", "xz", "yy", "yz", "zz"};
    auto strain_cols = [&](const std::string& prefix) {
        for (const auto& s : sym) columns.push_back(prefix + s);
    };
    auto flat = [](const Strain& s) {
        const auto& v = s.components();
        return std::vector<double>(v.data(), v.data() + 6);
    };
    const auto weights = decomposition_weights(e);
    if (what == "strain") {
        strain_cols("E_");
        f = [&](const Vec2& x) { return flat(ensemble_strain(e, x)); };
    } else if (what == "solenoidal") {
        strain_cols("Es_");
        f = [&](const Vec2& x) { return flat(solenoidal_closed_form(weights, x)); };
    } else if (what == "remainder") {
        strain_cols("Er_");
        f = [&](const Vec2& x) { return flat(ensemble_strain(e, x) - singular_part(weights, x)); };
    } else if (what == "frank") {
        const char* ax = "xyz";
        for (int m = 0; m < 3; ++m)
            for (int k = 0; k < 3; ++k) columns.push_back(std::string("F_") + ax[m] + ax[k]);
        f = [&](const Vec2& x) {
            const Mat3 F = frank_tensor_field(e, x);
            std::vector<double> v;
            for (int m = 0; m < 3; ++m)
                for (int k = 0; k < 3; ++k) v.push_back(F(m, k));
            return v;
        };
    } else {
        err << "unknown field '" << what << "' (strain, frank, solenoidal, remainder)\n";
        return exit_input;
    }
    out << std::setprecision(17);
    out << "x,y";
    for (const auto& col : columns) out << ',' << col;
    out << '\n';
    const int n = c.res;
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            const Vec2 x(w.lo.x() + (w.hi.x() - w.lo.x()) * ix / (n - 1), w.lo.y() + (w.hi.y() - w.lo.y()) * iy / (n - 1));
            out << x.x() << ',' << x.y();
            if (min_distance(e, x) <= sample_clearance) {
                for (std::size_t k = 0; k < columns.size(); ++k) out << ',';
            } else {
                for (double v : f(x)) write_csv_value(out, v);
            }
            out << '\n';
        }
    return exit_pass;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
    const DefectEnsemble e = c.ensemble();
    const ValidationReport r = validate_ensemble(e);
    json j;
    j["metadata"] = {{"lines", e.size()}, {"tol", c.tol}, {"seed", c.suite.seed}, {"screw_weight", "c = B_z / 2"}};
    if (!r.ok) {
        j["validation"] = to_json(r);
        j["checks"] = json::array();
        j["pass"] = false;
        out << j.dump(2) << '\n';
        return exit_fail;
    }
    std::vector<Check> checks;
    if (!e.empty()) {
        for (auto& w : weingarten_checks(c, e)) checks.push_back(std::move(w));
        checks.push_back(stokes_all(e));
        checks.push_back(contortion_check(e));
        checks.push_back(reassembly_check(c, e));
        for (auto& p : per_bump_checks(c, e, c.bumps(e))) checks.push_back(std::move(p));
    }
    bool failed = false, inconclusive = false;
    json list = json::array();
    for (const auto& ch : checks) {
        failed = failed || (!ch.pass && !ch.inconclusive);
        inconclusive = inconclusive || ch.inconclusive;
        list.push_back(ch.to_json());
    }
    j["checks"] = list;
    j["pass"] = !failed && !inconclusive;
    out << j.dump(2) << '\n';
    if (failed) return exit_fail;
    return inconclusive ? exit_inconclusive : exit_pass;
}

int cmd_decompose(const RunConfig& c, const std::string& out_prefix, std::ostream& out, std::ostream& err) {
    GridField input = GridField::zeros(2, 1.0);
    json j;
    if (!c.grid_input.empty()) {
        std::ifstream in(c.grid_input);
        if (!in) {
            err << "cannot read grid input " << c.grid_input << '\n';
            return exit_input;
        }
        try {
            input = read_grid_csv(in);
        } catch (const std::exception& ex) {
            err << "grid input: " << ex.what() << '\n';
            return exit_input;
        }
        j["source"] = "grid_input";
    } else {
        const DefectEnsemble e = c.ensemble();
        const ValidationReport r = validate_ensemble(e);
        if (!r.ok) {
            err << to_json(r).dump(2) << '\n';
            return exit_fail;
        }
        Vec2 lo(-1, -1);
        double cell = 2.0;
        if (c.window) {
            lo = c.window->lo;
            cell = c.window->hi.x() - c.window->lo.x();
            if (std::abs((c.window->hi.y() - c.window->lo.y()) - cell) > 1e-12 * std::abs(cell)) {
                err << "decompose needs a square window\n";
                return exit_input;
            }
            if (!(cell > 0.0)) {
                err << "zero-area window\n";
                return exit_fail;
            }
        } else if (!e.empty()) {
            const auto [blo, bhi] = bounding_box(e);
            cell = (bhi - blo).maxCoeff() + 2.0;
            lo = 0.5 * (blo + bhi) - Vec2(0.5 * cell, 0.5 * cell);
        }
        if (c.grid < 2 || (c.grid & (c.grid - 1)) != 0) {
            err << "grid size must be a power of two\n";
            return exit_input;
        }
        // mollified sampling: nodes closer than one spacing to a foot see the field on that circle
        const double h = cell / c.grid;
        input = GridField::sample(
            c.grid, cell,
            [&](const Vec2& x) {
                Vec2 p = x;
                for (const auto& l : e.lines()) {
                    const Vec2 d = x - l.position;
                    const double r = d.norm();
                    if (r < h) {
                        if (r == 0.0) return Strain();
                        p = l.position + h * d / r;
                    }
                }
                return ensemble_strain(e, p);
            },
            lo);
        j["source"] = "ensemble";
        j["screw_weight"] = "c = B_z / 2";
    }
    const GridDecomposition d = decompose_grid(input);
    const double inc_total = grid_incompatibility(input).max_abs();
    const double inc_comp = grid_incompatibility(d.compatible).max_abs();
    j["n"] = input.n();
    j["cell"] = input.cell();
    j["origin"] = {input.origin().x(), input.origin().y()};
    j["gauge_residual"] = d.gauge_residual;
    j["max_abs"] = {{"input", input.max_abs()}, {"F", d.F.max_abs()}, {"compatible", d.compatible.max_abs()},
                    {"solenoidal", d.solenoidal.max_abs()}};
    j["compatible_incompatibility"] = inc_total > 0.0 ? inc_comp / inc_total : inc_comp;
    if (!out_prefix.empty()) {
        const std::array<std::pair<const char*, const GridField*>, 3> files{
            {{"_F.csv", &d.F}, {"_compatible.csv", &d.compatible}, {"_solenoidal.csv", &d.solenoidal}}};
        json written = json::array();
        for (const auto& [suffix, g] : files) {
            const std::string path = out_prefix + suffix;
            std::ofstream os(path);
            if (!os) {
                err << "cannot write " << path << '\n';
                return exit_input;
            }
            write_grid_csv(os, *g);
            written.push_back(path);
        }
        j["files"] = written;
    }
    out << j.dump(2) << '\n';
    return exit_pass;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Straight dislocation and disclination ensembles: fields, identities, decompositions"};
    app.require_subcommand(1);
    std::string config_path, out_path, window_text, what = "strain";
    double tol = 0.0;
    int grid = 0, res = 0;
    auto add_common = [&](CLI::App* s) {
        s->add_option("--config", config_path, "JSON run configuration")->required();
        s->add_option("--out", out_path, "output path (prefix for decompose)");
        s->add_option("--tol", tol, "relative pairing tolerance");
        s->add_option("--grid", grid, "grid size for decompose");
        s->add_option("--window", window_text, "x0,y0,x1,y1");
        s->add_option("--res", res, "nodes per side for sample");
    };
    auto* validate = app.add_subcommand("validate", "check ensemble invariants");
    auto* sample = app.add_subcommand("sample", "sample a field on a grid as CSV");
    auto* verify = app.add_subcommand("verify", "run the identity checks, JSON report");
    auto* decompose = app.add_subcommand("decompose", "spectral compatible/solenoidal split");
    for (auto* s : {validate, sample, verify, decompose}) add_common(s);
    sample->add_option("--what", what, "strain, frank, solenoidal or remainder");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_pass : exit_input;
    }

    RunConfig c;
    try {
        c = load_config(config_path);
        if (tol > 0.0) c.tol = tol;
        if (grid > 0) c.grid = grid;
        if (res > 0) c.res = res;
        if (res < 0 || grid < 0 || tol < 0.0) throw ConfigError("--tol, --grid and --res must be positive");
        if (!window_text.empty()) c.window = parse_window(window_text);
        if (c.res < 2) throw ConfigError("res must be at least 2");
    } catch (const ConfigError& e) {
        err << "input error: " << e.what() << '\n';
        return exit_input;
    }

    std::ofstream file;
    std::ostream* target = &out;
    if (!out_path.empty() && !decompose->parsed()) {
        file.open(out_path);
        if (!file) {
            err << "cannot write " << out_path << '\n';
            return exit_input;
        }
        target = &file;
    }
    try {
        if (validate->parsed()) return cmd_validate(c, *target);
        if (sample->parsed()) return cmd_sample(c, what, *target, err);
        if (verify->parsed()) return cmd_verify(c, *target);
        return cmd_decompose(c, out_path, *target, err);
    } catch (const SingularPointError& e) {
        err << "error: " << e.what() << '\n';
        return exit_fail;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << '\n';
        return exit_input;
    }
}

} // namespace mesodefect::cli
