#include "config.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace mesodefect::cli {

namespace {

using nlohmann::json;

void allow_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, v] : obj.items())
        if (!allowed.count(k)) throw ConfigError("unknown key '" + k + "' in " + where);
}

double number(const json& v, const std::string& where) {
    if (!v.is_number()) throw ConfigError(where + " must be a number");
    return v.get<double>();
}

template <int N>
Eigen::Matrix<double, N, 1> vec(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != N) throw ConfigError(where + " must be an array of " + std::to_string(N) + " numbers");
    Eigen::Matrix<double, N, 1> out;
    for (int i = 0; i < N; ++i) out[i] = number(v[i], where);
    return out;
}

long integer(const json& v, const std::string& where, long lo) {
    if (!v.is_number_integer() && !v.is_number_unsigned()) throw ConfigError(where + " must be an integer");
    const long n = v.get<long>();
    if (n < lo) throw ConfigError(where + " must be at least " + std::to_string(lo));
    return n;
}

SuiteSpec parse_suite(const json& s) {
    allow_keys(s, "suite", {"auto", "seed", "bumps"});
    SuiteSpec out;
    if (s.contains("auto")) out.auto_count = static_cast<std::size_t>(integer(s["auto"], "suite.auto", 0));
    if (s.contains("seed")) {
        if (!s["seed"].is_number_unsigned() && !s["seed"].is_number_integer())
            throw ConfigError("suite.seed must be a non-negative integer");
        out.seed = s["seed"].get<std::uint64_t>();
    }
    if (s.contains("bumps")) {
        if (!s["bumps"].is_array()) throw ConfigError("suite.bumps must be an array");
        for (std::size_t i = 0; i < s["bumps"].size(); ++i) {
            const json& b = s["bumps"][i];
            const std::string where = "suite.bumps[" + std::to_string(i) + "]";
            allow_keys(b, where, {"center", "radius", "amplitude"});
            if (!b.contains("center") || !b.contains("radius")) throw ConfigError(where + " needs center and radius");
            const double r = number(b["radius"], where + ".radius");
            if (!(r > 0.0)) throw ConfigError(where + ".radius must be positive");
            const double a = b.contains("amplitude") ? number(b["amplitude"], where + ".amplitude") : 1.0;
            out.bumps.emplace_back(vec<2>(b["center"], where + ".center"), r, a);
        }
    }
    return out;
}

} // namespace

std::vector<BumpTestFunction> RunConfig::bumps(const DefectEnsemble& e) const {
    if (!suite.bumps.empty()) return suite.bumps;
    if (e.empty()) return {};
    return auto_bump_suite(e, suite.auto_count, suite.seed);
}

Window parse_window(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        double d = 0.0;
        try {
            d = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw ConfigError("window must be x0,y0,x1,y1");
        }
        if (used != tok.size()) throw ConfigError("window must be x0,y0,x1,y1");
        v.push_back(d);
    }
    if (v.size() != 4) throw ConfigError("window must be x0,y0,x1,y1");
    return Window{Vec2(v[0], v[1]), Vec2(v[2], v[3])};
}

RunConfig parse_config(const std::string& text, const std::string& base_dir) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    allow_keys(j, "config", {"lines", "x0", "wedge", "suite", "tol", "quadrature", "grid", "window", "res", "grid_input"});
    RunConfig c;
    if (!j.contains("x0")) throw ConfigError("config needs x0");
    c.x0 = vec<2>(j["x0"], "x0");
    if (j.contains("lines")) {
        if (!j["lines"].is_array()) throw ConfigError("lines must be an array");
        for (std::size_t i = 0; i < j["lines"].size(); ++i) {
            const json& l = j["lines"][i];
            const std::string where = "lines[" + std::to_string(i) + "]";
            allow_keys(l, where, {"position", "burgers", "frank_z", "declared_burgers"});
            if (!l.contains("position")) throw ConfigError(where + " needs position");
            DefectLine2D line;
            line.position = vec<2>(l["position"], where + ".position");
            if (l.contains("burgers")) line.burgers = vec<3>(l["burgers"], where + ".burgers");
            if (l.contains("frank_z")) line.frank_z = number(l["frank_z"], where + ".frank_z");
            c.lines.push_back(line);
            c.declared_burgers.push_back(l.contains("declared_burgers")
                                             ? vec<3>(l["declared_burgers"], where + ".declared_burgers")
                                             : line.burgers);
        }
    }
    if (j.contains("wedge")) {
        allow_keys(j["wedge"], "wedge", {"nu_star", "R"});
        if (j["wedge"].contains("nu_star")) c.wedge.nu_star = number(j["wedge"]["nu_star"], "wedge.nu_star");
        if (j["wedge"].contains("R")) c.wedge.R = number(j["wedge"]["R"], "wedge.R");
    }
    if (j.contains("suite")) c.suite = parse_suite(j["suite"]);
    if (j.contains("tol")) {
        c.tol = number(j["tol"], "tol");
        if (!(c.tol > 0.0)) throw ConfigError("tol must be positive");
    }
    if (j.contains("quadrature")) {
        const json& q = j["quadrature"];
        allow_keys(q, "quadrature", {"rel_tol", "abs_tol", "max_evaluations"});
        if (q.contains("rel_tol")) c.quadrature.rel_tol = number(q["rel_tol"], "quadrature.rel_tol");
        if (q.contains("abs_tol")) c.quadrature.abs_tol = number(q["abs_tol"], "quadrature.abs_tol");
        if (q.contains("max_evaluations"))
            c.quadrature.max_evaluations = static_cast<std::size_t>(integer(q["max_evaluations"], "quadrature.max_evaluations", 1));
    }
    if (j.contains("grid")) c.grid = static_cast<int>(integer(j["grid"], "grid", 2));
    if (j.contains("window")) {
        const Eigen::Vector4d w = vec<4>(j["window"], "window");
        c.window = Window{Vec2(w[0], w[1]), Vec2(w[2], w[3])};
    }
    if (j.contains("res")) c.res = static_cast<int>(integer(j["res"], "res", 2));
    if (j.contains("grid_input")) {
        if (!j["grid_input"].is_string()) throw ConfigError("grid_input must be a string");
        const std::filesystem::path p(j["grid_input"].get<std::string>());
        c.grid_input = p.is_absolute() ? p.string() : (std::filesystem::path(base_dir) / p).string();
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    const auto dir = std::filesystem::path(path).parent_path();
    return parse_config(ss.str(), dir.empty() ? "." : dir.string());
}

} // namespace mesodefect::cli
