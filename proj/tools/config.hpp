#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mesodefect/mesodefect.hpp"

namespace mesodefect::cli {

// Malformed or unreadable input; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SuiteSpec {
    std::size_t auto_count = 8;
    std::uint64_t seed = 1;
    std::vector<BumpTestFunction> bumps;  // explicit bumps replace the auto suite
};

struct RunConfig {
    std::vector<DefectLine2D> lines;
    std::vector<Vec3> declared_burgers;  // defaults to each line's burgers
    Vec2 x0 = Vec2::Zero();
    WedgeParams wedge;
    SuiteSpec suite;
    double tol = 1e-4;
    QuadratureOptions quadrature;
    int grid = 64;
    std::optional<Window> window;
    int res = 32;
    std::string grid_input;  // CSV grid for decompose, relative to the config file

    DefectEnsemble ensemble() const { return DefectEnsemble(lines, x0, wedge); }
    std::vector<BumpTestFunction> bumps(const DefectEnsemble& e) const;
};

// Parses the JSON schema documented in README.md. Unknown keys are errors.
RunConfig parse_config(const std::string& text, const std::string& base_dir = ".");
RunConfig load_config(const std::string& path);

// "x0,y0,x1,y1"
Window parse_window(const std::string& text);

} // namespace mesodefect::cli
