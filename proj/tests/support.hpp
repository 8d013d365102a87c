#pragma once

#include <cmath>
#include <numbers>

#include "mesodefect/mesodefect.hpp"

namespace testing {

using namespace mesodefect;

constexpr double pi = std::numbers::pi;

struct EnsembleShape {
    int lines = 5;
    double box = 2.0;
    double min_separation = 0.2;
    bool screws = true;
    bool edges = true;
    bool wedges = true;
};

// Random ensemble with feet in [-box, box]^2, pairwise separated, and x0 off the lines.
inline DefectEnsemble random_ensemble(Rng& rng, const EnsembleShape& s = {}) {
    std::vector<DefectLine2D> lines;
    while (static_cast<int>(lines.size()) < s.lines) {
        const Vec2 p(rng.uniform(-s.box, s.box), rng.uniform(-s.box, s.box));
        bool ok = true;
        for (const auto& l : lines) ok = ok && (l.position - p).norm() >= s.min_separation;
        if (!ok) continue;
        DefectLine2D l;
        l.position = p;
        if (s.edges) l.burgers.head<2>() = Vec2(rng.uniform(-1, 1), rng.uniform(-1, 1));
        if (s.screws) l.burgers.z() = rng.uniform(-1, 1);
        if (s.wedges) l.frank_z = rng.uniform(-1, 1);
        lines.push_back(l);
    }
    Vec2 x0;
    while (true) {
        x0 = Vec2(rng.uniform(-s.box, s.box), rng.uniform(-s.box, s.box));
        bool ok = true;
        for (const auto& l : lines) ok = ok && (l.position - x0).norm() >= s.min_separation;
        if (ok) break;
    }
    return DefectEnsemble(lines, x0);
}

inline DefectEnsemble single_line(const Vec2& at, const Vec3& b, double omega, const Vec2& x0) {
    return DefectEnsemble({{at, b, omega}}, x0);
}

// Integral of a radial bump over its disc by composite Simpson in s = r^2 / rho^2.
inline double bump_integral(const BumpTestFunction& phi) {
    const int n = 200000;
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double s = static_cast<double>(i) / n;
        const double v = s < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s)) : 0.0;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        sum += w * v;
    }
    const double integral_s = sum / (3.0 * n);
    return phi.amplitude() * pi * phi.radius() * phi.radius() * integral_s;
}

} // namespace testing
