#include "mesodefect/decomposition.hpp"

#include <cmath>
#include <numbers>

#include "mesodefect/canonical_fields.hpp"

namespace mesodefect {

namespace {

constexpr double pi = std::numbers::pi;

struct Polar {
    double dx, dy, r2;
};

Polar offset(const LineWeights& l, const Vec2& x) {
    const double dx = x.x() - l.foot.x(), dy = x.y() - l.foot.y();
    const double r2 = dx * dx + dy * dy;
    if (!(std::sqrt(r2) >= singular_radius)) throw SingularPointError("field evaluated on a defect line");
    return {dx, dy, r2};
}

// [[d_yy F, -d_xy F], [-d_xy F, d_xx F]] from the Hessian of F.
Strain airy(const Eigen::Matrix2d& h) {
    Strain s;
    s(X, X) = h(1, 1);
    s(X, Y) = -h(0, 1);
    s(Y, Y) = h(0, 0);
    return s;
}

} // namespace

std::vector<LineWeights> decomposition_weights(const DefectEnsemble& e) {
    std::vector<LineWeights> out;
    out.reserve(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        const auto& l = e.line(i);
        out.push_back({l.position, 0.5 * l.burgers.z(), e.intrinsic_edge_burgers(i), l.frank_z});
    }
    return out;
}

Strain screw_solenoidal(std::span<const LineWeights> w, const Vec2& x) {
    Strain s;
    for (const auto& l : w) {
        if (l.c == 0.0) continue;
        const Polar o = offset(l, x);
        s(X, Z) -= l.c * o.dy / (2 * pi * o.r2);
        s(Y, Z) += l.c * o.dx / (2 * pi * o.r2);
    }
    return s;
}

Strain edge_solenoidal(std::span<const LineWeights> w, const Vec2& x) {
    Eigen::Matrix2d h = Eigen::Matrix2d::Zero();
    for (const auto& l : w) {
        if (l.c_planar == Vec2::Zero()) continue;
        const Polar o = offset(l, x);
        const Vec2 d(o.dx, o.dy);
        const double r4 = o.r2 * o.r2;
        const double q = l.c_planar.y() * o.dx - l.c_planar.x() * o.dy;
        const Vec2 dq(l.c_planar.y(), -l.c_planar.x());
        const Vec2 dL = d / (4 * pi * o.r2);
        const Eigen::Matrix2d hL = (o.r2 * Eigen::Matrix2d::Identity() - 2.0 * d * d.transpose()) / (4 * pi * r4);
        h += hL * q + dL * dq.transpose() + dq * dL.transpose();
    }
    return airy(h);
}

Strain wedge_solenoidal(std::span<const LineWeights> w, const Vec2& x) {
    Eigen::Matrix2d h = Eigen::Matrix2d::Zero();
    for (const auto& l : w) {
        if (l.C == 0.0) continue;
        const Polar o = offset(l, x);
        const Vec2 d(o.dx, o.dy);
        h += l.C / (4 * pi) * (0.5 * std::log(o.r2) * Eigen::Matrix2d::Identity() + d * d.transpose() / o.r2);
    }
    return airy(h);
}

Strain solenoidal_closed_form(std::span<const LineWeights> w, const Vec2& x) {
    return screw_solenoidal(w, x) + edge_solenoidal(w, x) + wedge_solenoidal(w, x);
}

Strain singular_part(std::span<const LineWeights> w, const Vec2& x) {
    Strain s = screw_solenoidal(w, x) + wedge_solenoidal(w, x);
    for (const auto& l : w)
        if (l.c_planar != Vec2::Zero()) s += edge_strain(l.c_planar, l.foot, x);
    return s;
}

Strain compatible_correction(std::span<const LineWeights> w, const Vec2& x) {
    Strain s;
    for (const auto& l : w) {
        if (l.c_planar == Vec2::Zero()) continue;
        const Polar o = offset(l, x);
        const double dx = o.dx, dy = o.dy;
        const double k = 1.0 / (4 * pi * o.r2 * o.r2);
        const double cx = l.c_planar.x(), cy = l.c_planar.y();
        s(X, X) += k * (cy * dx * (dy * dy + 3 * dx * dx) - cx * dy * (dx * dx - dy * dy));
        s(X, Y) += k * (cy * dy * (dy * dy + 3 * dx * dx) - cx * dx * (dx * dx + 3 * dy * dy));
        s(Y, Y) += k * (cy * dx * (dy * dy - dx * dx) - cx * dy * (dx * dx + 3 * dy * dy));
    }
    return s;
}

DecompositionSample decompose_at(const DefectEnsemble& e, const Vec2& x) {
    const auto w = decomposition_weights(e);
    DecompositionSample d;
    d.total = ensemble_strain(e, x);
    d.solenoidal = solenoidal_closed_form(w, x);
    d.compatible = d.total - d.solenoidal;
    d.singular = singular_part(w, x);
    d.correction = compatible_correction(w, x);
    return d;
}

StrainSource solenoidal_source(const DefectEnsemble& e) {
    return {[w = decomposition_weights(e)](const Vec2& x) { return solenoidal_closed_form(w, x); }, e.feet()};
}

StrainSource compatible_source(const DefectEnsemble& e) {
    return {[e, w = decomposition_weights(e)](const Vec2& x) {
                return ensemble_strain(e, x) - solenoidal_closed_form(w, x);
            },
            e.feet()};
}

StrainSource remainder_source(const DefectEnsemble& e) {
    return {[e, w = decomposition_weights(e)](const Vec2& x) { return ensemble_strain(e, x) - singular_part(w, x); },
            e.feet()};
}

StrainSource correction_source(const DefectEnsemble& e) {
    return {[w = decomposition_weights(e)](const Vec2& x) { return compatible_correction(w, x); }, e.feet()};
}

} // namespace mesodefect
