#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "mesodefect/concentrated.hpp"
#include "mesodefect/types.hpp"

namespace mesodefect {

// Minimum separation between line feet and between a foot and the reference point.
inline constexpr double sep_min = 1e-9;

struct WedgeParams {
    double nu_star = 0.3;  // effective Poisson ratio, in (-1, 0.5)
    double R = 1.0;        // log reference radius
};

// Straight line parallel to z piercing the plane at `position`.
// `burgers` is measured about the ensemble reference point x0.
struct DefectLine2D {
    Vec2 position = Vec2::Zero();
    Vec3 burgers = Vec3::Zero();
    double frank_z = 0.0;
};

class DefectEnsemble {
public:
    DefectEnsemble() = default;
    DefectEnsemble(std::vector<DefectLine2D> lines, const Vec2& x0, WedgeParams wedge = {});

    const std::vector<DefectLine2D>& lines() const { return lines_; }
    const DefectLine2D& line(std::size_t i) const { return lines_[i]; }
    std::size_t size() const { return lines_.size(); }
    bool empty() const { return lines_.empty(); }
    const Vec2& x0() const { return x0_; }
    const WedgeParams& wedge() const { return wedge_; }

    // Planar Burgers vector of the line's edge part, i.e. the Burgers vector
    // measured about the line's own foot: B_g + eps_bg (xhat_b - x0_b) Omega_z.
    Vec2 intrinsic_edge_burgers(std::size_t i) const;

    std::vector<Vec2> feet() const;

    friend DefectEnsemble transform_reference_point(const DefectEnsemble& e, const Vec2& new_x0);

private:
    std::vector<DefectLine2D> lines_;
    Vec2 x0_ = Vec2::Zero();
    WedgeParams wedge_;
    // Burgers vectors and reference point as first constructed; transforms are
    // always evaluated from here so a round trip reproduces the input exactly.
    std::vector<Vec3> anchor_burgers_;
    Vec2 anchor_x0_ = Vec2::Zero();
};

struct Violation {
    std::string code;
    std::string message;
    std::vector<std::size_t> lines;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;
};

ValidationReport validate_ensemble(const DefectEnsemble& e);

// Throws InvalidEnsembleError listing every violation.
void require_valid(const DefectEnsemble& e);

// B'_k = B_k + eps_klm Omega_l (x0'_m - x0_m)
DefectEnsemble transform_reference_point(const DefectEnsemble& e, const Vec2& new_x0);

// Singular densities as coefficient lists; one term per line, in line order.
struct DefectDensities {
    ConcentratedDistribution2D theta_z;
    std::array<ConcentratedDistribution2D, 3> lambda;
    std::array<ConcentratedDistribution2D, 3> alpha;
    std::array<std::array<ConcentratedDistribution2D, 3>, 3> kappa;  // kappa[i][j]
};

DefectDensities densities_from_ensemble(const DefectEnsemble& e);

struct Window {
    Vec2 lo = Vec2::Zero();
    Vec2 hi = Vec2::Zero();

    double area() const { return (hi - lo).prod(); }
    bool contains(const Vec2& p) const {
        return p.x() >= lo.x() && p.x() <= hi.x() && p.y() >= lo.y() && p.y() <= hi.y();
    }
};

struct SummabilityReport {
    std::size_t count = 0;
    double sum_abs_frank = 0.0;
    double sum_norm_burgers = 0.0;
};

SummabilityReport summability_report(const DefectEnsemble& e, const Window& window);

} // namespace mesodefect
