#pragma once

#include <span>
#include <vector>

#include "mesodefect/defect_model.hpp"
#include "mesodefect/distributions.hpp"

namespace mesodefect {

// Per-line weights of the solenoidal closed form.
struct LineWeights {
    Vec2 foot = Vec2::Zero();
    double c = 0.0;                   // screw weight, Bz / 2
    Vec2 c_planar = Vec2::Zero();     // intrinsic edge Burgers vector
    double C = 0.0;                   // Omega_z
};

std::vector<LineWeights> decomposition_weights(const DefectEnsemble& e);

// E_xz = -dF/dy, E_yz = dF/dx with F = sum c log r / (2 pi)
Strain screw_solenoidal(std::span<const LineWeights> w, const Vec2& x);
// Airy tensor [[d_yy, -d_xy], [-d_xy, d_xx]] of sum (2 log r - 1)/(8 pi) (c_y dx - c_x dy)
Strain edge_solenoidal(std::span<const LineWeights> w, const Vec2& x);
// Airy tensor of sum C r^2 (2 log r - 1) / (16 pi)
Strain wedge_solenoidal(std::span<const LineWeights> w, const Vec2& x);

Strain solenoidal_closed_form(std::span<const LineWeights> w, const Vec2& x);

// Screw sums plus canonical edge strains plus the wedge Airy part.
Strain singular_part(std::span<const LineWeights> w, const Vec2& x);

// Compatible difference between the edge Airy part and the canonical edge strains.
Strain compatible_correction(std::span<const LineWeights> w, const Vec2& x);

struct DecompositionSample {
    Strain total;        // ensemble strain
    Strain solenoidal;   // closed form
    Strain compatible;   // total - solenoidal
    Strain singular;     // singular_part
    Strain correction;   // compatible_correction
};

DecompositionSample decompose_at(const DefectEnsemble& e, const Vec2& x);

StrainSource solenoidal_source(const DefectEnsemble& e);
StrainSource compatible_source(const DefectEnsemble& e);   // total - solenoidal
StrainSource remainder_source(const DefectEnsemble& e);    // total - singular part
StrainSource correction_source(const DefectEnsemble& e);

} // namespace mesodefect
