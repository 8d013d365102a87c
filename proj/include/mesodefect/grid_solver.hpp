#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "mesodefect/types.hpp"

namespace mesodefect {

// z-independent symmetric field on an n x n periodic grid covering a square cell.
// Node (ix, iy) sits at origin + (ix, iy) * cell / n; storage is row-major (iy outer).
class GridField {
public:
    GridField(int n, double cell, std::vector<Strain> values, const Vec2& origin = Vec2::Zero());

    static GridField zeros(int n, double cell, const Vec2& origin = Vec2::Zero());
    static GridField sample(int n, double cell, const std::function<Strain(const Vec2&)>& f,
                            const Vec2& origin = Vec2::Zero());
    // Rejects matrices that are not symmetric to 1e-12 relative.
    static GridField from_matrices(int n, double cell, const std::vector<Mat3>& values,
                                   const Vec2& origin = Vec2::Zero());

    int n() const { return n_; }
    double cell() const { return cell_; }
    double spacing() const { return cell_ / n_; }
    const Vec2& origin() const { return origin_; }
    Vec2 node(int ix, int iy) const { return origin_ + spacing() * Vec2(ix, iy); }

    const Strain& at(int ix, int iy) const { return values_[static_cast<std::size_t>(iy) * n_ + ix]; }
    Strain& at(int ix, int iy) { return values_[static_cast<std::size_t>(iy) * n_ + ix]; }
    const std::vector<Strain>& values() const { return values_; }

    double max_abs() const;
    GridField operator-(const GridField& o) const;

private:
    int n_;
    double cell_;
    Vec2 origin_;
    std::vector<Strain> values_;
};

struct GridDecomposition {
    GridField F;            // incompatibility potential, divergence free
    GridField compatible;   // E - solenoidal
    GridField solenoidal;   // inc F
    // max |div F| relative to max |F| * 2 pi / cell
    double gauge_residual = 0.0;
};

// Spectral solve of the biharmonic problem for F with source inc E on the periodic
// cell; the zero mode is dropped. Wavenumbers at the Nyquist index are taken as zero.
GridDecomposition decompose_grid(const GridField& E);

// Spectral eps_kpm eps_lqn d_p d_q E_mn.
GridField grid_incompatibility(const GridField& E);

// Spectral divergence d_k F_kl, returned as the three components l.
std::vector<Vec3> grid_divergence(const GridField& F);

// Text format: "# mesodefect-grid n=<n> cell=<cell> origin=<x>,<y>", a column header
// "ix,iy,x,y,xx,xy,xz,yy,yz,zz", then n*n rows, iy outer, 17 significant digits.
void write_grid_csv(std::ostream& os, const GridField& g);
GridField read_grid_csv(std::istream& is);

} // namespace mesodefect
