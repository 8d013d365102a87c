#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "mesodefect/concentrated.hpp"
#include "mesodefect/defect_model.hpp"
#include "mesodefect/distributions.hpp"
#include "mesodefect/quadrature.hpp"

namespace mesodefect {

// Paths and loops must stay at least this far from every line.
inline constexpr double loop_clearance = 1e-3;

struct PathState {
    Vec3 omega = Vec3::Zero();
    Vec3 b = Vec3::Zero();
    Vec3 u = Vec3::Zero();  // b + eps_klm omega_l (x_m - x0_m) at the end point
    Vec2 base_point = Vec2::Zero();
    Vec2 end_point = Vec2::Zero();
    std::vector<double> swept_angle;  // per line; fixes the homotopy class
    std::vector<int> winding;         // per line; closed paths only
};

// u = b + eps_klm omega_l (x_m - x0_m)
Vec3 displacement_from_state(const PathState& s, const Vec2& x, const Vec2& x0);

// d_l b_k = E_kl + eps_kpq (x_p - x0_p) d_l omega_q; rows l, columns k.
Mat3 burgers_tensor_field(const DefectEnsemble& e, const Vec2& x);

PathState integrate_path(const DefectEnsemble& e, const PolylinePath& path, const Vec3& omega0, const Vec3& b0,
                         const ContourOptions& opts = {});
PathState integrate_rotation(const DefectEnsemble& e, const PolylinePath& path, const Vec3& omega0,
                             const ContourOptions& opts = {});
PathState integrate_burgers_field(const DefectEnsemble& e, const PolylinePath& path, const Vec3& b0,
                                  const ContourOptions& opts = {});

struct LoopJump {
    Vec3 frank_jump = Vec3::Zero();
    Vec3 burgers_jump = Vec3::Zero();
    std::vector<int> winding;
};

LoopJump jump_around_loop(const DefectEnsemble& e, const Loop& loop, const ContourOptions& opts = {});

// Regular pointwise part plus concentrated part; concentrated[j][k] multiplies d_j of component k.
struct CompositeTensorField {
    std::function<Mat3(const Vec2&)> regular;
    std::array<std::array<ConcentratedDistribution2D, 3>, 3> concentrated;
};

CompositeTensorField completed_frank_tensor(const DefectEnsemble& e);
CompositeTensorField completed_burgers_tensor(const DefectEnsemble& e);

// Curl pairings of the completed tensors against the disclination and dislocation densities.
std::vector<PairingReport> verify_density_identities(const DefectEnsemble& e, std::span<const BumpTestFunction> suite,
                                                     const PairingTolerance& tol = {},
                                                     const QuadratureOptions& opts = {});

struct StokesReport {
    Vec3 frank_lhs = Vec3::Zero();
    Vec3 frank_rhs = Vec3::Zero();
    Vec3 burgers_lhs = Vec3::Zero();
    Vec3 burgers_rhs = Vec3::Zero();
    double abs_error = 0.0;
    bool pass = false;
};

// Loop integrals of the completed tensors against the enclosed line content.
// Only simple counterclockwise loops are accepted.
StokesReport stokes_check(const DefectEnsemble& e, const Loop& loop, double tol = 1e-8,
                          const ContourOptions& opts = {});

} // namespace mesodefect
