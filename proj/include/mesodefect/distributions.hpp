#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mesodefect/concentrated.hpp"
#include "mesodefect/defect_model.hpp"
#include "mesodefect/quadrature.hpp"

namespace mesodefect {

// A strain field together with the points where it is singular.
struct StrainSource {
    std::function<Strain(const Vec2&)> field;
    std::vector<Vec2> singular_points;
};

StrainSource strain_source(const DefectEnsemble& e);

// <d_m omega_k, phi> = -int eps_kpq E_qm d_p phi dA
double pair_frank_tensor(const DefectEnsemble& e, const BumpTestFunction& phi, int m, int k,
                         const QuadratureOptions& opts = {});
Mat3 pair_frank_tensor_all(const DefectEnsemble& e, const BumpTestFunction& phi, const QuadratureOptions& opts = {});

// Finite-part sequence: region integral of eps_kpq d_p E_qm phi outside eps-discs around
// the lines, plus circle terms of eps_kpq E_qm phi against the outward tube normal.
std::vector<double> pair_frank_tensor_fp(const DefectEnsemble& e, const BumpTestFunction& phi, int m, int k,
                                         std::span<const double> eps, const QuadratureOptions& opts = {});

// <eta_k, phi> = int eps_kpn eps_ab E_bn d_p d_a phi dA
Vec3 pair_incompatibility_all(const StrainSource& s, const BumpTestFunction& phi, const QuadratureOptions& opts = {});
double pair_incompatibility(const StrainSource& s, const BumpTestFunction& phi, int k,
                            const QuadratureOptions& opts = {});
double pair_incompatibility(const DefectEnsemble& e, const BumpTestFunction& phi, int k,
                            const QuadratureOptions& opts = {});

// <div_m T, phi> = -int T_mn d_n phi dA, returned for m = x, y, z.
Vec3 pair_divergence(const StrainSource& s, const BumpTestFunction& phi, const QuadratureOptions& opts = {});

std::array<ConcentratedDistribution2D, 3> predicted_incompatibility(const DefectEnsemble& e);

// eta_k = delta_zk Theta_z + eps_ab d_a kappa_kb, evaluated on coefficient lists.
std::array<ConcentratedDistribution2D, 3> incompatibility_via_contortion(const DefectDensities& d);

template <std::size_t N>
std::array<double, N> actions(const std::array<ConcentratedDistribution2D, N>& t, const BumpTestFunction& phi) {
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = t[i].action(phi);
    return out;
}

struct PairingTolerance {
    double rel = 1e-4;
    double abs = 1e-6;
};

struct ComponentPairing {
    int component = 0;
    double quadrature_value = 0.0;
    double predicted_value = 0.0;
    double abs_error = 0.0;
    bool pass = false;
};

struct PairingReport {
    std::string label;
    double quadrature_value = 0.0;  // worst component
    double predicted_value = 0.0;
    double abs_error = 0.0;
    double rel_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool inconclusive = false;
    std::string diagnostic;
    std::vector<ComponentPairing> components;
};

// pass iff |quad - pred| <= max(rel |pred|, abs) for every component.
PairingReport compare_pairings(const std::string& label, std::span<const double> quadrature,
                               std::span<const double> predicted, const PairingTolerance& tol);
PairingReport inconclusive_report(const std::string& label, const std::string& why, const PairingTolerance& tol);

std::vector<PairingReport> verify_main_theorem(const DefectEnsemble& e, std::span<const BumpTestFunction> suite,
                                               const PairingTolerance& tol = {},
                                               const QuadratureOptions& opts = {});

// Bumps with centres uniform in the line bounding box inflated by 1 and radii
// uniform in [0.3, 1.0], from a 64-bit seeded generator.
std::vector<BumpTestFunction> auto_bump_suite(const DefectEnsemble& e, std::size_t count, std::uint64_t seed);

// Constants of a compatible field: eps_ab d_a E_bz = K and E_zz = a . x + b.
struct CompatibilityConstants {
    double K = 0.0;
    Vec2 a = Vec2::Zero();
    double b = 0.0;
};

using StrainJetFn = std::function<StrainJet<double>(const Vec2&)>;

CompatibilityConstants compatibility_constants(const StrainJetFn& field, std::span<const Vec2> samples);
CompatibilityConstants compatibility_constants(const DefectEnsemble& e, std::span<const Vec2> samples);

} // namespace mesodefect
