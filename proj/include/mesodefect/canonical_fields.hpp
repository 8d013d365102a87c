#pragma once

#include <cmath>
#include <numbers>

#include "mesodefect/defect_model.hpp"
#include "mesodefect/types.hpp"

namespace mesodefect {

// Points closer than this to a line foot are rejected by field evaluations.
inline constexpr double singular_radius = 1e-12;

namespace detail {

// Offset d = x - c with its powers and the gradients of d_x/r^2, d_y/r^2.
template <typename Scalar>
struct Offset {
    Scalar dx, dy, r2, r4;
    Scalar g1, g2;                // d_x / r^2, d_y / r^2
    Vector2<Scalar> dg1, dg2;     // their gradients

    Offset(const Vector2<Scalar>& c, const Vector2<Scalar>& x) {
        dx = x[0] - c[0];
        dy = x[1] - c[1];
        r2 = dx * dx + dy * dy;
        using std::sqrt;
        if (!(sqrt(r2) >= Scalar(singular_radius)))
            throw SingularPointError("field evaluated on a defect line");
        r4 = r2 * r2;
        g1 = dx / r2;
        g2 = dy / r2;
        dg1 = Vector2<Scalar>((dy * dy - dx * dx) / r4, -2 * dx * dy / r4);
        dg2 = Vector2<Scalar>(-2 * dx * dy / r4, (dx * dx - dy * dy) / r4);
    }
};

template <typename Scalar>
Scalar pi() { return std::numbers::pi_v<Scalar>; }

} // namespace detail

// Screw line: E_xz = -Bz dy / (4 pi r^2), E_yz = Bz dx / (4 pi r^2).
template <typename Scalar>
StrainJet<Scalar> screw_jet(Scalar bz, const Vector2<Scalar>& center, const Vector2<Scalar>& x) {
    const detail::Offset<Scalar> o(center, x);
    const Scalar s = bz / (4 * detail::pi<Scalar>());
    StrainJet<Scalar> j;
    j.value(X, Z) = -s * o.g2;
    j.value(Y, Z) = s * o.g1;
    for (int a = 0; a < 2; ++a) {
        j.gradient[a](X, Z) = -s * o.dg2[a];
        j.gradient[a](Y, Z) = s * o.dg1[a];
    }
    return j;
}

// Edge line with planar Burgers vector b (measured about its own foot).
template <typename Scalar>
StrainJet<Scalar> edge_jet(const Vector2<Scalar>& b, const Vector2<Scalar>& center,
                           const Vector2<Scalar>& x) {
    const detail::Offset<Scalar> o(center, x);
    const Scalar s = 1 / (2 * detail::pi<Scalar>());
    const Scalar bx = b[0] * s, by = b[1] * s;
    StrainJet<Scalar> j;
    j.value(X, X) = -by * o.g1 - bx * o.g2;
    j.value(X, Y) = bx * o.g1 - by * o.g2;
    j.value(Y, Y) = by * o.g1 + bx * o.g2;
    for (int a = 0; a < 2; ++a) {
        j.gradient[a](X, X) = -by * o.dg1[a] - bx * o.dg2[a];
        j.gradient[a](X, Y) = bx * o.dg1[a] - by * o.dg2[a];
        j.gradient[a](Y, Y) = by * o.dg1[a] + bx * o.dg2[a];
    }
    return j;
}

// Wedge line: planar strain
//   Omega (1-nu)/(4 pi) (log(r/R) + 1) I - Omega (1+nu)/(8 pi) [[cos2t, sin2t], [sin2t, -cos2t]]
template <typename Scalar>
StrainJet<Scalar> wedge_jet(Scalar omega, const WedgeParams& w, const Vector2<Scalar>& center,
                            const Vector2<Scalar>& x) {
    const detail::Offset<Scalar> o(center, x);
    using std::log;
    const Scalar nu = Scalar(w.nu_star);
    const Scalar a = omega * (1 - nu) / (4 * detail::pi<Scalar>());
    const Scalar b = omega * (1 + nu) / (8 * detail::pi<Scalar>());
    const Scalar L = Scalar(0.5) * log(o.r2) - log(Scalar(w.R)) + 1;
    const Scalar c2 = (o.dx * o.dx - o.dy * o.dy) / o.r2;
    const Scalar s2 = 2 * o.dx * o.dy / o.r2;
    const Vector2<Scalar> dL(o.g1, o.g2);
    const Vector2<Scalar> dc2(4 * o.dx * o.dy * o.dy / o.r4, -4 * o.dy * o.dx * o.dx / o.r4);
    const Vector2<Scalar> ds2(2 * o.dy * (o.dy * o.dy - o.dx * o.dx) / o.r4,
                              2 * o.dx * (o.dx * o.dx - o.dy * o.dy) / o.r4);
    StrainJet<Scalar> j;
    j.value(X, X) = a * L - b * c2;
    j.value(Y, Y) = a * L + b * c2;
    j.value(X, Y) = -b * s2;
    for (int k = 0; k < 2; ++k) {
        j.gradient[k](X, X) = a * dL[k] - b * dc2[k];
        j.gradient[k](Y, Y) = a * dL[k] + b * dc2[k];
        j.gradient[k](X, Y) = -b * ds2[k];
    }
    return j;
}

template <typename Scalar>
SymTensor3<Scalar> screw_strain(Scalar bz, const Vector2<Scalar>& center, const Vector2<Scalar>& x) {
    return screw_jet(bz, center, x).value;
}

template <typename Scalar>
SymTensor3<Scalar> edge_strain(const Vector2<Scalar>& b, const Vector2<Scalar>& center,
                               const Vector2<Scalar>& x) {
    return edge_jet(b, center, x).value;
}

template <typename Scalar>
SymTensor3<Scalar> wedge_strain(Scalar omega, const WedgeParams& w, const Vector2<Scalar>& center,
                                const Vector2<Scalar>& x) {
    return wedge_jet(omega, w, center, x).value;
}

// d_m omega_k = eps_kpq d_p E_qm with d_z = 0; rows m, columns k.
template <typename Scalar>
Matrix3<Scalar> frank_from_jet(const StrainJet<Scalar>& j) {
    Matrix3<Scalar> f = Matrix3<Scalar>::Zero();
    for (int m = 0; m < 3; ++m)
        for (int k = 0; k < 3; ++k)
            for (int p = 0; p < 2; ++p)
                for (int q = 0; q < 3; ++q) {
                    const int e = levi_civita(k, p, q);
                    if (e != 0) f(m, k) += Scalar(e) * j.gradient[p](q, m);
                }
    return f;
}

// Strain jet of one line of an ensemble; the edge part uses the intrinsic Burgers vector.
StrainJet<double> line_jet(const DefectEnsemble& e, std::size_t i, const Vec2& x);

StrainJet<double> ensemble_jet(const DefectEnsemble& e, const Vec2& x);
Strain ensemble_strain(const DefectEnsemble& e, const Vec2& x);
FrankTensor frank_tensor_field(const DefectEnsemble& e, const Vec2& x);

// Analytic eps_ab d_a E_bz; zero for every admissible field.
double screw_compatibility_residual(const StrainJet<double>& j);

} // namespace mesodefect
