#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "mesodefect/mesodefect.hpp"

// Trigonometric tensor fields with symbolic derivatives, for manufactured grid solutions.
namespace manufactured {

using namespace mesodefect;
using std::numbers::pi;

// a cos(2 pi (mx x + my y) / L + phase), differentiated symbolically
struct Mode {
    double a;
    int mx, my;
    double phase;
};
using Series = std::vector<Mode>;
using TensorSeries = std::array<Series, 6>;

constexpr double L = 2.0;

inline double eval(const Series& s, const Vec2& x) {
    double v = 0.0;
    for (const auto& m : s) v += m.a * std::cos(2 * pi * (m.mx * x.x() + m.my * x.y()) / L + m.phase);
    return v;
}

inline Series d(const Series& s, int axis) {
    Series out;
    for (auto m : s) {
        m.a *= 2 * pi * (axis == 0 ? m.mx : m.my) / L;
        m.phase += pi / 2;
        out.push_back(m);
    }
    return out;
}

inline Series scaled(Series s, double f) {
    for (auto& m : s) m.a *= f;
    return s;
}

inline Series operator+(Series a, const Series& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

// eps_kpm eps_lqn d_p d_q X_mn with d_z = 0
inline TensorSeries inc(const TensorSeries& x) {
    TensorSeries out;
    for (int k = 0; k < 3; ++k)
        for (int l = k; l < 3; ++l) {
            Series acc;
            for (int p = 0; p < 2; ++p)
                for (int m = 0; m < 3; ++m)
                    for (int q = 0; q < 2; ++q)
                        for (int n = 0; n < 3; ++n) {
                            const int s = levi_civita(k, p, m) * levi_civita(l, q, n);
                            if (s != 0) acc = acc + scaled(d(d(x[Strain::index(m, n)], p), q), s);
                        }
            out[Strain::index(k, l)] = acc;
        }
    return out;
}

inline GridField sample(const TensorSeries& t, int n) {
    return GridField::sample(
        n, L,
        [&](const Vec2& x) {
            Strain s;
            for (int c = 0; c < 6; ++c) s.components()[c] = eval(t[c], x);
            return s;
        },
        Vec2(-1, -1));
}

// Divergence-free symmetric potential: Airy block from A, stream function psi for the z column, free F_zz.
inline TensorSeries manufactured_potential() {
    const Series A{{0.7, 1, 2, 0.3}, {-0.4, 3, -1, 1.1}, {0.25, 2, 2, -0.6}};
    const Series psi{{0.5, 2, 1, 0.2}, {0.3, -1, 3, 0.9}};
    const Series g{{0.8, 1, 1, 0.0}, {-0.2, 0, 3, 0.4}};
    TensorSeries f;
    f[Strain::index(X, X)] = d(d(A, 1), 1);
    f[Strain::index(X, Y)] = scaled(d(d(A, 0), 1), -1);
    f[Strain::index(Y, Y)] = d(d(A, 0), 0);
    f[Strain::index(X, Z)] = d(psi, 1);
    f[Strain::index(Y, Z)] = scaled(d(psi, 0), -1);
    f[Strain::index(Z, Z)] = g;
    return f;
}

// Symmetric gradient of u = (sin(2 pi x / L) sin(2 pi y / L) + ..., ..., ...).
inline TensorSeries compatible_field() {
    const Series ux{{0.5, 1, -1, 0.0}, {-0.5, 1, 1, 0.0}};
    const Series uy{{0.3, 2, 1, 0.7}};
    const Series uz{{0.6, 1, 3, -0.2}};
    TensorSeries e;
    e[Strain::index(X, X)] = d(ux, 0);
    e[Strain::index(Y, Y)] = d(uy, 1);
    e[Strain::index(X, Y)] = scaled(d(ux, 1) + d(uy, 0), 0.5);
    e[Strain::index(X, Z)] = scaled(d(uz, 0), 0.5);
    e[Strain::index(Y, Z)] = scaled(d(uz, 1), 0.5);
    return e;
}

} // namespace manufactured
