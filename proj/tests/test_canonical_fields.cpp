#include "doctest.h"
#include "support.hpp"

using namespace mesodefect;
using testing::pi;

namespace {

std::array<Strain, 2> fd_gradient(const DefectEnsemble& e, const Vec2& x, double h = 1e-5) {
    std::array<Strain, 2> g;
    for (int a = 0; a < 2; ++a) {
        Vec2 step = Vec2::Zero();
        step[a] = h;
        g[a] = (1.0 / (2 * h)) * (ensemble_strain(e, x + step) - ensemble_strain(e, x - step));
    }
    return g;
}

// d_m omega_z = d_x E_ym - d_y E_xm, d_m omega_x = d_y E_zm, d_m omega_y = -d_x E_zm
Mat3 frank_oracle(const std::array<Strain, 2>& g) {
    Mat3 f;
    for (int m = 0; m < 3; ++m) {
        f(m, Z) = g[0](Y, m) - g[1](X, m);
        f(m, X) = g[1](Z, m);
        f(m, Y) = -g[0](Z, m);
    }
    return f;
}

double min_distance(const DefectEnsemble& e, const Vec2& x) {
    double d = 1e300;
    for (const auto& l : e.lines()) d = std::min(d, (l.position - x).norm());
    return d;
}

} // namespace

TEST_CASE("screw strain at (0, 1)") {
    const Strain s = screw_strain(4 * pi, Vec2(0, 0), Vec2(0, 1));
    CHECK(s(X, Z) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(s(Y, Z) == doctest::Approx(0.0));
    CHECK(s(X, X) == 0.0);
    CHECK(s(Z, Z) == 0.0);
}

TEST_CASE("edge strain at (1, 0)") {
    const Strain s = edge_strain(Vec2(0, 2 * pi), Vec2(0, 0), Vec2(1, 0));
    CHECK(s(X, X) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(s(Y, Y) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s(X, Y) == doctest::Approx(0.0));
}

TEST_CASE("edge strain with a B_x component") {
    // B_x / (2 pi r^2) [[-dy, dx], [dx, dy]] at (0.3, 0.4)
    const Vec2 x(0.3, 0.4);
    const Strain s = edge_strain(Vec2(1.5, 0), Vec2(0, 0), x);
    const double k = 1.5 / (2 * pi * 0.25);
    CHECK(s(X, X) == doctest::Approx(-k * 0.4).epsilon(1e-14));
    CHECK(s(X, Y) == doctest::Approx(k * 0.3).epsilon(1e-14));
    CHECK(s(Y, Y) == doctest::Approx(k * 0.4).epsilon(1e-14));
}

TEST_CASE("wedge strain at (1, 0)") {
    const Strain s = wedge_strain(8 * pi, WedgeParams{1.0 / 3.0, 1.0}, Vec2(0, 0), Vec2(1, 0));
    CHECK(s(X, X) == doctest::Approx(0.0).epsilon(1e-14).scale(1.0));
    CHECK(s(Y, Y) == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
    CHECK(s(X, Y) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("evaluation on a line is rejected") {
    CHECK_THROWS_AS(screw_strain(1.0, Vec2(0, 0), Vec2(1e-13, 0)), SingularPointError);
    DefectEnsemble e({{Vec2(1, 2), Vec3(1, 0, 0), 0.0}}, Vec2::Zero());
    CHECK_THROWS_AS(ensemble_strain(e, Vec2(1, 2)), SingularPointError);
    CHECK_NOTHROW(ensemble_strain(e, Vec2(1, 2 + 1e-11)));
}

TEST_CASE("Frank tensor matches the closed forms") {
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        const double r = rng.uniform(0.2, 2.0), t = rng.uniform(-pi, pi);
        const Vec2 x(r * std::cos(t), r * std::sin(t));
        const double bz = rng.uniform(-1, 1), w = rng.uniform(-1, 1);

        const Mat3 fs = frank_tensor_field(testing::single_line(Vec2::Zero(), Vec3(0, 0, bz), 0, Vec2(5, 5)), x);
        Mat3 screw = Mat3::Zero();
        screw(0, 0) = std::cos(2 * t);
        screw(0, 1) = std::sin(2 * t);
        screw(1, 0) = std::sin(2 * t);
        screw(1, 1) = -std::cos(2 * t);
        screw *= -bz / (4 * pi * r * r);
        CHECK((fs - screw).cwiseAbs().maxCoeff() <= 1e-13);

        // the intrinsic edge part of a displaced wedge adds nothing to the Frank tensor
        const Mat3 fw = frank_tensor_field(testing::single_line(Vec2::Zero(), Vec3::Zero(), w, Vec2(5, 5)), x);
        Mat3 wedge = Mat3::Zero();
        wedge(0, 2) = std::sin(t);
        wedge(1, 2) = -std::cos(t);
        wedge *= -w / (2 * pi * r);
        CHECK((fw - wedge).cwiseAbs().maxCoeff() <= 1e-13);

        const Vec2 b(rng.uniform(-1, 1), rng.uniform(-1, 1));
        const Mat3 fe = frank_tensor_field(testing::single_line(Vec2::Zero(), Vec3(b.x(), b.y(), 0), 0, Vec2(5, 5)), x);
        CHECK(fe.cwiseAbs().maxCoeff() <= 1e-14);
    }
}

TEST_CASE("Frank tensor agrees with finite differences of the strain") {
    Rng rng(4);
    int checked = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto e = testing::random_ensemble(rng);
        for (int k = 0; k < 10; ++k) {
            const Vec2 x(rng.uniform(-3, 3), rng.uniform(-3, 3));
            if (min_distance(e, x) < 0.5) continue;
            const Mat3 analytic = frank_tensor_field(e, x);
            const Mat3 fd = frank_oracle(fd_gradient(e, x));
            const double scale = std::max(analytic.cwiseAbs().maxCoeff(), 1e-3);
            CHECK((analytic - fd).cwiseAbs().maxCoeff() <= 1e-6 * scale);
            ++checked;
        }
    }
    CHECK(checked > 50);
}

TEST_CASE("screw part is curl free away from the lines") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto e = testing::random_ensemble(rng);
        for (int k = 0; k < 10; ++k) {
            const Vec2 x(rng.uniform(-3, 3), rng.uniform(-3, 3));
            if (min_distance(e, x) < 1e-3) continue;
            CHECK(std::abs(screw_compatibility_residual(ensemble_jet(e, x))) <= 1e-8);
        }
    }
}

TEST_CASE("no visible branch cut") {
    const auto e = testing::single_line(Vec2::Zero(), Vec3(0.3, -0.2, 0.7), 0.9, Vec2(0.5, 0.5));
    for (double x : {-0.5, -1.0, -2.0}) {
        const Strain a = ensemble_strain(e, Vec2(x, 1e-12));
        const Strain b = ensemble_strain(e, Vec2(x, -1e-12));
        CHECK((a - b).max_abs() <= 1e-10);
        const Mat3 fa = frank_tensor_field(e, Vec2(x, 1e-12));
        const Mat3 fb = frank_tensor_field(e, Vec2(x, -1e-12));
        CHECK((fa - fb).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("long double instantiation agrees with double") {
    const Vector2<long double> c(0.1L, -0.2L), x(0.7L, 0.4L);
    const auto jl = wedge_jet<long double>(0.8L, WedgeParams{}, c, x);
    const auto jd = wedge_jet<double>(0.8, WedgeParams{}, c.cast<double>(), x.cast<double>());
    for (int i = 0; i < 6; ++i) {
        CHECK(static_cast<double>(jl.value.components()[i]) == doctest::Approx(jd.value.components()[i]).epsilon(1e-14));
        CHECK(static_cast<double>(jl.gradient[1].components()[i]) ==
              doctest::Approx(jd.gradient[1].components()[i]).epsilon(1e-14));
    }
}

TEST_CASE("strain is unchanged by a reference point shift") {
    Rng rng(6);
    for (int trial = 0; trial < 10; ++trial) {
        const auto e = testing::random_ensemble(rng);
        const auto t = transform_reference_point(e, Vec2(rng.uniform(-3, 3), rng.uniform(-3, 3)));
        const Vec2 x(3.5, -3.5);
        CHECK((ensemble_strain(e, x) - ensemble_strain(t, x)).max_abs() <= 1e-13);
    }
}
