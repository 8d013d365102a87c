#include "doctest.h"
#include "support.hpp"

using namespace mesodefect;
using testing::pi;

TEST_CASE("validation accepts a screw with an off-line reference point") {
    DefectEnsemble e({{Vec2::Zero(), Vec3(0, 0, 1), 0.0}}, Vec2(1, 0));
    const auto r = validate_ensemble(e);
    CHECK(r.ok);
    CHECK(r.violations.empty());
}

TEST_CASE("validation names duplicate positions") {
    DefectEnsemble e({{Vec2(1, 1), Vec3(0, 0, 1), 0.0}, {Vec2(0, 0), Vec3(1, 0, 0), 0.0}, {Vec2(1, 1), Vec3::Zero(), 1.0}},
                     Vec2(5, 5));
    const auto r = validate_ensemble(e);
    REQUIRE_FALSE(r.ok);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].code == "duplicate position");
    CHECK(r.violations[0].lines == std::vector<std::size_t>{0, 2});
    CHECK_THROWS_AS(require_valid(e), InvalidEnsembleError);
}

TEST_CASE("validation rejects a reference point on a line and bad wedge parameters") {
    DefectEnsemble e({{Vec2(0.5, 0), Vec3(0, 0, 1), 0.0}}, Vec2(0.5, 0));
    auto r = validate_ensemble(e);
    REQUIRE_FALSE(r.ok);
    CHECK(r.violations[0].code == "reference point on line");

    DefectEnsemble w({{Vec2::Zero(), Vec3::Zero(), 1.0}}, Vec2(1, 0), WedgeParams{0.5, 1.0});
    r = validate_ensemble(w);
    REQUIRE_FALSE(r.ok);
    CHECK(r.violations[0].code == "wedge parameter out of range");
}

TEST_CASE("reference point shift of a wedge") {
    DefectEnsemble e({{Vec2::Zero(), Vec3::Zero(), 2 * pi}}, Vec2(0, 0.25));
    // measured about (0, 0.25) first; move to (1, 0.25)
    const auto t = transform_reference_point(e, Vec2(1, 0.25));
    CHECK(t.line(0).burgers.x() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(t.line(0).burgers.y() == doctest::Approx(2 * pi).epsilon(1e-15));
    CHECK(t.line(0).burgers.z() == 0.0);
    CHECK(t.x0() == Vec2(1, 0.25));
}

TEST_CASE("reference point round trip is bitwise and B.Omega is invariant") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto e = testing::random_ensemble(rng);
        const Vec2 other(rng.uniform(-3, 3), rng.uniform(-3, 3));
        const auto t = transform_reference_point(e, other);
        const auto back = transform_reference_point(t, e.x0());
        for (std::size_t i = 0; i < e.size(); ++i) {
            CHECK(back.line(i).burgers == e.line(i).burgers);
            CHECK(t.line(i).burgers.z() * t.line(i).frank_z == e.line(i).burgers.z() * e.line(i).frank_z);
        }
        CHECK(back.x0() == e.x0());
    }
}

TEST_CASE("intrinsic edge Burgers vector is the Burgers vector about the foot") {
    Rng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const auto e = testing::random_ensemble(rng);
        for (std::size_t i = 0; i < e.size(); ++i) {
            // oracle: move x0 onto (the neighbourhood of) the foot with the transform rule
            const auto at_foot = transform_reference_point(e, e.line(i).position);
            const Vec2 b = e.intrinsic_edge_burgers(i);
            CHECK((b - at_foot.line(i).burgers.head<2>()).norm() <= 1e-14);
        }
    }
}

TEST_CASE("densities of a screw at (1, 1)") {
    DefectEnsemble e({{Vec2(1, 1), Vec3(0, 0, 1), 0.0}}, Vec2::Zero());
    const auto d = densities_from_ensemble(e);
    const auto& k = d.kappa;
    CHECK(k[Z][Z].terms()[0].w0 == 0.5);
    CHECK(k[Z][Z].terms()[0].point == Vec2(1, 1));
    CHECK(k[X][X].terms()[0].w0 == -0.5);
    CHECK(k[Y][Y].terms()[0].w0 == -0.5);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) CHECK(k[i][j].terms()[0].w0 == 0.0);
    CHECK(d.lambda[Z].terms()[0].w0 == 1.0);
    CHECK(d.theta_z.terms()[0].w0 == 0.0);
}

TEST_CASE("contortion structure for random ensembles") {
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const auto e = testing::random_ensemble(rng);
        const auto d = densities_from_ensemble(e);
        for (std::size_t i = 0; i < e.size(); ++i) {
            const Vec2 dd = e.line(i).position - e.x0();
            const double w = e.line(i).frank_z;
            const Vec3 b = e.line(i).burgers;
            // alpha = Lambda - delta_ka eps_ab Theta (xhat - x0)_b
            const Vec3 alpha(b.x() - w * dd.y(), b.y() + w * dd.x(), b.z());
            for (int j = 0; j < 3; ++j) CHECK(d.alpha[j].terms()[i].w0 == doctest::Approx(alpha[j]).epsilon(1e-15));
            CHECK(d.kappa[Z][X].terms()[i].w0 == d.alpha[X].terms()[i].w0);
            CHECK(d.kappa[Z][Y].terms()[i].w0 == d.alpha[Y].terms()[i].w0);
            CHECK(d.kappa[Z][Z].terms()[i].w0 == 0.5 * d.alpha[Z].terms()[i].w0);
            CHECK(d.kappa[X][X].terms()[i].w0 == -0.5 * d.alpha[Z].terms()[i].w0);
            CHECK(d.kappa[Y][Y].terms()[i].w0 == -0.5 * d.alpha[Z].terms()[i].w0);
            CHECK(d.kappa[X][Z].terms()[i].w0 == 0.0);
        }
    }
}

TEST_CASE("summability over a window") {
    std::vector<DefectLine2D> lines;
    for (int i = 0; i < 100; ++i) lines.push_back({Vec2(0.01 * i, 0.5), Vec3(0, 0, 0.01), 0.0});
    lines.push_back({Vec2(5, 5), Vec3(0, 0, 3.0), 2.0});
    DefectEnsemble e(lines, Vec2(-1, -1));
    const auto r = summability_report(e, Window{Vec2(-0.5, 0), Vec2(1.5, 1)});
    CHECK(r.count == 100);
    CHECK(std::abs(r.sum_norm_burgers - 1.0) <= 1e-12);
    CHECK(r.sum_abs_frank == 0.0);
}
