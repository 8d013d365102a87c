#include "mesodefect/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "mesodefect/canonical_fields.hpp"
#include "mesodefect/parallel.hpp"
#include "mesodefect/random.hpp"

namespace mesodefect {

StrainSource strain_source(const DefectEnsemble& e) {
    return {[e](const Vec2& x) { return ensemble_strain(e, x); }, e.feet()};
}

namespace {

std::vector<SingularPoint> singular(const std::vector<Vec2>& pts) {
    std::vector<SingularPoint> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back({p, 0.0});
    return out;
}

} // namespace

Mat3 pair_frank_tensor_all(const DefectEnsemble& e, const BumpTestFunction& phi, const QuadratureOptions& opts) {
    using V9 = Eigen::Matrix<double, 9, 1>;
    const RegionIntegrand<9> f = [&](const Vec2& x) {
        V9 out = V9::Zero();
        const Vec2 g = phi.gradient(x);
        if (g == Vec2::Zero()) return out;
        const Strain s = ensemble_strain(e, x);
        for (int m = 0; m < 3; ++m)
            for (int k = 0; k < 3; ++k)
                for (int p = 0; p < 2; ++p)
                    for (int q = 0; q < 3; ++q) {
                        const int eps = levi_civita(k, p, q);
                        if (eps != 0) out[3 * m + k] -= eps * s(q, m) * g[p];
                    }
        return out;
    };
    const auto sp = singular(e.feet());
    const auto r = integrate_region<9>(f, phi.support(), sp, opts);
    Mat3 out;
    for (int m = 0; m < 3; ++m)
        for (int k = 0; k < 3; ++k) out(m, k) = r.value[3 * m + k];
    return out;
}

double pair_frank_tensor(const DefectEnsemble& e, const BumpTestFunction& phi, int m, int k,
                         const QuadratureOptions& opts) {
    const RegionIntegrand<1> f = [&](const Vec2& x) {
        Eigen::Matrix<double, 1, 1> out(0.0);
        const Vec2 g = phi.gradient(x);
        if (g == Vec2::Zero()) return out;
        const Strain s = ensemble_strain(e, x);
        for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 3; ++q) {
                const int eps = levi_civita(k, p, q);
                if (eps != 0) out[0] -= eps * s(q, m) * g[p];
            }
        return out;
    };
    const auto sp = singular(e.feet());
    return integrate_region<1>(f, phi.support(), sp, opts).value[0];
}

std::vector<double> pair_frank_tensor_fp(const DefectEnsemble& e, const BumpTestFunction& phi, int m, int k,
                                         std::span<const double> eps_list, const QuadratureOptions& opts) {
    const Disc d = phi.support();
    std::vector<double> out;
    for (double eps : eps_list) {
        if (!(eps > 0.0)) throw std::invalid_argument("finite-part radii must be positive");
        std::vector<SingularPoint> sp;
        std::vector<Vec2> inside;
        for (const auto& p : e.feet()) {
            const double dc = (p - d.center).norm();
            if (dc < d.radius) {
                if (dc + eps >= d.radius) throw std::invalid_argument("finite-part disc crosses the support boundary");
                sp.push_back({p, eps});
                inside.push_back(p);
            } else {
                if (dc < d.radius + eps) throw std::invalid_argument("finite-part disc crosses the support boundary");
                sp.push_back({p, 0.0});
            }
        }
        const RegionIntegrand<1> f = [&](const Vec2& x) {
            Eigen::Matrix<double, 1, 1> v(0.0);
            const double ph = phi.value(x);
            if (ph == 0.0) return v;
            const StrainJet<double> j = ensemble_jet(e, x);
            for (int p = 0; p < 2; ++p)
                for (int q = 0; q < 3; ++q) {
                    const int s = levi_civita(k, p, q);
                    if (s != 0) v[0] += s * j.gradient[p](q, m) * ph;
                }
            return v;
        };
        double total = integrate_region<1>(f, d, sp, opts).value[0];

        // v . n ds on a ccw circle equals v_x dy - v_y dx
        const FormIntegrand<1> circle_form = [&](const Vec2& x) {
            Eigen::Matrix<double, 1, 2> g = Eigen::Matrix<double, 1, 2>::Zero();
            const double ph = phi.value(x);
            if (ph == 0.0) return g;
            const Strain s = ensemble_strain(e, x);
            Vec2 v = Vec2::Zero();
            for (int p = 0; p < 2; ++p)
                for (int q = 0; q < 3; ++q) {
                    const int sg = levi_civita(k, p, q);
                    if (sg != 0) v[p] += sg * s(q, m) * ph;
                }
            g(0, 0) = -v.y();
            g(0, 1) = v.x();
            return g;
        };
        for (const auto& p : inside) total += integrate_contour<1>(circle_form, CircleLoop{p, eps, true})[0];
        out.push_back(total);
    }
    return out;
}

Vec3 pair_incompatibility_all(const StrainSource& s, const BumpTestFunction& phi, const QuadratureOptions& opts) {
    const RegionIntegrand<3> f = [&](const Vec2& x) {
        Vec3 out = Vec3::Zero();
        const Eigen::Matrix2d h = phi.hessian(x);
        if (h == Eigen::Matrix2d::Zero()) return out;
        const Strain E = s.field(x);
        for (int k = 0; k < 3; ++k)
            for (int p = 0; p < 2; ++p)
                for (int n = 0; n < 3; ++n) {
                    const int e1 = levi_civita(k, p, n);
                    if (e1 == 0) continue;
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b) {
                            const int e2 = planar_levi_civita(a, b);
                            if (e2 != 0) out[k] += e1 * e2 * E(b, n) * h(p, a);
                        }
                }
        return out;
    };
    const auto sp = singular(s.singular_points);
    return integrate_region<3>(f, phi.support(), sp, opts).value;
}

double pair_incompatibility(const StrainSource& s, const BumpTestFunction& phi, int k, const QuadratureOptions& opts) {
    return pair_incompatibility_all(s, phi, opts)[k];
}

double pair_incompatibility(const DefectEnsemble& e, const BumpTestFunction& phi, int k,
                            const QuadratureOptions& opts) {
    return pair_incompatibility(strain_source(e), phi, k, opts);
}

Vec3 pair_divergence(const StrainSource& s, const BumpTestFunction& phi, const QuadratureOptions& opts) {
    const RegionIntegrand<3> f = [&](const Vec2& x) {
        Vec3 out = Vec3::Zero();
        const Vec2 g = phi.gradient(x);
        if (g == Vec2::Zero()) return out;
        const Strain E = s.field(x);
        for (int m = 0; m < 3; ++m) out[m] = -(E(m, X) * g.x() + E(m, Y) * g.y());
        return out;
    };
    const auto sp = singular(s.singular_points);
    return integrate_region<3>(f, phi.support(), sp, opts).value;
}

std::array<ConcentratedDistribution2D, 3> predicted_incompatibility(const DefectEnsemble& e) {
    std::vector<DiracTerm> terms[3];
    for (const auto& l : e.lines()) {
        const Vec2 d = l.position - e.x0();
        const double w = l.frank_z;
        // B_g + eps_bg (xhat_b - x0_b) Omega_z
        Vec2 inner;
        for (int g = 0; g < 2; ++g) {
            inner[g] = l.burgers[g];
            for (int b = 0; b < 2; ++b) {
                const int s = planar_levi_civita(b, g);
                if (s != 0) inner[g] += s * d[b] * w;
            }
        }
        DiracTerm tz{l.position, w, Vec2::Zero()};
        for (int a = 0; a < 2; ++a)
            for (int g = 0; g < 2; ++g) {
                const int s = planar_levi_civita(a, g);
                if (s != 0) tz.w1[a] += s * inner[g];
            }
        terms[Z].push_back(tz);
        // eta_kappa = 1/2 eps_ka Bz d_a delta
        for (int k = 0; k < 2; ++k) {
            DiracTerm t{l.position, 0.0, Vec2::Zero()};
            for (int a = 0; a < 2; ++a) {
                const int s = planar_levi_civita(k, a);
                if (s != 0) t.w1[a] += s * (0.5 * l.burgers.z());
            }
            terms[k].push_back(t);
        }
    }
    return {ConcentratedDistribution2D(std::move(terms[0])), ConcentratedDistribution2D(std::move(terms[1])),
            ConcentratedDistribution2D(std::move(terms[2]))};
}

std::array<ConcentratedDistribution2D, 3> incompatibility_via_contortion(const DefectDensities& d) {
    std::array<ConcentratedDistribution2D, 3> out;
    const std::size_t n = d.theta_z.terms().size();
    for (int k = 0; k < 3; ++k) {
        std::vector<DiracTerm> terms;
        terms.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            DiracTerm t{d.theta_z.terms()[i].point, k == Z ? d.theta_z.terms()[i].w0 : 0.0, Vec2::Zero()};
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const int s = planar_levi_civita(a, b);
                    if (s != 0) t.w1[a] += s * d.kappa[k][b].terms()[i].w0;
                }
            terms.push_back(t);
        }
        out[k] = ConcentratedDistribution2D(std::move(terms));
    }
    return out;
}

PairingReport compare_pairings(const std::string& label, std::span<const double> quadrature,
                               std::span<const double> predicted, const PairingTolerance& tol) {
    PairingReport r;
    r.label = label;
    r.pass = true;
    double worst = -1.0;
    for (std::size_t c = 0; c < quadrature.size(); ++c) {
        ComponentPairing cp;
        cp.component = static_cast<int>(c);
        cp.quadrature_value = quadrature[c];
        cp.predicted_value = predicted[c];
        cp.abs_error = std::abs(quadrature[c] - predicted[c]);
        const double allowed = std::max(tol.rel * std::abs(predicted[c]), tol.abs);
        cp.pass = cp.abs_error <= allowed;
        r.pass = r.pass && cp.pass;
        const double ratio = cp.abs_error / allowed;
        if (!(ratio <= worst)) {
            worst = ratio;
            r.quadrature_value = cp.quadrature_value;
            r.predicted_value = cp.predicted_value;
            r.abs_error = cp.abs_error;
            r.rel_error = predicted[c] != 0.0 ? cp.abs_error / std::abs(predicted[c])
                                              : (cp.abs_error == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
            r.tolerance = allowed;
        }
        r.components.push_back(cp);
    }
    return r;
}

PairingReport inconclusive_report(const std::string& label, const std::string& why, const PairingTolerance& tol) {
    PairingReport r;
    r.label = label;
    r.inconclusive = true;
    r.diagnostic = why;
    r.tolerance = tol.abs;
    return r;
}

std::vector<PairingReport> verify_main_theorem(const DefectEnsemble& e, std::span<const BumpTestFunction> suite,
                                               const PairingTolerance& tol, const QuadratureOptions& opts) {
    require_valid(e);
    const auto predicted = predicted_incompatibility(e);
    const StrainSource s = strain_source(e);
    return parallel_map<PairingReport>(suite.size(), [&](std::size_t i) {
        std::ostringstream label;
        label << "main_theorem[" << i << "]";
        try {
            const Vec3 q = pair_incompatibility_all(s, suite[i], opts);
            const auto p = actions(predicted, suite[i]);
            return compare_pairings(label.str(), std::span<const double>(q.data(), 3), p, tol);
        } catch (const QuadratureError& err) {
            return inconclusive_report(label.str(), err.what(), tol);
        }
    });
}

std::vector<BumpTestFunction> auto_bump_suite(const DefectEnsemble& e, std::size_t count, std::uint64_t seed) {
    Vec2 lo = e.x0(), hi = e.x0();
    if (!e.empty()) {
        lo = hi = e.line(0).position;
        for (const auto& l : e.lines()) {
            lo = lo.cwiseMin(l.position);
            hi = hi.cwiseMax(l.position);
        }
    }
    lo.array() -= 1.0;
    hi.array() += 1.0;
    Rng rng(seed);
    std::vector<BumpTestFunction> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double x = rng.uniform(lo.x(), hi.x());
        const double y = rng.uniform(lo.y(), hi.y());
        const double r = rng.uniform(0.3, 1.0);
        out.emplace_back(Vec2(x, y), r, 1.0);
    }
    return out;
}

CompatibilityConstants compatibility_constants(const StrainJetFn& field, std::span<const Vec2> samples) {
    if (samples.size() < 3) throw std::invalid_argument("at least three samples are needed");
    CompatibilityConstants c;
    std::vector<double> ks;
    Eigen::MatrixXd A(samples.size(), 3);
    Eigen::VectorXd rhs(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto j = field(samples[i]);
        ks.push_back(screw_compatibility_residual(j));
        A.row(i) << 1.0, samples[i].x(), samples[i].y();
        rhs[i] = j.value(Z, Z);
    }
    const auto [kmin, kmax] = std::minmax_element(ks.begin(), ks.end());
    if (*kmax - *kmin > 1e-8) {
        std::ostringstream os;
        os << "eps_ab d_a E_bz is not constant: spread " << (*kmax - *kmin);
        throw InconsistentFieldError(os.str());
    }
    double k = 0.0;
    for (double v : ks) k += v;
    c.K = k / static_cast<double>(ks.size());
    const Eigen::Vector3d sol = A.colPivHouseholderQr().solve(rhs);
    const double resid = (A * sol - rhs).cwiseAbs().maxCoeff();
    if (resid > 1e-8 * std::max(1.0, rhs.cwiseAbs().maxCoeff()))
        throw InconsistentFieldError("E_zz is not affine in the plane");
    c.a = Vec2(sol[1], sol[2]);
    c.b = sol[0];
    return c;
}

CompatibilityConstants compatibility_constants(const DefectEnsemble& e, std::span<const Vec2> samples) {
    return compatibility_constants([&e](const Vec2& x) { return ensemble_jet(e, x); }, samples);
}

} // namespace mesodefect
