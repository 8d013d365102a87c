#include "mesodefect/multivalued.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "mesodefect/canonical_fields.hpp"
#include "mesodefect/parallel.hpp"

namespace mesodefect {

namespace {

using Form6 = Eigen::Matrix<double, 6, 2>;

// Rows 0-2: d omega_k, rows 3-5: d b_k, as covectors in (dx, dy).
FormIntegrand<6> path_form(const DefectEnsemble& e) {
    return [&e](const Vec2& x) {
        const StrainJet<double> j = ensemble_jet(e, x);
        const Mat3 f = frank_from_jet(j);
        const Vec2 d = x - e.x0();
        Form6 g;
        for (int l = 0; l < 2; ++l) {
            for (int k = 0; k < 3; ++k) {
                g(k, l) = f(l, k);
                double b = j.value(k, l);
                for (int p = 0; p < 2; ++p)
                    for (int q = 0; q < 3; ++q) {
                        const int s = levi_civita(k, p, q);
                        if (s != 0) b += s * d[p] * f(l, q);
                    }
                g(3 + k, l) = b;
            }
        }
        return g;
    };
}

void check_clearance(const DefectEnsemble& e, const Loop& loop) {
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (distance_to_loop(loop, e.line(i).position) < loop_clearance) {
            std::ostringstream os;
            os << "path passes within " << loop_clearance << " of line " << i;
            throw std::invalid_argument(os.str());
        }
    }
}

// Pairs eps_ab d_a T_bk with phi for a mass-only concentrated tensor.
double curl_action(const std::array<std::array<ConcentratedDistribution2D, 3>, 3>& c, int k,
                   const BumpTestFunction& phi) {
    double s = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const int e = planar_levi_civita(a, b);
            if (e != 0) s += e * c[b][k].derivative(a).action(phi);
        }
    return s;
}

} // namespace

Vec3 displacement_from_state(const PathState& s, const Vec2& x, const Vec2& x0) {
    // u_k = b_k + eps_klm omega_l d_m with d_z = 0
    const Vec2 d = x - x0;
    const Vec3& b = s.b;
    const Vec3& w = s.omega;
    return Vec3(b.x() - w.z() * d.y(), b.y() + w.z() * d.x(), b.z() + w.x() * d.y() - w.y() * d.x());
}

Mat3 burgers_tensor_field(const DefectEnsemble& e, const Vec2& x) {
    const StrainJet<double> j = ensemble_jet(e, x);
    const Mat3 f = frank_from_jet(j);
    const Vec2 d = x - e.x0();
    Mat3 out = Mat3::Zero();
    for (int l = 0; l < 2; ++l)
        for (int k = 0; k < 3; ++k) {
            double b = j.value(k, l);
            for (int p = 0; p < 2; ++p)
                for (int q = 0; q < 3; ++q) {
                    const int s = levi_civita(k, p, q);
                    if (s != 0) b += s * d[p] * f(l, q);
                }
            out(l, k) = b;
        }
    return out;
}

PathState integrate_path(const DefectEnsemble& e, const PolylinePath& path, const Vec3& omega0, const Vec3& b0,
                         const ContourOptions& opts) {
    if (path.vertices.empty()) throw std::invalid_argument("empty path");
    check_clearance(e, Loop(path));
    const auto feet = e.feet();
    const Eigen::Matrix<double, 6, 1> delta = integrate_contour<6>(path_form(e), Loop(path), opts);
    PathState s;
    s.base_point = path.vertices.front();
    s.end_point = path.closed ? path.vertices.front() : path.vertices.back();
    s.omega = omega0 + delta.head<3>();
    s.b = b0 + delta.tail<3>();
    s.u = displacement_from_state(s, s.end_point, e.x0());
    s.swept_angle = swept_angles(path, feet);
    if (path.closed) s.winding = winding_numbers(Loop(path), feet);
    return s;
}

PathState integrate_rotation(const DefectEnsemble& e, const PolylinePath& path, const Vec3& omega0,
                             const ContourOptions& opts) {
    return integrate_path(e, path, omega0, Vec3::Zero(), opts);
}

PathState integrate_burgers_field(const DefectEnsemble& e, const PolylinePath& path, const Vec3& b0,
                                  const ContourOptions& opts) {
    return integrate_path(e, path, Vec3::Zero(), b0, opts);
}

LoopJump jump_around_loop(const DefectEnsemble& e, const Loop& loop, const ContourOptions& opts) {
    if (!is_closed(loop)) throw std::invalid_argument("jump_around_loop needs a closed loop");
    check_clearance(e, loop);
    const Eigen::Matrix<double, 6, 1> delta = integrate_contour<6>(path_form(e), loop, opts);
    LoopJump j;
    j.frank_jump = delta.head<3>();
    j.burgers_jump = delta.tail<3>();
    const auto feet = e.feet();
    j.winding = winding_numbers(loop, feet);
    return j;
}

CompositeTensorField completed_frank_tensor(const DefectEnsemble& e) {
    CompositeTensorField c;
    c.regular = [e](const Vec2& x) { return frank_tensor_field(e, x); };
    const DefectDensities d = densities_from_ensemble(e);
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) c.concentrated[j][k] = d.kappa[k][j].scaled(-1.0);
    return c;
}

CompositeTensorField completed_burgers_tensor(const DefectEnsemble& e) {
    CompositeTensorField c;
    c.regular = [e](const Vec2& x) { return burgers_tensor_field(e, x); };
    const DefectDensities d = densities_from_ensemble(e);
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            std::vector<DiracTerm> terms;
            for (std::size_t i = 0; i < e.size(); ++i) {
                const Vec2& xh = e.line(i).position;
                const Vec2 dd = xh - e.x0();
                double w = 0.0;
                for (int p = 0; p < 2; ++p)
                    for (int q = 0; q < 3; ++q) {
                        const int s = levi_civita(k, p, q);
                        if (s != 0) w -= s * dd[p] * d.kappa[q][j].terms()[i].w0;
                    }
                terms.push_back({xh, w, Vec2::Zero()});
            }
            c.concentrated[j][k] = ConcentratedDistribution2D(std::move(terms));
        }
    }
    return c;
}

std::vector<PairingReport> verify_density_identities(const DefectEnsemble& e, std::span<const BumpTestFunction> suite,
                                                     const PairingTolerance& tol, const QuadratureOptions& opts) {
    require_valid(e);
    const CompositeTensorField frank = completed_frank_tensor(e);
    const CompositeTensorField burgers = completed_burgers_tensor(e);
    const DefectDensities dens = densities_from_ensemble(e);
    const StrainSource source = strain_source(e);
    const auto feet = e.feet();
    std::vector<SingularPoint> sp;
    for (const auto& p : feet) sp.push_back({p, 0.0});

    auto one = [&](std::size_t n) {
        const BumpTestFunction& phi = suite[n];
        std::vector<PairingReport> out;
        std::ostringstream lt, ll;
        lt << "disclination_density[" << n << "]";
        ll << "dislocation_density[" << n << "]";
        try {
            // regular part of curl(d omega): -eps_ab <d_b omega_k, d_a phi>, paired through the strain
            const Vec3 q = pair_incompatibility_all(source, phi, opts);
            std::array<double, 3> lhs{}, rhs{};
            for (int k = 0; k < 3; ++k) {
                lhs[k] = q[k] + curl_action(frank.concentrated, k, phi);
                rhs[k] = k == Z ? dens.theta_z.action(phi) : 0.0;
            }
            out.push_back(compare_pairings(lt.str(), lhs, rhs, tol));
        } catch (const QuadratureError& err) {
            out.push_back(inconclusive_report(lt.str(), err.what(), tol));
        }
        try {
            const RegionIntegrand<3> f = [&](const Vec2& x) {
                Vec3 out3 = Vec3::Zero();
                const Vec2 g = phi.gradient(x);
                const Eigen::Matrix2d h = phi.hessian(x);
                if (g == Vec2::Zero() && h == Eigen::Matrix2d::Zero()) return out3;
                const Strain E = source.field(x);
                const Vec2 d = x - e.x0();
                for (int k = 0; k < 3; ++k)
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b) {
                            const int eab = planar_levi_civita(a, b);
                            if (eab == 0) continue;
                            out3[k] -= eab * E(k, b) * g[a];
                            for (int p = 0; p < 2; ++p)
                                for (int qq = 0; qq < 3; ++qq) {
                                    const int ekpq = levi_civita(k, p, qq);
                                    if (ekpq == 0) continue;
                                    for (int s = 0; s < 2; ++s)
                                        for (int t = 0; t < 3; ++t) {
                                            const int eqst = levi_civita(qq, s, t);
                                            if (eqst == 0) continue;
                                            const double dpsi = (s == p ? g[a] : 0.0) + d[p] * h(s, a);
                                            out3[k] += eab * ekpq * eqst * E(t, b) * dpsi;
                                        }
                                }
                        }
                return out3;
            };
            const Vec3 q = integrate_region<3>(f, phi.support(), sp, opts).value;
            std::array<double, 3> lhs{}, rhs{};
            for (int k = 0; k < 3; ++k) {
                lhs[k] = q[k] + curl_action(burgers.concentrated, k, phi);
                rhs[k] = dens.lambda[k].action(phi);
            }
            out.push_back(compare_pairings(ll.str(), lhs, rhs, tol));
        } catch (const QuadratureError& err) {
            out.push_back(inconclusive_report(ll.str(), err.what(), tol));
        }
        return out;
    };
    const auto per_bump = parallel_map<std::vector<PairingReport>>(suite.size(), one);
    std::vector<PairingReport> out;
    for (const auto& v : per_bump) out.insert(out.end(), v.begin(), v.end());
    return out;
}

StokesReport stokes_check(const DefectEnsemble& e, const Loop& loop, double tol, const ContourOptions& opts) {
    if (!is_closed(loop)) throw std::invalid_argument("Stokes check needs a closed loop");
    if (const auto* p = std::get_if<PolylinePath>(&loop)) {
        if (p->vertices.size() < 3 || !is_simple(*p)) throw std::invalid_argument("Stokes check needs a simple loop");
    }
    if (!(signed_area(loop) > 0.0)) throw std::invalid_argument("Stokes check needs a counterclockwise loop");
    const LoopJump j = jump_around_loop(e, loop, opts);
    StokesReport r;
    r.frank_lhs = j.frank_jump;
    r.burgers_lhs = j.burgers_jump;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (j.winding[i] != 0 && j.winding[i] != 1)
            throw std::invalid_argument("Stokes check needs winding numbers in {0, 1}");
        if (j.winding[i] == 1) {
            r.frank_rhs.z() += e.line(i).frank_z;
            r.burgers_rhs += e.line(i).burgers;
        }
    }
    r.abs_error = std::max((r.frank_lhs - r.frank_rhs).cwiseAbs().maxCoeff(),
                           (r.burgers_lhs - r.burgers_rhs).cwiseAbs().maxCoeff());
    r.pass = r.abs_error <= tol;
    return r;
}

} // namespace mesodefect
