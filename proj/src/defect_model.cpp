#include "mesodefect/defect_model.hpp"

#include <cmath>
#include <sstream>

#include "mesodefect/summation.hpp"

namespace mesodefect {

DefectEnsemble::DefectEnsemble(std::vector<DefectLine2D> lines, const Vec2& x0, WedgeParams wedge)
    : lines_(std::move(lines)), x0_(x0), wedge_(wedge), anchor_x0_(x0) {
    anchor_burgers_.reserve(lines_.size());
    for (const auto& l : lines_) anchor_burgers_.push_back(l.burgers);
}

Vec2 DefectEnsemble::intrinsic_edge_burgers(std::size_t i) const {
    const auto& l = lines_[i];
    const Vec2 d = l.position - x0_;
    // eps_bg d_b Omega: g = x picks eps_yx d_y, g = y picks eps_xy d_x
    return Vec2(l.burgers.x() - d.y() * l.frank_z, l.burgers.y() + d.x() * l.frank_z);
}

std::vector<Vec2> DefectEnsemble::feet() const {
    std::vector<Vec2> out;
    out.reserve(lines_.size());
    for (const auto& l : lines_) out.push_back(l.position);
    return out;
}

namespace {

bool finite(const Vec2& v) { return std::isfinite(v.x()) && std::isfinite(v.y()); }
bool finite(const Vec3& v) { return finite(Vec2(v.x(), v.y())) && std::isfinite(v.z()); }

} // namespace

ValidationReport validate_ensemble(const DefectEnsemble& e) {
    ValidationReport report;
    auto add = [&report](std::string code, std::string message, std::vector<std::size_t> lines) {
        report.ok = false;
        report.violations.push_back({std::move(code), std::move(message), std::move(lines)});
    };

    const auto& w = e.wedge();
    if (!(w.nu_star > -1.0 && w.nu_star < 0.5))
        add("wedge parameter out of range", "nu_star must lie in (-1, 0.5)", {});
    if (!(w.R > 0.0) || !std::isfinite(w.R))
        add("wedge parameter out of range", "R must be positive and finite", {});
    if (!finite(e.x0())) add("non-finite value", "reference point is not finite", {});

    const auto& lines = e.lines();
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (!finite(lines[i].position) || !finite(lines[i].burgers) || !std::isfinite(lines[i].frank_z)) {
            std::ostringstream os;
            os << "line " << i << " has a non-finite entry";
            add("non-finite value", os.str(), {i});
        }
    }
    for (std::size_t i = 0; i < lines.size(); ++i) {
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            if ((lines[i].position - lines[j].position).norm() <= sep_min) {
                std::ostringstream os;
                os << "lines " << i << " and " << j << " share a position";
                add("duplicate position", os.str(), {i, j});
            }
        }
        if ((lines[i].position - e.x0()).norm() <= sep_min) {
            std::ostringstream os;
            os << "reference point lies on line " << i;
            add("reference point on line", os.str(), {i});
        }
    }
    return report;
}

void require_valid(const DefectEnsemble& e) {
    const auto report = validate_ensemble(e);
    if (report.ok) return;
    std::ostringstream os;
    os << "invalid ensemble:";
    for (const auto& v : report.violations) os << " [" << v.code << "] " << v.message << ';';
    throw InvalidEnsembleError(os.str());
}

DefectEnsemble transform_reference_point(const DefectEnsemble& e, const Vec2& new_x0) {
    DefectEnsemble out = e;
    out.x0_ = new_x0;
    const Vec2 d = new_x0 - e.anchor_x0_;
    for (std::size_t i = 0; i < out.lines_.size(); ++i) {
        const Vec3& b = e.anchor_burgers_[i];
        const double w = out.lines_[i].frank_z;
        // eps_klm Omega_l d_m with Omega = (0, 0, w)
        out.lines_[i].burgers = Vec3(b.x() - w * d.y(), b.y() + w * d.x(), b.z());
    }
    return out;
}

DefectDensities densities_from_ensemble(const DefectEnsemble& e) {
    const auto& lines = e.lines();
    std::vector<DiracTerm> theta, lambda[3], alpha[3], kappa[3][3];
    for (const auto& l : lines) {
        const Vec2 d = l.position - e.x0();
        theta.push_back({l.position, l.frank_z, Vec2::Zero()});
        for (int k = 0; k < 3; ++k) lambda[k].push_back({l.position, l.burgers[k], Vec2::Zero()});

        // alpha_k = Lambda_k - delta_ka eps_ab Theta_z (xhat_b - x0_b)
        Vec3 a = l.burgers;
        a.x() -= l.frank_z * d.y();
        a.y() += l.frank_z * d.x();
        for (int k = 0; k < 3; ++k) alpha[k].push_back({l.position, a[k], Vec2::Zero()});

        // kappa_ij = delta_iz alpha_j - 1/2 alpha_z delta_ij
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                double w = (i == Z ? a[j] : 0.0) - (i == j ? 0.5 * a.z() : 0.0);
                kappa[i][j].push_back({l.position, w, Vec2::Zero()});
            }
        }
    }
    DefectDensities out;
    out.theta_z = ConcentratedDistribution2D(std::move(theta));
    for (int k = 0; k < 3; ++k) {
        out.lambda[k] = ConcentratedDistribution2D(std::move(lambda[k]));
        out.alpha[k] = ConcentratedDistribution2D(std::move(alpha[k]));
        for (int j = 0; j < 3; ++j) out.kappa[k][j] = ConcentratedDistribution2D(std::move(kappa[k][j]));
    }
    return out;
}

SummabilityReport summability_report(const DefectEnsemble& e, const Window& window) {
    SummabilityReport r;
    CompensatedSum frank, burgers;
    for (const auto& l : e.lines()) {
        if (!window.contains(l.position)) continue;
        ++r.count;
        frank.add(std::abs(l.frank_z));
        burgers.add(l.burgers.norm());
    }
    r.sum_abs_frank = frank.value();
    r.sum_norm_burgers = burgers.value();
    return r;
}

} // namespace mesodefect
