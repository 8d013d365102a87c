#include "mesodefect/canonical_fields.hpp"

namespace mesodefect {

StrainJet<double> line_jet(const DefectEnsemble& e, std::size_t i, const Vec2& x) {
    const auto& l = e.line(i);
    StrainJet<double> j;
    if (l.burgers.z() != 0.0) j += screw_jet(l.burgers.z(), l.position, x);
    const Vec2 b = e.intrinsic_edge_burgers(i);
    if (b != Vec2::Zero()) j += edge_jet(b, l.position, x);
    if (l.frank_z != 0.0) j += wedge_jet(l.frank_z, e.wedge(), l.position, x);
    if ((x - l.position).norm() < singular_radius)
        throw SingularPointError("field evaluated on a defect line");
    return j;
}

StrainJet<double> ensemble_jet(const DefectEnsemble& e, const Vec2& x) {
    StrainJet<double> j;
    for (std::size_t i = 0; i < e.size(); ++i) j += line_jet(e, i, x);
    return j;
}

Strain ensemble_strain(const DefectEnsemble& e, const Vec2& x) { return ensemble_jet(e, x).value; }

FrankTensor frank_tensor_field(const DefectEnsemble& e, const Vec2& x) {
    return frank_from_jet(ensemble_jet(e, x));
}

double screw_compatibility_residual(const StrainJet<double>& j) {
    return j.gradient[X](Y, Z) - j.gradient[Y](X, Z);
}

} // namespace mesodefect
