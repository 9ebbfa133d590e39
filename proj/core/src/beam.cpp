#include "fbgshape/beam.hpp"

#include <cmath>
#include <cstdlib>

namespace fbgshape::beam {

namespace {

const MaterialComponent& find(const std::array<MaterialComponent, 4>& materials, MaterialRole role) {
    for (const MaterialComponent& m : materials)
        if (m.role == role) return m;
    throw InvariantError("cross-section: missing material '" + to_string(role) + "'");
}

} // namespace

void CrossSection::validate() const {
    double area = 0.0;
    double weighted_area = 0.0;
    double moment_y = 0.0;
    for (const PlacedComponent& c : components) {
        area += c.area_mm2;
        weighted_area += c.youngs_modulus_gpa * c.area_mm2;
        moment_y += c.youngs_modulus_gpa * c.area_mm2 * c.center_y_mm;
    }
    if (!(area > 0.0))
        throw InvariantError("cross-section: total area must be positive");
    if (!(weighted_area > 0.0))
        throw InvariantError("cross-section: modulus-weighted area must be positive");
    // Mirror symmetry in y collapses to a vanishing first moment about z.
    const double scale = std::abs(weighted_area);
    if (std::abs(moment_y) > 1e-9 * scale)
        throw InvariantError("cross-section: not symmetric about the z-axis");
}

CrossSection sensing_unit_section(const std::array<MaterialComponent, 4>& materials,
                                  double lumen_circle_radius_mm) {
    const MaterialComponent& tube = find(materials, MaterialRole::Tube);
    const MaterialComponent& rod = find(materials, MaterialRole::NitiRod);
    const MaterialComponent& fiber = find(materials, MaterialRole::Fiber);
    const MaterialComponent& lumen = find(materials, MaterialRole::Lumen);
    for (const MaterialComponent& m : materials) m.validate();

    const double r = lumen_circle_radius_mm;
    const double y_f = r * std::sin(fbgshape::deg_to_rad(60.0));
    const double z_f = 1.5 * r;

    CrossSection s;
    // Tube disc centered one lumen-circle radius above the rod frame.
    s.components.push_back({tube.youngs_modulus_gpa, tube.area_mm2(), r, 0.0});
    // Lumen removals (tube material taken out).
    s.components.push_back({tube.youngs_modulus_gpa, -lumen.area_mm2(), 0.0, 0.0});
    s.components.push_back({tube.youngs_modulus_gpa, -lumen.area_mm2(), z_f, y_f});
    s.components.push_back({tube.youngs_modulus_gpa, -lumen.area_mm2(), z_f, -y_f});
    // Occupants: NiTi rod in the frame-origin lumen, fibers in the others.
    s.components.push_back({rod.youngs_modulus_gpa, rod.area_mm2(), 0.0, 0.0});
    s.components.push_back({fiber.youngs_modulus_gpa, fiber.area_mm2(), z_f, y_f});
    s.components.push_back({fiber.youngs_modulus_gpa, fiber.area_mm2(), z_f, -y_f});
    s.validate();
    return s;
}

double neutral_axis_offset(const CrossSection& section) {
    section.validate();
    double weighted_area = 0.0;
    double moment = 0.0;
    for (const PlacedComponent& c : section.components) {
        weighted_area += c.youngs_modulus_gpa * c.area_mm2;
        moment += c.youngs_modulus_gpa * c.area_mm2 * c.center_z_mm;
    }
    if (!(weighted_area > 0.0))
        throw NumericError("neutral_axis_offset: non-positive modulus-weighted area");
    return moment / weighted_area;
}

double neutral_axis_closed_form(const std::array<MaterialComponent, 4>& materials,
                                double lumen_circle_radius_mm) {
    const MaterialComponent& tube = find(materials, MaterialRole::Tube);
    const MaterialComponent& rod = find(materials, MaterialRole::NitiRod);
    const MaterialComponent& fiber = find(materials, MaterialRole::Fiber);
    const MaterialComponent& lumen = find(materials, MaterialRole::Lumen);

    const double e_t = tube.youngs_modulus_gpa, d_t = tube.diameter_mm;
    const double e_nw = rod.youngs_modulus_gpa, d_nw = rod.diameter_mm;
    const double e_f = fiber.youngs_modulus_gpa, d_f = fiber.diameter_mm;
    const double d_l = lumen.diameter_mm;

    const double tube_term = e_t * (d_t * d_t - 3.0 * d_l * d_l);
    const double numerator = (3.0 * e_f * d_f * d_f + tube_term) * lumen_circle_radius_mm;
    const double denominator = e_nw * d_nw * d_nw + 2.0 * e_f * d_f * d_f + tube_term;
    if (!(denominator > 0.0))
        throw NumericError("neutral_axis_closed_form: non-positive denominator (degenerate materials)");
    return numerator / denominator;
}

} // namespace fbgshape::beam
