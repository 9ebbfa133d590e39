#pragma once

#include <array>
#include <vector>

#include "fbgshape/types.hpp"

// Composite-beam statics of the sensing-unit cross-section.
//
// The cross-section frame {n} sits at the center of the NiTi rod with the
// z-axis pointing through the tube center; the section is symmetric about z.
// Lumens are modeled as tube-modulus material removed at their placement,
// with the rod and fiber lumens refilled by their occupants.

namespace fbgshape::beam {

struct PlacedComponent {
    double youngs_modulus_gpa = 0.0; // negative area carries the removed modulus
    double area_mm2 = 0.0;           // signed; removals are negative
    double center_z_mm = 0.0;
    double center_y_mm = 0.0;
};

struct CrossSection {
    std::vector<PlacedComponent> components;

    /// Symmetry about the z-axis (mirror pairs in y) and positive total
    /// modulus-weighted area. Throws InvariantError otherwise.
    void validate() const;
};

/// Builds the sensing-unit section from its material set: tube disc at
/// z = r, three lumen removals (rod lumen concentric with {n}, fiber lumens
/// at z = 1.5 r, y = +-r sin 60deg), rod and fibers refilled in place.
CrossSection sensing_unit_section(const std::array<MaterialComponent, 4>& materials,
                                  double lumen_circle_radius_mm);

/// Modulus-weighted centroid offset of a general section (first-moment form).
/// Throws NumericError when the weighted area is not positive.
double neutral_axis_offset(const CrossSection& section);

/// Closed-form neutral-axis offset of the standard sensing-unit assembly.
double neutral_axis_closed_form(const std::array<MaterialComponent, 4>& materials,
                                double lumen_circle_radius_mm);

} // namespace fbgshape::beam
