#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

#include "fbgshape/errors.hpp"

// Shared domain types and unit conventions.
//
// Units throughout the library: millimeters for length, nanometers for
// wavelength, radians for angles, GPa for moduli, kelvin for temperature.
// Curvature is therefore 1/mm. Degrees appear only at CLI/config boundaries.

namespace fbgshape {

inline constexpr double kPi = std::numbers::pi;

// Multiply/divide by the same constant so a deg -> rad -> deg trip is
// within one ulp of the input.
inline constexpr double kRadPerDeg = kPi / 180.0;
inline constexpr double deg_to_rad(double deg) { return deg * kRadPerDeg; }
inline constexpr double rad_to_deg(double rad) { return rad / kRadPerDeg; }

/// Wraps an angle to (-pi, pi].
inline double wrap_angle(double a) {
    a = std::remainder(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    return a;
}

enum class MaterialRole { Tube, NitiRod, Fiber, Lumen };

std::string to_string(MaterialRole role);

/// One material constituent of the sensing-unit cross-section.
struct MaterialComponent {
    MaterialRole role = MaterialRole::Tube;
    double youngs_modulus_gpa = 0.0; // lumens carry 0
    double diameter_mm = 0.0;
    int count = 1;

    double area_mm2() const { return kPi * diameter_mm * diameter_mm / 4.0; }
    void validate() const;
};

/// One FBG node: radial position and angular offset of the fiber core in the
/// cross-section, plus its reference (unstrained) Bragg wavelength.
struct FbgNode {
    double r_mm = 0.159;
    double theta_rad = deg_to_rad(60.848);
    double lambda0_nm = 1540.0;
};

/// Geometry and optical constants of the two-fiber, three-node sensing unit.
///
/// nodes[k][j] is the node of fiber k (0-based; fiber 1 = index 0) at active
/// area j. z_c_mm is the neutral-axis centroid offset of the composite
/// cross-section; k_t_per_kelvin is used only when synthesizing frames (the
/// inverse path lumps the temperature term away).
struct SensorGeometry {
    double z_c_mm = 0.095;
    double photoelastic_coeff = 0.22;
    double k_t_per_kelvin = 6.5e-6;
    double lumen_circle_radius_mm = 0.1328;
    std::array<std::array<FbgNode, 3>, 2> nodes{};
    std::array<MaterialComponent, 4> materials{}; // tube, NiTi rod, fiber, lumen

    /// Strain coefficient K_eps = 1 - photoelastic coefficient.
    double strain_coefficient() const { return 1.0 - photoelastic_coeff; }

    const FbgNode& node(int fiber, int aa) const { return nodes[size_t(fiber - 1)][size_t(aa - 1)]; }

    void validate() const;
};

/// Default material set of the sensing unit (polycarbonate tube, NiTi rod,
/// two fibers at cladding diameter, three lumens).
std::array<MaterialComponent, 4> default_materials();

/// Geometry with symmetric fibers per active area (shipped default).
SensorGeometry default_geometry();

enum class DeflectionSignConvention { Fiber1PositiveIsPositiveDeflection };

/// Dimensions of the continuum manipulator relevant to shape reconstruction.
struct CdmConfig {
    double total_arc_length_mm = 35.0;
    double d_offset_mm = 2.45;
    /// Active-area centers, arc length measured from the distal frame.
    std::array<double, 3> aa_arc_positions_mm{5.0, 15.0, 25.0};
    DeflectionSignConvention sign_convention =
        DeflectionSignConvention::Fiber1PositiveIsPositiveDeflection;

    void validate() const;
};

/// One interrogator sample: 2 fibers x 3 nodes of Bragg wavelengths.
struct WavelengthFrame {
    double timestamp_s = 0.0;
    std::array<std::array<double, 3>, 2> lambda_nm{};

    double lambda(int fiber, int aa) const { return lambda_nm[size_t(fiber - 1)][size_t(aa - 1)]; }
    double& lambda(int fiber, int aa) { return lambda_nm[size_t(fiber - 1)][size_t(aa - 1)]; }

    void validate() const;
};

/// Per-active-area friction coefficients (one set per deflection sign) and
/// twist offsets measured by the calibration procedures.
struct CalibrationSet {
    std::array<double, 3> c_pos{1.0, 1.0, 1.0};
    std::array<double, 3> c_neg{1.0, 1.0, 1.0};
    std::array<double, 3> twist_rad{0.0, 0.0, 0.0};

    void validate() const;
};

/// Full validated configuration: geometry + CDM dimensions + calibration.
struct SystemConfig {
    SensorGeometry geometry;
    CdmConfig cdm;
    CalibrationSet calibration;

    void validate() const;
};

} // namespace fbgshape
