#pragma once

#include <array>

#include "fbgshape/numerics.hpp"
#include "fbgshape/types.hpp"

// FBG measurement model.
//
// Forward: an active-area bending state (curvature kappa, bending direction
// phi, temperature change) produces fractional wavelength shifts
//   dLambda/lambda0 = K_eps * eps + K_T * dT
// with the node strains
//   eps_1j = -kappa * [z_c sin(phi) - r_1j sin(theta_1j - phi)]
//   eps_2j = -kappa * [z_c sin(phi) + r_2j sin(theta_2j + phi)]
//
// Inverse: per active area the shifts stack into Lambda_j = A_j B_j with
// B_j = (kappa sin phi, kappa cos phi, lumped temperature term); the
// minimum-norm solve B_j = A_j^+ Lambda_j yields kappa' = |(B1,B2)| and
// phi' = atan2(B1, B2). The temperature term is reported but never
// interpreted physically.

namespace fbgshape::sensing {

/// Maximum admissible fiber strain (1.5 %).
inline constexpr double kStrainLimit = 0.015;

/// Deadband below which a wavelength shift counts as no signal, nm (5 pm).
inline constexpr double kShiftDeadbandNm = 0.005;

/// Bending state of one active area (forward-model input).
struct AaState {
    double kappa_per_mm = 0.0; // >= 0
    double phi_rad = 0.0;      // normalized to (-pi, pi]
    double delta_t_kelvin = 0.0;
};

/// Raw inverse-model output for one active area.
struct AaRaw {
    double kappa_per_mm = 0.0; // >= 0 (norm of the planar components)
    double phi_rad = 0.0;      // in (-pi, pi]; 0 when kappa is 0
    double b3 = 0.0;           // lumped temperature term K_T * dT
};

enum class Deflection { Positive, Negative, Straight };

/// Per-active-area estimate before and after friction/twist compensation.
struct AaEstimate {
    AaRaw raw;
    double kappa_per_mm = 0.0; // C_j * raw.kappa
    double phi_rad = 0.0;      // raw.phi - twist offset, wrapped
    Deflection deflection = Deflection::Straight; // sign used for C_j selection
};

/// Axial strain of one FBG node under the given state (fiber, aa are
/// 1-based). Throws StrainLimitError when |eps| exceeds the fiber limit.
double node_strain(const SensorGeometry& geometry, int aa_index, int fiber, const AaState& state);

/// Forward model: three active-area states to one interrogator frame.
WavelengthFrame forward_wavelengths(const SensorGeometry& geometry,
                                    const std::array<AaState, 3>& states,
                                    double timestamp_s = 0.0);

/// Design matrix A_j relating (kappa sin phi, kappa cos phi, temperature
/// term) to the two fractional wavelength shifts of active area j.
numerics::Mat23 build_design_matrix(const SensorGeometry& geometry, int aa_index);

/// Minimum-norm inverse solve for one active area.
AaRaw solve_aa(const SensorGeometry& geometry, const WavelengthFrame& frame, int aa_index);

/// Per-active-area sign vote: positive when fiber 1 shifts up relative to
/// fiber 2 beyond the deadband, negative for the opposite pattern. The
/// differential form makes the vote immune to common-mode (temperature)
/// shifts; shifts without a differential component are ambiguous.
enum class AaVote { Positive, Negative, Straight, Ambiguous };
AaVote aa_sign_vote(const SensorGeometry& geometry, const WavelengthFrame& frame, int aa_index,
                    double deadband_nm = kShiftDeadbandNm);

/// Majority vote over the three active areas; tied votes fall back to the
/// larger summed differential. All nodes inside the deadband mean Straight;
/// contradictory signs in every active area raise NumericError (ambiguous
/// signal).
Deflection classify_deflection(const SensorGeometry& geometry, const WavelengthFrame& frame,
                               double deadband_nm = kShiftDeadbandNm);

/// Applies friction coefficients and twist offsets. The coefficient column
/// (positive/negative) is selected per active area from its own sign vote,
/// falling back to the frame-level deflection for undecided areas; straight
/// areas keep C = 1.
std::array<AaEstimate, 3> compensate(const std::array<AaRaw, 3>& raw,
                                     const CalibrationSet& calibration, Deflection deflection,
                                     const std::array<AaVote, 3>& votes);

/// Convenience: solve, classify and compensate a whole frame.
struct FrameEstimate {
    std::array<AaEstimate, 3> aa;
    Deflection deflection = Deflection::Straight;
};
FrameEstimate estimate_frame(const SensorGeometry& geometry, const CalibrationSet& calibration,
                             const WavelengthFrame& frame);

} // namespace fbgshape::sensing
