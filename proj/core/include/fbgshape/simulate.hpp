#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "fbgshape/calibrate.hpp"
#include "fbgshape/reconstruct.hpp"
#include "fbgshape/types.hpp"

// Synthetic ground-truth generation. Scenarios define a signed CDM-centerline
// curvature profile kappa_cm(s'); frames are synthesized by transferring the
// curvature to the sensor path, dividing by the injected friction
// coefficient, applying the injected twist, and evaluating the forward model
// with seeded Gaussian wavelength noise.
//
// Injections are defined in the measurement domain: a noiseless synthesized
// frame solves back to exactly the injected curvature and direction. The
// lumped temperature component of the emitted frame absorbs whatever
// common-mode shift that requires; temperature changes add on top of it.

namespace fbgshape::simulate {

/// Constant-curvature calibration groove.
struct JigSpec {
    double bend_angle_deg = 90.0; // in [-90, 90]
    double arc_length_mm = 35.0;

    void validate() const;
};

/// Curvature magnitude of a jig groove, |angle| / arc length. The sign of
/// the bend is tracked separately by the caller.
double jig_curvature(const JigSpec& spec);

enum class ScenarioKind { Jig, FreeBend, ObstacleProximal, ObstacleMiddle, ObstacleDistal };

struct ScenarioSpec {
    ScenarioKind kind = ScenarioKind::Jig;
    double jig_angle_deg = 90.0;  // jig only
    double jig_arc_length_mm = 35.0;
    double cable_mm = 5.0;        // free-bend actuation surrogate, [0, 5]
    int direction = +1;           // free-bend / obstacle deflection sign
    double noise_sigma_nm = 0.0;
    int frame_count = 1;
    std::array<double, 3> friction_pos{1.0, 1.0, 1.0};
    std::array<double, 3> friction_neg{1.0, 1.0, 1.0};
    std::array<double, 3> twist_rad{0.0, 0.0, 0.0};
    std::array<double, 3> delta_t_kelvin{0.0, 0.0, 0.0};

    void validate() const;
};

/// Signed CDM curvature as a function of proximal arc length s' in [0, L].
std::function<double(double)> scenario_curvature(const ScenarioSpec& spec, const CdmConfig& cdm);

struct AaGroundTruth {
    double s_prime_mm = 0.0;        // AA arc position, proximal frame
    double kappa_cm_per_mm = 0.0;   // signed CDM curvature at the AA
    double kappa_sensor_per_mm = 0.0; // signed sensor-path curvature
    int sign = 0;
};

struct ScenarioTruth {
    reconstruct::CurvatureProfile profile; // dense-knot kappa_cm(s')
    reconstruct::CenterlinePolyline polyline; // proximal frame, step 0.01 mm
    std::array<AaGroundTruth, 3> aa{};
};

/// Ground-truth profile and reference centerline for a scenario.
ScenarioTruth scenario_profile(const ScenarioSpec& spec, const CdmConfig& cdm);

struct SynthesisResult {
    std::vector<WavelengthFrame> frames;
    ScenarioTruth truth;
};

/// Frames plus ground truth; identical (scenario, seed) pairs produce
/// byte-identical datasets. Throws StrainLimitError when the profile drives
/// a fiber past its strain limit.
SynthesisResult synthesize_frames(const ScenarioSpec& spec, const SensorGeometry& geometry,
                                  const CdmConfig& cdm, std::uint64_t seed);

/// Forward synthesis of one frame in the measurement domain: the noiseless
/// solve of the result reports exactly (kappa, psi) per active area.
struct InjectedAa {
    double kappa_per_mm = 0.0; // >= 0
    double psi_rad = 0.0;      // direction incl. deflection sign and twist
    double delta_t_kelvin = 0.0;
};
WavelengthFrame synthesize_measured_frame(const SensorGeometry& geometry,
                                          const std::array<InjectedAa, 3>& states,
                                          double timestamp_s = 0.0);

/// Deterministic cross-platform Gaussian sampler (Box-Muller over mt19937).
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}
    double sample(double sigma);

private:
    std::uint64_t next_u64();
    double next_unit();
    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// --- Calibration dataset generators --------------------------------------

/// Bare-sensor jig sweep for geometry calibration/validation. Every (angle,
/// direction-offset) pair contributes one sample; truths are the injected
/// sensor-path curvature and direction.
calibrate::CalibrationDataset geometry_jig_dataset(const SensorGeometry& geometry,
                                                   const std::vector<double>& angles_deg,
                                                   const std::vector<double>& direction_offsets_deg,
                                                   double arc_length_mm, double noise_sigma_nm,
                                                   std::uint64_t seed);

/// CDM-embedded jig sweep for friction calibration/validation: the sensor
/// path curvature is the offset transfer of the groove curvature, divided by
/// the injected per-sign coefficient. Truths are the undistorted sensor-path
/// values.
calibrate::CalibrationDataset friction_jig_dataset(const SensorGeometry& geometry,
                                                   const CdmConfig& cdm,
                                                   const std::vector<double>& angles_deg,
                                                   double arc_length_mm,
                                                   const std::array<double, 3>& friction_pos,
                                                   const std::array<double, 3>& friction_neg,
                                                   const std::array<double, 3>& twist_rad,
                                                   double noise_sigma_nm, std::uint64_t seed);

/// Straight + groove frame pair for the two-step twist measurement.
struct TwistMeasurementFrames {
    WavelengthFrame straight;
    WavelengthFrame groove;
    double groove_kappa_per_mm = 0.0;
};
TwistMeasurementFrames twist_measurement_frames(const SensorGeometry& geometry,
                                                const std::array<double, 3>& twist_rad,
                                                double groove_kappa_per_mm, double noise_sigma_nm,
                                                std::uint64_t seed);

} // namespace fbgshape::simulate
