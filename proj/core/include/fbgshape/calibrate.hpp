#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fbgshape/sensing.hpp"
#include "fbgshape/types.hpp"

// Calibration procedures: node-geometry fit, friction-coefficient fit,
// twist-offset measurement, and validation statistics against held-out
// ground truth.

namespace fbgshape::calibrate {

/// Ground truth for one active area: sensor-path curvature magnitude and
/// bending direction.
struct AaTruth {
    double kappa_per_mm = 0.0;
    double phi_rad = 0.0;
};

struct CalibrationSample {
    WavelengthFrame frame;
    std::array<AaTruth, 3> truth{};
    int sign = 0; // +1 positive deflection, -1 negative, 0 straight
};

struct CalibrationDataset {
    std::vector<CalibrationSample> samples;

    size_t count_with_sign(int sign) const;
    /// >= 2 samples per present deflection sign, finite truths.
    void validate() const;
};

struct GeometryFitOptions {
    bool shared_theta = false;   // fit one orientation per active area
    double kappa_scale = 0.05;   // curvature residual weight is 1/kappa_scale
    double tol = 1e-14;
    int max_iterations = 500;
};

/// Fits per-node radial positions and orientations by least squares on the
/// stacked (curvature, direction) residuals. Requires at least 4 distinct
/// curvature magnitudes; zero-curvature datasets raise InvariantError
/// (unobservable parameters).
SensorGeometry fit_node_geometry(const CalibrationDataset& dataset, const SensorGeometry& initial,
                                 const GeometryFitOptions& options = {});

/// Per-area, per-sign friction coefficients C_j = sum(k_gt k') / sum(k'^2)
/// (exact one-step linear least squares). Requires samples of both signs.
struct FrictionFit {
    std::array<double, 3> c_pos{1.0, 1.0, 1.0};
    std::array<double, 3> c_neg{1.0, 1.0, 1.0};
};
FrictionFit fit_friction_coeffs(const CalibrationDataset& dataset, const SensorGeometry& geometry);

/// Coefficients for a single deflection sign (used for partial updates when
/// a dataset covers only one direction).
std::array<double, 3> fit_friction_one_sign(const CalibrationDataset& dataset,
                                            const SensorGeometry& geometry, int sign);

/// Two-step twist measurement: the straight frame defines the reference
/// wavelengths, the constant-curvature groove frame is solved and the raw
/// bending directions are the per-area twist offsets. Grooves flatter than
/// 0.005 1/mm are rejected (direction poorly conditioned).
std::array<double, 3> measure_twist(const WavelengthFrame& straight_frame,
                                    const WavelengthFrame& groove_frame, double groove_kappa_per_mm,
                                    const SensorGeometry& geometry);

struct ErrorStats {
    double mean = 0.0;
    double stddev = 0.0;
    size_t count = 0;
};

struct ValidationReport {
    ErrorStats curvature;          // |kappa_model - kappa_gt|, 1/mm
    ErrorStats direction;          // wrapped |phi_model - phi_gt|, rad
    ErrorStats curvature_positive;
    ErrorStats curvature_negative;
    ErrorStats direction_positive;
    ErrorStats direction_negative;

    std::string format() const; // one line per sign, mean +- std
};

/// Absolute-error statistics of the compensated model against a held-out
/// dataset.
ValidationReport validate(const CalibrationDataset& dataset, const SensorGeometry& geometry,
                          const CalibrationSet& calibration);

} // namespace fbgshape::calibrate
