#pragma once

#include <array>
#include <optional>
#include <vector>

#include "fbgshape/sensing.hpp"
#include "fbgshape/spline.hpp"
#include "fbgshape/types.hpp"

// Centerline reconstruction.
//
// Conventions: a centerline frame has its origin at the curve start with the
// initial tangent along +y; the slope theta(s) is the tangent angle measured
// from +y toward +x, theta(s) = integral of kappa + theta0, so positive
// curvature bends toward +x. The planar bending direction is folded into the
// sign of kappa; the per-area residual direction phi stays near zero after
// twist compensation and enters the position only through cos(phi).
//
// The sensor centerline is integrated in the distal frame (arc length runs
// from the distal end to the last active area). Active areas are then mapped
// onto the CDM centerline, which is laterally offset by d_offset on the
// -x side of the sensor, and the CDM is re-integrated from its proximal
// frame over the full arc length.

namespace fbgshape::reconstruct {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// Arc-length-parameterized curvature/direction profile with cubic
/// interpolants and hold-endpoint extrapolation.
class CurvatureProfile {
public:
    /// Profile through compensated active-area estimates. Directions near pi
    /// flip the curvature sign; the residual direction must stay within
    /// 10 degrees of the bending plane or GeometryError is raised.
    static CurvatureProfile from_estimates(const std::array<sensing::AaEstimate, 3>& aa,
                                           const CdmConfig& cdm);

    /// Profile through explicitly signed curvature knots.
    static CurvatureProfile from_signed_knots(std::vector<double> arc_mm,
                                              std::vector<double> kappa_signed,
                                              std::vector<double> phi_rad);

    double kappa(double s) const { return kappa_.eval(s); }
    double phi(double s) const { return phi_.eval(s); }
    double domain_begin() const { return kappa_.front(); }
    double domain_end() const { return kappa_.back(); }
    const numerics::Spline1D& kappa_spline() const { return kappa_; }

private:
    CurvatureProfile(numerics::Spline1D kappa, numerics::Spline1D phi);
    numerics::Spline1D kappa_;
    numerics::Spline1D phi_;
};

enum class CenterlineFrame { SensorDistal, CdmProximal };

/// Ordered planar points sampled every `step` along arc length.
struct CenterlinePolyline {
    CenterlineFrame frame = CenterlineFrame::SensorDistal;
    std::vector<Point2> points;
    double step_mm = 0.0;
    double total_arc_mm = 0.0;

    double arc_at(size_t i) const;
    double measured_length() const;
    Point2 tip() const { return points.back(); }
};

/// Tangent state of the integrated curve at one arc position.
struct CenterlineState {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;
};

/// Integrates theta' = kappa(s), x' = sin(theta), y' = cos(theta) from
/// (x0, y0, theta0) over [0, arc_span]; emitted x carries the cos(phi(s))
/// factor of the planar specialization.
CenterlinePolyline integrate_centerline(const CurvatureProfile& profile, double arc_span_mm,
                                        double theta0, double x0, double y0, double step_mm,
                                        CenterlineFrame frame = CenterlineFrame::SensorDistal);

/// Curve state at a single arc position (same propagation as above).
CenterlineState centerline_state_at(const CurvatureProfile& profile, double s_mm, double theta0,
                                    double x0, double y0, double step_mm);

/// Maps the three active areas from the sensor distal frame onto the CDM
/// centerline (CDM distal frame): rotate the fixed lateral offset by the
/// local slope and shift between the parallel frames.
std::array<Point2, 3> transfer_aa_to_cdm(const CurvatureProfile& profile, const CdmConfig& cdm,
                                         double step_mm = numerics::kDefaultStepMm);

/// Arc positions of the mapped active areas in the CDM proximal frame:
/// fits x = f(y) through the distal origin and the mapped points (start
/// slope from theta at s = 0, end slope from theta at the last active area
/// when available) and integrates sqrt(1 + f'^2). Raises GeometryError on
/// fold-over (non-monotone y).
std::array<double, 3> aa_arclength_on_cdm(const std::array<Point2, 3>& cdm_points,
                                          const CdmConfig& cdm, double start_slope = 0.0,
                                          std::optional<double> end_slope = std::nullopt);

/// Offset-curve curvature transfer kappa_cm = kappa / (1 + d kappa cos phi).
/// Accepts signed curvature; throws GeometryError when the offset curve
/// degenerates (denominator <= 0).
double curvature_transfer(double kappa_per_mm, double phi_rad, double d_offset_mm);

struct ReconstructionResult {
    CenterlinePolyline polyline; // CDM centerline, proximal frame
    sensing::FrameEstimate estimate;
    std::array<double, 3> kappa_signed{};    // sensor-path signed curvature
    std::array<double, 3> phi_residual{};    // residual direction after sign fold
    std::array<CenterlineState, 3> sensor_aa{};
    std::array<Point2, 3> cdm_aa{};
    std::array<double, 3> s_prime{};         // AA arc positions, proximal frame
    std::array<double, 3> kappa_cm{};        // transferred signed curvature
};

/// Full pipeline: wavelengths to the CDM centerline in the proximal frame.
ReconstructionResult reconstruct_cdm(const WavelengthFrame& frame, const SensorGeometry& geometry,
                                     const CalibrationSet& calibration, const CdmConfig& cdm,
                                     double step_mm = numerics::kDefaultStepMm);

} // namespace fbgshape::reconstruct
