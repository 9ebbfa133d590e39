#include "fbgshape/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fbgshape/numerics.hpp"

namespace fbgshape::reconstruct {

namespace {

constexpr double kMaxResidualDirectionRad = 10.0 * kPi / 180.0;

struct OdeState {
    double theta;
    double x;
    double y;
};

// One classic RK4 step of theta' = kappa(s), x' = sin theta, y' = cos theta.
OdeState rk4_step(const CurvatureProfile& profile, const OdeState& s0, double s, double h) {
    auto deriv = [&](double arc, const OdeState& st) {
        return OdeState{profile.kappa(arc), std::sin(st.theta), std::cos(st.theta)};
    };
    auto advance = [](const OdeState& st, const OdeState& d, double f) {
        return OdeState{st.theta + f * d.theta, st.x + f * d.x, st.y + f * d.y};
    };
    const OdeState k1 = deriv(s, s0);
    const OdeState k2 = deriv(s + 0.5 * h, advance(s0, k1, 0.5 * h));
    const OdeState k3 = deriv(s + 0.5 * h, advance(s0, k2, 0.5 * h));
    const OdeState k4 = deriv(s + h, advance(s0, k3, h));
    OdeState out = s0;
    out.theta += h / 6.0 * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta);
    out.x += h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
    out.y += h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
    return out;
}

} // namespace

CurvatureProfile::CurvatureProfile(numerics::Spline1D kappa, numerics::Spline1D phi)
    : kappa_(std::move(kappa)), phi_(std::move(phi)) {}

CurvatureProfile CurvatureProfile::from_signed_knots(std::vector<double> arc_mm,
                                                     std::vector<double> kappa_signed,
                                                     std::vector<double> phi_rad) {
    numerics::Spline1D k = numerics::Spline1D::fit(arc_mm, std::move(kappa_signed));
    numerics::Spline1D p = numerics::Spline1D::fit(std::move(arc_mm), std::move(phi_rad));
    return CurvatureProfile(std::move(k), std::move(p));
}

CurvatureProfile CurvatureProfile::from_estimates(const std::array<sensing::AaEstimate, 3>& aa,
                                                  const CdmConfig& cdm) {
    std::vector<double> s(cdm.aa_arc_positions_mm.begin(), cdm.aa_arc_positions_mm.end());
    std::vector<double> kappa(3), phi(3);
    for (size_t j = 0; j < 3; ++j) {
        if (aa[j].kappa_per_mm < 0.0)
            throw InvariantError("profile: compensated kappa must be >= 0");
        const double dir = std::cos(aa[j].phi_rad) >= 0.0 ? 1.0 : -1.0;
        const double residual = wrap_angle(aa[j].phi_rad - (dir > 0.0 ? 0.0 : kPi));
        if (std::abs(residual) > kMaxResidualDirectionRad)
            throw GeometryError("profile: residual bending direction " +
                                std::to_string(rad_to_deg(residual)) + " deg at AA" +
                                std::to_string(j + 1) + " exceeds the planar tolerance");
        kappa[j] = dir * aa[j].kappa_per_mm;
        phi[j] = residual;
    }
    return from_signed_knots(std::move(s), std::move(kappa), std::move(phi));
}

double CenterlinePolyline::arc_at(size_t i) const {
    if (i + 1 >= points.size()) return total_arc_mm;
    return double(i) * step_mm;
}

double CenterlinePolyline::measured_length() const {
    double len = 0.0;
    for (size_t i = 1; i < points.size(); ++i)
        len += std::hypot(points[i].x - points[i - 1].x, points[i].y - points[i - 1].y);
    return len;
}

CenterlinePolyline integrate_centerline(const CurvatureProfile& profile, double arc_span_mm,
                                        double theta0, double x0, double y0, double step_mm,
                                        CenterlineFrame frame) {
    if (!(arc_span_mm > 0.0)) throw InvariantError("integrate_centerline: arc span must be > 0");
    if (!(step_mm > 0.0)) throw InvariantError("integrate_centerline: step must be > 0");

    CenterlinePolyline line;
    line.frame = frame;
    line.step_mm = step_mm;
    line.total_arc_mm = arc_span_mm;

    OdeState st{theta0, x0, y0};
    double s = 0.0;
    line.points.push_back({st.x * std::cos(profile.phi(0.0)), st.y});
    while (s < arc_span_mm - 1e-12) {
        const double h = std::min(step_mm, arc_span_mm - s);
        st = rk4_step(profile, st, s, h);
        s += h;
        line.points.push_back({st.x * std::cos(profile.phi(s)), st.y});
    }
    return line;
}

CenterlineState centerline_state_at(const CurvatureProfile& profile, double s_mm, double theta0,
                                    double x0, double y0, double step_mm) {
    OdeState st{theta0, x0, y0};
    double s = 0.0;
    while (s < s_mm - 1e-12) {
        const double h = std::min(step_mm, s_mm - s);
        st = rk4_step(profile, st, s, h);
        s += h;
    }
    return {st.x * std::cos(profile.phi(s_mm)), st.y, st.theta};
}

std::array<Point2, 3> transfer_aa_to_cdm(const CurvatureProfile& profile, const CdmConfig& cdm,
                                         double step_mm) {
    const double d = cdm.d_offset_mm;
    std::array<Point2, 3> out;
    for (size_t j = 0; j < 3; ++j) {
        const double s_j = cdm.aa_arc_positions_mm[j];
        const CenterlineState aa = centerline_state_at(profile, s_j, 0.0, 0.0, 0.0, step_mm);
        // CDM point sits at the fixed lateral offset -d along the local
        // cross-section x-axis; the CDM distal frame itself is offset +d.
        out[j].x = aa.x - d * std::cos(aa.theta) + d;
        out[j].y = aa.y + d * std::sin(aa.theta);
    }
    return out;
}

std::array<double, 3> aa_arclength_on_cdm(const std::array<Point2, 3>& cdm_points,
                                          const CdmConfig& cdm, double start_slope,
                                          std::optional<double> end_slope) {
    std::vector<double> ys{0.0};
    std::vector<double> xs{0.0};
    for (const Point2& p : cdm_points) {
        ys.push_back(p.y);
        xs.push_back(p.x);
    }
    for (size_t i = 1; i < ys.size(); ++i)
        if (!(ys[i] > ys[i - 1]))
            throw GeometryError("aa_arclength_on_cdm: centerline folds over (non-monotone y)");

    const numerics::Spline1D f =
        end_slope ? numerics::Spline1D::fit_clamped(ys, xs, start_slope, *end_slope)
                  : numerics::Spline1D::fit_clamped_start(ys, xs, start_slope);
    auto speed = [&](double y) { return std::sqrt(1.0 + f.derivative(y) * f.derivative(y)); };

    std::array<double, 3> s_prime;
    for (size_t j = 0; j < 3; ++j) {
        const double arc = numerics::integrate(speed, 0.0, cdm_points[j].y, 0.05);
        s_prime[j] = cdm.total_arc_length_mm - arc;
        if (s_prime[j] < 0.0 || s_prime[j] > cdm.total_arc_length_mm)
            throw GeometryError("aa_arclength_on_cdm: AA" + std::to_string(j + 1) +
                                " falls outside the CDM arc (s' = " + std::to_string(s_prime[j]) +
                                ")");
    }
    if (!(s_prime[0] > s_prime[1] && s_prime[1] > s_prime[2]))
        throw GeometryError("aa_arclength_on_cdm: mapped AA ordering is inconsistent");
    return s_prime;
}

double curvature_transfer(double kappa_per_mm, double phi_rad, double d_offset_mm) {
    const double denom = 1.0 + d_offset_mm * kappa_per_mm * std::cos(phi_rad);
    if (!(denom > 0.0))
        throw GeometryError("curvature_transfer: degenerate offset curve (1 + d k cos phi <= 0)");
    return kappa_per_mm / denom;
}

ReconstructionResult reconstruct_cdm(const WavelengthFrame& frame, const SensorGeometry& geometry,
                                     const CalibrationSet& calibration, const CdmConfig& cdm,
                                     double step_mm) {
    frame.validate();
    ReconstructionResult res;
    res.estimate = sensing::estimate_frame(geometry, calibration, frame);

    const CurvatureProfile sensor_profile =
        CurvatureProfile::from_estimates(res.estimate.aa, cdm);
    for (size_t j = 0; j < 3; ++j) {
        const double dir = std::cos(res.estimate.aa[j].phi_rad) >= 0.0 ? 1.0 : -1.0;
        res.kappa_signed[j] = dir * res.estimate.aa[j].kappa_per_mm;
        res.phi_residual[j] = wrap_angle(res.estimate.aa[j].phi_rad - (dir > 0.0 ? 0.0 : kPi));
        res.sensor_aa[j] = centerline_state_at(sensor_profile, cdm.aa_arc_positions_mm[j], 0.0,
                                               0.0, 0.0, step_mm);
    }

    res.cdm_aa = transfer_aa_to_cdm(sensor_profile, cdm, step_mm);
    // Offset curves share tangent angles at corresponding points, so the
    // fitted x = f(y) can be clamped with the known slope at the last AA.
    const double theta_last = res.sensor_aa[2].theta;
    std::optional<double> end_slope;
    if (std::abs(theta_last) < deg_to_rad(80.0)) end_slope = std::tan(theta_last);
    res.s_prime = aa_arclength_on_cdm(res.cdm_aa, cdm, 0.0, end_slope);
    for (size_t j = 0; j < 3; ++j)
        res.kappa_cm[j] = curvature_transfer(res.kappa_signed[j], res.phi_residual[j],
                                             cdm.d_offset_mm);

    // Knots ascend toward the distal end in the proximal frame.
    std::vector<double> s{res.s_prime[2], res.s_prime[1], res.s_prime[0]};
    std::vector<double> k{res.kappa_cm[2], res.kappa_cm[1], res.kappa_cm[0]};
    std::vector<double> p{res.phi_residual[2], res.phi_residual[1], res.phi_residual[0]};
    const CurvatureProfile cdm_profile =
        CurvatureProfile::from_signed_knots(std::move(s), std::move(k), std::move(p));

    res.polyline = integrate_centerline(cdm_profile, cdm.total_arc_length_mm, 0.0, 0.0, 0.0,
                                        step_mm, CenterlineFrame::CdmProximal);
    return res;
}

} // namespace fbgshape::reconstruct
