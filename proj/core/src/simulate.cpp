#include "fbgshape/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "fbgshape/numerics.hpp"

namespace fbgshape::simulate {

namespace {

constexpr double kTruthKnotSpacingMm = 0.1;
constexpr double kTruthPolylineStepMm = 0.01;
constexpr double kFrameIntervalS = 0.01; // 100 Hz interrogator clock

int sign_of(double v, double tol = 1e-12) { return v > tol ? +1 : (v < -tol ? -1 : 0); }

} // namespace

void JigSpec::validate() const {
    if (!(std::abs(bend_angle_deg) <= 90.0))
        throw InvariantError("jig.bend_angle_deg = " + std::to_string(bend_angle_deg) +
                             " violates |angle| <= 90");
    if (!(arc_length_mm > 0.0))
        throw InvariantError("jig.arc_length_mm must be > 0");
}

double jig_curvature(const JigSpec& spec) {
    spec.validate();
    return std::abs(deg_to_rad(spec.bend_angle_deg)) / spec.arc_length_mm;
}

void ScenarioSpec::validate() const {
    if (kind == ScenarioKind::Jig) JigSpec{jig_angle_deg, jig_arc_length_mm}.validate();
    if (!(cable_mm >= 0.0 && cable_mm <= 5.0))
        throw InvariantError("scenario.cable_mm must be in [0, 5]");
    if (direction != +1 && direction != -1)
        throw InvariantError("scenario.direction must be +1 or -1");
    if (!(noise_sigma_nm >= 0.0))
        throw InvariantError("scenario.noise_sigma_nm must be >= 0");
    if (frame_count < 1)
        throw InvariantError("scenario.frame_count must be >= 1");
    for (double c : friction_pos)
        if (!(c > 0.3 && c < 2.0)) throw InvariantError("scenario friction must be in (0.3, 2.0)");
    for (double c : friction_neg)
        if (!(c > 0.3 && c < 2.0)) throw InvariantError("scenario friction must be in (0.3, 2.0)");
}

std::function<double(double)> scenario_curvature(const ScenarioSpec& spec, const CdmConfig& cdm) {
    spec.validate();
    const double arc_length = cdm.total_arc_length_mm;
    switch (spec.kind) {
        case ScenarioKind::Jig: {
            const JigSpec jig{spec.jig_angle_deg, spec.jig_arc_length_mm};
            const double k = jig_curvature(jig) * double(sign_of(spec.jig_angle_deg, 0.0));
            return [k](double) { return k; };
        }
        case ScenarioKind::FreeBend: {
            // Monotone single-sign profile: near-uniform bending with a mild
            // distal-ward rise. The base and tip plateaus cover the spans the
            // active areas cannot observe (the proximal blind zone reaches
            // s' ~ L/3 when the sensor rides the outside of the bend). Max
            // |kappa| stays below 0.05 at full actuation.
            const double amp = 0.0072 * spec.cable_mm * double(spec.direction);
            return [amp, arc_length](double s) {
                double t = std::clamp((s / arc_length - 0.34) / 0.55, 0.0, 1.0);
                const double rise = t * t * (3.0 - 2.0 * t);
                return amp * (0.85 + 0.3 * rise);
            };
        }
        case ScenarioKind::ObstacleProximal:
        case ScenarioKind::ObstacleMiddle:
        case ScenarioKind::ObstacleDistal: {
            // One saturating sign change. End-case lobes on the obstacle side
            // are shallow (the obstacle pins the segment locally while the
            // free side bends fully), so the reversal stays within the span
            // the active areas observe.
            double center = arc_length / 2.0;
            double bias = 0.0;
            double width = 6.0;
            if (spec.kind == ScenarioKind::ObstacleProximal) {
                center = 13.4 * (arc_length / 35.0);
                bias = 0.44;
                width = 3.0;
            }
            if (spec.kind == ScenarioKind::ObstacleDistal) {
                center = 21.6 * (arc_length / 35.0);
                bias = -0.44;
                width = 3.0;
            }
            const double amp = 0.016 * double(spec.direction) * (spec.cable_mm / 5.0);
            return [amp, center, width, bias](double s) {
                double t = std::clamp((s - center) / width, -1.0, 1.0);
                const double ramp = 0.5 * t * (3.0 - t * t);
                return amp * (bias + (1.0 - std::abs(bias)) * ramp);
            };
        }
    }
    throw InvariantError("scenario_curvature: unknown scenario kind");
}

namespace {

// Sensor arc length measured from the distal end as a function of CDM arc
// length from the distal end: ds = (1 - d * kappa_cm) dsigma on the offset
// path. Tabulated on a fine grid for inversion.
struct ArcMap {
    std::vector<double> sigma;
    std::vector<double> sensor_arc;

    double invert(double s) const {
        auto it = std::lower_bound(sensor_arc.begin(), sensor_arc.end(), s);
        if (it == sensor_arc.begin()) return sigma.front();
        if (it == sensor_arc.end()) return sigma.back();
        const size_t i = size_t(std::distance(sensor_arc.begin(), it));
        const double f = (s - sensor_arc[i - 1]) / (sensor_arc[i] - sensor_arc[i - 1]);
        return sigma[i - 1] + f * (sigma[i] - sigma[i - 1]);
    }
};

ArcMap build_arc_map(const std::function<double(double)>& kappa_cm, const CdmConfig& cdm) {
    const double L = cdm.total_arc_length_mm;
    const double h = 0.01;
    const size_t n = size_t(std::ceil(L / h));
    ArcMap map;
    map.sigma.resize(n + 1);
    map.sensor_arc.resize(n + 1);
    double acc = 0.0;
    double prev = 1.0 - cdm.d_offset_mm * kappa_cm(L);
    map.sigma[0] = 0.0;
    map.sensor_arc[0] = 0.0;
    for (size_t i = 1; i <= n; ++i) {
        const double sigma = std::min(double(i) * h, L);
        const double cur = 1.0 - cdm.d_offset_mm * kappa_cm(L - sigma);
        if (!(cur > 0.0))
            throw GeometryError("scenario: offset path degenerates (d * kappa >= 1)");
        acc += 0.5 * (prev + cur) * (sigma - map.sigma[i - 1]);
        prev = cur;
        map.sigma[i] = sigma;
        map.sensor_arc[i] = acc;
    }
    return map;
}

} // namespace

ScenarioTruth scenario_profile(const ScenarioSpec& spec, const CdmConfig& cdm) {
    const std::function<double(double)> kappa_cm = scenario_curvature(spec, cdm);
    const double L = cdm.total_arc_length_mm;

    std::vector<double> knots, kappa, phi;
    for (double s = 0.0; s < L + kTruthKnotSpacingMm / 2.0; s += kTruthKnotSpacingMm) {
        const double sk = std::min(s, L);
        knots.push_back(sk);
        kappa.push_back(kappa_cm(sk));
        phi.push_back(0.0);
        if (sk >= L) break;
    }

    ScenarioTruth truth{reconstruct::CurvatureProfile::from_signed_knots(knots, kappa, phi),
                        {},
                        {}};
    truth.polyline = reconstruct::integrate_centerline(truth.profile, L, 0.0, 0.0, 0.0,
                                                       kTruthPolylineStepMm,
                                                       reconstruct::CenterlineFrame::CdmProximal);

    const ArcMap arc_map = build_arc_map(kappa_cm, cdm);
    for (size_t j = 0; j < 3; ++j) {
        const double sigma_j = arc_map.invert(cdm.aa_arc_positions_mm[j]);
        const double kcm = kappa_cm(L - sigma_j);
        AaGroundTruth& aa = truth.aa[j];
        aa.s_prime_mm = L - sigma_j;
        aa.kappa_cm_per_mm = kcm;
        aa.kappa_sensor_per_mm = kcm / (1.0 - cdm.d_offset_mm * kcm);
        aa.sign = sign_of(kcm);
    }
    return truth;
}

WavelengthFrame synthesize_measured_frame(const SensorGeometry& geometry,
                                          const std::array<InjectedAa, 3>& states,
                                          double timestamp_s) {
    WavelengthFrame frame;
    frame.timestamp_s = timestamp_s;
    for (int j = 1; j <= 3; ++j) {
        const InjectedAa& st = states[size_t(j - 1)];
        if (!(st.kappa_per_mm >= 0.0))
            throw InvariantError("synthesize: injected kappa must be >= 0");
        // Strain feasibility of the injected mechanical state.
        for (int k = 1; k <= 2; ++k)
            (void)sensing::node_strain(geometry, j, k, {st.kappa_per_mm, st.psi_rad, 0.0});

        const numerics::Mat23 a = sensing::build_design_matrix(geometry, j);
        const numerics::Vec3 n = numerics::null_vector(a);
        numerics::Vec3 b;
        b[0] = st.kappa_per_mm * std::sin(st.psi_rad);
        b[1] = st.kappa_per_mm * std::cos(st.psi_rad);
        // Row-space closure: the solve of this frame reports (kappa, psi)
        // exactly; temperature rides on top as a plain common-mode term.
        b[2] = -(n[0] * b[0] + n[1] * b[1]) / n[2] +
               geometry.k_t_per_kelvin * st.delta_t_kelvin;
        for (int k = 1; k <= 2; ++k) {
            const double shift =
                a(k - 1, 0) * b[0] + a(k - 1, 1) * b[1] + a(k - 1, 2) * b[2];
            const double lambda0 = geometry.node(k, j).lambda0_nm;
            frame.lambda(k, j) = lambda0 * (1.0 + shift);
        }
    }
    frame.validate();
    return frame;
}

double GaussianSampler::sample(double sigma) {
    if (sigma == 0.0) return 0.0;
    if (have_spare_) {
        have_spare_ = false;
        return spare_ * sigma;
    }
    const double u1 = 1.0 - next_unit(); // (0, 1]
    const double u2 = next_unit();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return mag * std::cos(2.0 * kPi * u2) * sigma;
}

std::uint64_t GaussianSampler::next_u64() { return rng_(); }

double GaussianSampler::next_unit() {
    return double(next_u64() >> 11) * 0x1.0p-53;
}

namespace {

WavelengthFrame add_noise(WavelengthFrame frame, double sigma_nm, GaussianSampler& gauss) {
    for (int k = 1; k <= 2; ++k)
        for (int j = 1; j <= 3; ++j) frame.lambda(k, j) += gauss.sample(sigma_nm);
    frame.validate();
    return frame;
}

} // namespace

SynthesisResult synthesize_frames(const ScenarioSpec& spec, const SensorGeometry& geometry,
                                  const CdmConfig& cdm, std::uint64_t seed) {
    spec.validate();
    SynthesisResult out{{}, scenario_profile(spec, cdm)};

    std::array<InjectedAa, 3> injected;
    for (size_t j = 0; j < 3; ++j) {
        const AaGroundTruth& aa = out.truth.aa[j];
        double c = 1.0;
        if (aa.sign > 0) c = spec.friction_pos[j];
        if (aa.sign < 0) c = spec.friction_neg[j];
        injected[j].kappa_per_mm = std::abs(aa.kappa_sensor_per_mm) / c;
        injected[j].psi_rad = wrap_angle((aa.sign < 0 ? kPi : 0.0) + spec.twist_rad[j]);
        injected[j].delta_t_kelvin = spec.delta_t_kelvin[j];
    }

    GaussianSampler gauss(seed);
    out.frames.reserve(size_t(spec.frame_count));
    for (int i = 0; i < spec.frame_count; ++i) {
        WavelengthFrame f =
            synthesize_measured_frame(geometry, injected, double(i) * kFrameIntervalS);
        out.frames.push_back(add_noise(f, spec.noise_sigma_nm, gauss));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Calibration dataset generators
// ---------------------------------------------------------------------------

calibrate::CalibrationDataset geometry_jig_dataset(const SensorGeometry& geometry,
                                                   const std::vector<double>& angles_deg,
                                                   const std::vector<double>& direction_offsets_deg,
                                                   double arc_length_mm, double noise_sigma_nm,
                                                   std::uint64_t seed) {
    GaussianSampler gauss(seed);
    calibrate::CalibrationDataset dataset;
    double t = 0.0;
    for (double dir_deg : direction_offsets_deg) {
        for (double angle : angles_deg) {
            const JigSpec jig{angle, arc_length_mm};
            const double kappa = jig_curvature(jig);
            const double psi =
                kappa == 0.0 ? 0.0 : wrap_angle((angle < 0.0 ? kPi : 0.0) + deg_to_rad(dir_deg));
            std::array<InjectedAa, 3> st;
            st.fill({kappa, psi, 0.0});
            calibrate::CalibrationSample sample;
            sample.frame = add_noise(synthesize_measured_frame(geometry, st, t), noise_sigma_nm, gauss);
            sample.truth.fill({kappa, psi});
            sample.sign = sign_of(kappa == 0.0 ? 0.0 : (angle > 0.0 ? 1.0 : -1.0));
            dataset.samples.push_back(std::move(sample));
            t += kFrameIntervalS;
        }
    }
    return dataset;
}

calibrate::CalibrationDataset friction_jig_dataset(const SensorGeometry& geometry,
                                                   const CdmConfig& cdm,
                                                   const std::vector<double>& angles_deg,
                                                   double arc_length_mm,
                                                   const std::array<double, 3>& friction_pos,
                                                   const std::array<double, 3>& friction_neg,
                                                   const std::array<double, 3>& twist_rad,
                                                   double noise_sigma_nm, std::uint64_t seed) {
    GaussianSampler gauss(seed);
    calibrate::CalibrationDataset dataset;
    double t = 0.0;
    for (double angle : angles_deg) {
        const JigSpec jig{angle, arc_length_mm};
        const double kappa_cm = jig_curvature(jig) * double(sign_of(angle, 0.0));
        const double kappa_ss = kappa_cm / (1.0 - cdm.d_offset_mm * kappa_cm);
        const int sign = sign_of(kappa_ss);
        std::array<InjectedAa, 3> st;
        calibrate::CalibrationSample sample;
        for (size_t j = 0; j < 3; ++j) {
            double c = 1.0;
            if (sign > 0) c = friction_pos[j];
            if (sign < 0) c = friction_neg[j];
            st[j] = {std::abs(kappa_ss) / c, wrap_angle((sign < 0 ? kPi : 0.0) + twist_rad[j]), 0.0};
            sample.truth[j] = {std::abs(kappa_ss), sign < 0 ? kPi : 0.0};
        }
        sample.frame = add_noise(synthesize_measured_frame(geometry, st, t), noise_sigma_nm, gauss);
        sample.sign = sign;
        dataset.samples.push_back(std::move(sample));
        t += kFrameIntervalS;
    }
    return dataset;
}

TwistMeasurementFrames twist_measurement_frames(const SensorGeometry& geometry,
                                                const std::array<double, 3>& twist_rad,
                                                double groove_kappa_per_mm, double noise_sigma_nm,
                                                std::uint64_t seed) {
    GaussianSampler gauss(seed);
    TwistMeasurementFrames out;
    out.groove_kappa_per_mm = groove_kappa_per_mm;

    std::array<InjectedAa, 3> straight;
    straight.fill({0.0, 0.0, 0.0});
    out.straight = add_noise(synthesize_measured_frame(geometry, straight, 0.0), noise_sigma_nm, gauss);

    std::array<InjectedAa, 3> bent;
    for (size_t j = 0; j < 3; ++j) bent[j] = {groove_kappa_per_mm, twist_rad[j], 0.0};
    out.groove =
        add_noise(synthesize_measured_frame(geometry, bent, kFrameIntervalS), noise_sigma_nm, gauss);
    return out;
}

} // namespace fbgshape::simulate
