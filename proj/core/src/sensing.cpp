#include "fbgshape/sensing.hpp"

#include <cmath>
#include <string>

namespace fbgshape::sensing {

namespace {

void check_indices(int aa_index, int fiber) {
    if (aa_index < 1 || aa_index > 3)
        throw InvariantError("sensing: active-area index must be 1..3, got " + std::to_string(aa_index));
    if (fiber < 1 || fiber > 2)
        throw InvariantError("sensing: fiber index must be 1 or 2, got " + std::to_string(fiber));
}

double raw_strain(const SensorGeometry& g, int aa_index, int fiber, double kappa, double phi) {
    const FbgNode& n = g.node(fiber, aa_index);
    const double zc = g.z_c_mm;
    double delta; // orthogonal distance to the neutral axis
    if (fiber == 1)
        delta = zc * std::sin(phi) - n.r_mm * std::sin(n.theta_rad - phi);
    else
        delta = zc * std::sin(phi) + n.r_mm * std::sin(n.theta_rad + phi);
    return -kappa * delta;
}

} // namespace

double node_strain(const SensorGeometry& geometry, int aa_index, int fiber, const AaState& state) {
    check_indices(aa_index, fiber);
    if (!(state.kappa_per_mm >= 0.0) || !std::isfinite(state.kappa_per_mm))
        throw InvariantError("sensing: kappa must be finite and >= 0");
    const double eps = raw_strain(geometry, aa_index, fiber, state.kappa_per_mm, state.phi_rad);
    if (std::abs(eps) > kStrainLimit)
        throw StrainLimitError("strain limit exceeded at node N" + std::to_string(fiber) +
                               std::to_string(aa_index) + ": |" + std::to_string(eps) + "| > " +
                               std::to_string(kStrainLimit));
    return eps;
}

WavelengthFrame forward_wavelengths(const SensorGeometry& geometry,
                                    const std::array<AaState, 3>& states, double timestamp_s) {
    const double k_eps = geometry.strain_coefficient();
    WavelengthFrame frame;
    frame.timestamp_s = timestamp_s;
    for (int j = 1; j <= 3; ++j) {
        const AaState& st = states[size_t(j - 1)];
        const double thermal = geometry.k_t_per_kelvin * st.delta_t_kelvin;
        for (int k = 1; k <= 2; ++k) {
            const double eps = node_strain(geometry, j, k, st);
            const double lambda0 = geometry.node(k, j).lambda0_nm;
            frame.lambda(k, j) = lambda0 * (1.0 + k_eps * eps + thermal);
        }
    }
    frame.validate();
    return frame;
}

numerics::Mat23 build_design_matrix(const SensorGeometry& geometry, int aa_index) {
    check_indices(aa_index, 1);
    const double k_eps = geometry.strain_coefficient();
    const double zc = geometry.z_c_mm;
    numerics::Mat23 a;
    for (int k = 1; k <= 2; ++k) {
        const FbgNode& n = geometry.node(k, aa_index);
        const double sign = (k == 1) ? 1.0 : -1.0;
        a(k - 1, 0) = -k_eps * (zc + n.r_mm * std::cos(n.theta_rad));
        a(k - 1, 1) = sign * k_eps * n.r_mm * std::sin(n.theta_rad);
        a(k - 1, 2) = 1.0;
    }
    return a;
}

namespace {

numerics::Vec2 fractional_shifts(const SensorGeometry& g, const WavelengthFrame& frame, int j) {
    numerics::Vec2 shifts;
    for (int k = 1; k <= 2; ++k) {
        const double lambda0 = g.node(k, j).lambda0_nm;
        const double l = frame.lambda(k, j);
        if (!std::isfinite(l))
            throw NumericError("solve_aa: non-finite wavelength at fiber " + std::to_string(k));
        shifts[size_t(k - 1)] = (l - lambda0) / lambda0;
    }
    return shifts;
}

} // namespace

AaRaw solve_aa(const SensorGeometry& geometry, const WavelengthFrame& frame, int aa_index) {
    check_indices(aa_index, 1);
    const numerics::Mat23 a = build_design_matrix(geometry, aa_index);
    const numerics::Vec2 shifts = fractional_shifts(geometry, frame, aa_index);
    const numerics::Vec3 b = numerics::pinv_solve(a, shifts);

    AaRaw out;
    out.kappa_per_mm = std::hypot(b[0], b[1]);
    out.phi_rad = (out.kappa_per_mm == 0.0) ? 0.0 : std::atan2(b[0], b[1]);
    out.b3 = b[2];
    return out;
}

AaVote aa_sign_vote(const SensorGeometry& geometry, const WavelengthFrame& frame, int aa_index,
                    double deadband_nm) {
    check_indices(aa_index, 1);
    const double l01 = geometry.node(1, aa_index).lambda0_nm;
    const double l02 = geometry.node(2, aa_index).lambda0_nm;
    const double d1 = frame.lambda(1, aa_index) - l01;
    const double d2 = frame.lambda(2, aa_index) - l02;
    if (std::abs(d1) < deadband_nm && std::abs(d2) < deadband_nm) return AaVote::Straight;
    // Bending moves the fibers apart; common-mode (temperature) moves them
    // together. The sign lives in the fractional differential.
    const double diff_nm = (d1 / l01 - d2 / l02) * 0.5 * (l01 + l02);
    if (diff_nm > deadband_nm) return AaVote::Positive;
    if (diff_nm < -deadband_nm) return AaVote::Negative;
    return AaVote::Ambiguous; // signal present but carries no bending sign
}

Deflection classify_deflection(const SensorGeometry& geometry, const WavelengthFrame& frame,
                               double deadband_nm) {
    int pos = 0, neg = 0, ambiguous = 0;
    double amplitude = 0.0; // signed sum of the fractional differentials
    for (int j = 1; j <= 3; ++j) {
        const double l01 = geometry.node(1, j).lambda0_nm;
        const double l02 = geometry.node(2, j).lambda0_nm;
        const double diff = (frame.lambda(1, j) - l01) / l01 - (frame.lambda(2, j) - l02) / l02;
        switch (aa_sign_vote(geometry, frame, j, deadband_nm)) {
            case AaVote::Positive:
                ++pos;
                amplitude += diff;
                break;
            case AaVote::Negative:
                ++neg;
                amplitude += diff;
                break;
            case AaVote::Straight: break;
            case AaVote::Ambiguous: ++ambiguous; break;
        }
    }
    if (ambiguous == 3)
        throw NumericError("classify_deflection: contradictory fiber signs in every active area");
    if (pos == 0 && neg == 0) return Deflection::Straight;
    if (pos != neg) return pos > neg ? Deflection::Positive : Deflection::Negative;
    // Tied votes (e.g. an S-shape with one area at the inflection): the
    // dominant bend decides.
    if (amplitude > 0.0) return Deflection::Positive;
    if (amplitude < 0.0) return Deflection::Negative;
    throw NumericError("classify_deflection: tied sign votes, deflection undecided");
}

std::array<AaEstimate, 3> compensate(const std::array<AaRaw, 3>& raw,
                                     const CalibrationSet& calibration, Deflection deflection,
                                     const std::array<AaVote, 3>& votes) {
    std::array<AaEstimate, 3> out;
    for (size_t j = 0; j < 3; ++j) {
        Deflection local = deflection;
        if (votes[j] == AaVote::Positive) local = Deflection::Positive;
        else if (votes[j] == AaVote::Negative) local = Deflection::Negative;
        else if (votes[j] == AaVote::Straight) local = Deflection::Straight;

        double c = 1.0;
        if (local == Deflection::Positive) c = calibration.c_pos[j];
        else if (local == Deflection::Negative) c = calibration.c_neg[j];

        out[j].raw = raw[j];
        out[j].deflection = local;
        out[j].kappa_per_mm = c * raw[j].kappa_per_mm;
        out[j].phi_rad = wrap_angle(raw[j].phi_rad - calibration.twist_rad[j]);
    }
    return out;
}

FrameEstimate estimate_frame(const SensorGeometry& geometry, const CalibrationSet& calibration,
                             const WavelengthFrame& frame) {
    std::array<AaRaw, 3> raw;
    std::array<AaVote, 3> votes;
    for (int j = 1; j <= 3; ++j) {
        raw[size_t(j - 1)] = solve_aa(geometry, frame, j);
        votes[size_t(j - 1)] = aa_sign_vote(geometry, frame, j);
    }
    FrameEstimate est;
    est.deflection = classify_deflection(geometry, frame);
    est.aa = compensate(raw, calibration, est.deflection, votes);
    return est;
}

} // namespace fbgshape::sensing
