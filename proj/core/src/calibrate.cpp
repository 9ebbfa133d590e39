#include "fbgshape/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "fbgshape/least_squares.hpp"

namespace fbgshape::calibrate {

size_t CalibrationDataset::count_with_sign(int sign) const {
    size_t n = 0;
    for (const CalibrationSample& s : samples)
        if (s.sign == sign) ++n;
    return n;
}

void CalibrationDataset::validate() const {
    if (samples.empty()) throw InvariantError("calibration dataset is empty");
    for (const CalibrationSample& s : samples) {
        s.frame.validate();
        for (const AaTruth& t : s.truth)
            if (!std::isfinite(t.kappa_per_mm) || !std::isfinite(t.phi_rad))
                throw InvariantError("calibration dataset: non-finite truth");
    }
    for (int sign : {+1, -1}) {
        size_t n = count_with_sign(sign);
        if (n == 1)
            throw InvariantError("calibration dataset: need >= 2 samples per deflection sign");
    }
}

// ---------------------------------------------------------------------------
// Node geometry fit
// ---------------------------------------------------------------------------

namespace {

size_t distinct_curvatures(const CalibrationDataset& dataset) {
    std::set<long long> keys;
    for (const CalibrationSample& s : dataset.samples)
        keys.insert(std::llround(s.truth[0].kappa_per_mm * 1e9));
    return keys.size();
}

} // namespace

SensorGeometry fit_node_geometry(const CalibrationDataset& dataset, const SensorGeometry& initial,
                                 const GeometryFitOptions& options) {
    dataset.validate();
    if (distinct_curvatures(dataset) < 4)
        throw InvariantError("fit_node_geometry: need >= 4 distinct-curvature samples");
    bool any_bent = false;
    for (const CalibrationSample& s : dataset.samples)
        for (const AaTruth& t : s.truth)
            if (t.kappa_per_mm > 0.0) any_bent = true;
    if (!any_bent)
        throw InvariantError("fit_node_geometry: zero curvature everywhere, "
                             "node parameters are unobservable");

    const double w_kappa = 1.0 / options.kappa_scale;
    const double w_phi = 1.0 / kPi;
    // Weak anchor, re-centered on the running estimate over a few rounds.
    // In-plane data cannot separate the radial position from the orientation
    // (only K_eps * r * sin(theta) is observable), so the unanchored problem
    // has a flat valley along which noise lets the fit wander indefinitely.
    // The anchor keeps each round well posed; re-centering contracts its bias
    // on the directions the data does determine.
    const double w_anchor = 1e-3;
    const int anchor_rounds = 12;

    SensorGeometry fitted = initial;
    for (int j = 1; j <= 3; ++j) {
        // Parameters: (r1, theta1, r2, theta2), or (r1, r2, theta) shared.
        const FbgNode& n1 = initial.node(1, j);
        const FbgNode& n2 = initial.node(2, j);
        std::vector<double> x0 = options.shared_theta
                                     ? std::vector<double>{n1.r_mm, n2.r_mm,
                                                           0.5 * (n1.theta_rad + n2.theta_rad)}
                                     : std::vector<double>{n1.r_mm, n1.theta_rad, n2.r_mm,
                                                           n2.theta_rad};

        auto apply = [&](SensorGeometry& g, const std::vector<double>& p) {
            FbgNode& m1 = g.nodes[0][size_t(j - 1)];
            FbgNode& m2 = g.nodes[1][size_t(j - 1)];
            if (options.shared_theta) {
                m1.r_mm = p[0];
                m2.r_mm = p[1];
                m1.theta_rad = m2.theta_rad = p[2];
            } else {
                m1.r_mm = p[0];
                m1.theta_rad = p[1];
                m2.r_mm = p[2];
                m2.theta_rad = p[3];
            }
        };

        std::vector<double> anchor = x0;
        auto residual = [&](const std::vector<double>& p) {
            SensorGeometry g = fitted;
            apply(g, p);
            std::vector<double> r;
            r.reserve(2 * dataset.samples.size() + p.size());
            for (const CalibrationSample& s : dataset.samples) {
                const sensing::AaRaw raw = sensing::solve_aa(g, s.frame, j);
                const AaTruth& t = s.truth[size_t(j - 1)];
                r.push_back(w_kappa * (raw.kappa_per_mm - t.kappa_per_mm));
                // Direction residual only where the direction is defined.
                if (t.kappa_per_mm > 1e-6)
                    r.push_back(w_phi * wrap_angle(raw.phi_rad - t.phi_rad));
                else
                    r.push_back(0.0);
            }
            for (size_t i = 0; i < p.size(); ++i) {
                const bool is_angle = options.shared_theta ? (i == 2) : (i % 2 == 1);
                r.push_back(w_anchor * (p[i] - anchor[i]) / (is_angle ? 1.0 : 0.1));
            }
            return r;
        };

        numerics::LeastSquaresOptions lsq;
        lsq.tol = options.tol;
        lsq.max_iterations = options.max_iterations;
        std::vector<double> x = x0;
        for (int round = 0; round < anchor_rounds; ++round) {
            anchor = x;
            std::vector<double> next = numerics::least_squares(residual, std::nullopt, x, lsq).x;
            double shift = 0.0;
            for (size_t i = 0; i < x.size(); ++i) shift = std::max(shift, std::abs(next[i] - x[i]));
            x = std::move(next);
            if (shift < 1e-7) break; // re-centering has stabilized
        }
        apply(fitted, x);
    }
    fitted.validate();
    return fitted;
}

// ---------------------------------------------------------------------------
// Friction coefficients
// ---------------------------------------------------------------------------

std::array<double, 3> fit_friction_one_sign(const CalibrationDataset& dataset,
                                            const SensorGeometry& geometry, int sign) {
    if (dataset.count_with_sign(sign) < 2)
        throw InvariantError(std::string("fit_friction: need >= 2 ") +
                             (sign > 0 ? "positive" : "negative") + "-deflection samples");
    std::array<double, 3> c{1.0, 1.0, 1.0};
    for (int j = 1; j <= 3; ++j) {
        double num = 0.0, den = 0.0;
        for (const CalibrationSample& s : dataset.samples) {
            if (s.sign != sign) continue;
            const sensing::AaRaw raw = sensing::solve_aa(geometry, s.frame, j);
            num += s.truth[size_t(j - 1)].kappa_per_mm * raw.kappa_per_mm;
            den += raw.kappa_per_mm * raw.kappa_per_mm;
        }
        if (!(den > 0.0))
            throw NumericError("fit_friction: no curvature signal for sign " +
                               std::to_string(sign));
        c[size_t(j - 1)] = num / den;
    }
    return c;
}

FrictionFit fit_friction_coeffs(const CalibrationDataset& dataset, const SensorGeometry& geometry) {
    dataset.validate();
    FrictionFit fit;
    fit.c_pos = fit_friction_one_sign(dataset, geometry, +1);
    fit.c_neg = fit_friction_one_sign(dataset, geometry, -1);
    return fit;
}

// ---------------------------------------------------------------------------
// Twist measurement
// ---------------------------------------------------------------------------

std::array<double, 3> measure_twist(const WavelengthFrame& straight_frame,
                                    const WavelengthFrame& groove_frame, double groove_kappa_per_mm,
                                    const SensorGeometry& geometry) {
    if (!(groove_kappa_per_mm >= 0.005))
        throw InvariantError("measure_twist: groove curvature " +
                             std::to_string(groove_kappa_per_mm) +
                             " below 0.005 1/mm, direction poorly conditioned");
    straight_frame.validate();
    groove_frame.validate();

    // Step 1 defines the reference wavelengths.
    SensorGeometry g = geometry;
    for (int k = 1; k <= 2; ++k)
        for (int j = 1; j <= 3; ++j)
            g.nodes[size_t(k - 1)][size_t(j - 1)].lambda0_nm = straight_frame.lambda(k, j);
    g.validate();

    std::array<double, 3> twist;
    for (int j = 1; j <= 3; ++j) {
        const sensing::AaRaw raw = sensing::solve_aa(g, groove_frame, j);
        twist[size_t(j - 1)] = raw.phi_rad;
    }
    return twist;
}

// ---------------------------------------------------------------------------
// Validation statistics
// ---------------------------------------------------------------------------

namespace {

ErrorStats stats_of(const std::vector<double>& errors) {
    ErrorStats st;
    st.count = errors.size();
    if (errors.empty()) return st;
    double sum = 0.0;
    for (double e : errors) sum += e;
    st.mean = sum / double(errors.size());
    double ss = 0.0;
    for (double e : errors) ss += (e - st.mean) * (e - st.mean);
    st.stddev = std::sqrt(ss / double(errors.size()));
    return st;
}

std::string fmt_stats(const ErrorStats& s) {
    std::ostringstream os;
    os.precision(4);
    os << std::scientific << s.mean << " +- " << s.stddev << " (n=" << s.count << ")";
    return os.str();
}

} // namespace

ValidationReport validate(const CalibrationDataset& dataset, const SensorGeometry& geometry,
                          const CalibrationSet& calibration) {
    dataset.validate();
    std::vector<double> kappa_all, kappa_pos, kappa_neg, dir_all, dir_pos, dir_neg;

    for (const CalibrationSample& s : dataset.samples) {
        const sensing::FrameEstimate est = sensing::estimate_frame(geometry, calibration, s.frame);
        for (size_t j = 0; j < 3; ++j) {
            const AaTruth& t = s.truth[j];
            const double dk = std::abs(est.aa[j].kappa_per_mm - t.kappa_per_mm);
            kappa_all.push_back(dk);
            (s.sign >= 0 ? kappa_pos : kappa_neg).push_back(dk);
            if (t.kappa_per_mm > 1e-6) {
                const double dphi = std::abs(wrap_angle(est.aa[j].phi_rad - t.phi_rad));
                dir_all.push_back(dphi);
                (s.sign >= 0 ? dir_pos : dir_neg).push_back(dphi);
            }
        }
    }

    ValidationReport rep;
    rep.curvature = stats_of(kappa_all);
    rep.direction = stats_of(dir_all);
    rep.curvature_positive = stats_of(kappa_pos);
    rep.curvature_negative = stats_of(kappa_neg);
    rep.direction_positive = stats_of(dir_pos);
    rep.direction_negative = stats_of(dir_neg);
    return rep;
}

std::string ValidationReport::format() const {
    std::ostringstream os;
    os << "curvature error (1/mm)\n";
    os << "  positive: " << fmt_stats(curvature_positive) << "\n";
    os << "  negative: " << fmt_stats(curvature_negative) << "\n";
    os << "  overall:  " << fmt_stats(curvature) << "\n";
    os << "direction error (deg)\n";
    ErrorStats dp = direction_positive, dn = direction_negative, da = direction;
    for (ErrorStats* s : {&dp, &dn, &da}) {
        s->mean = rad_to_deg(s->mean);
        s->stddev = rad_to_deg(s->stddev);
    }
    os << "  positive: " << fmt_stats(dp) << "\n";
    os << "  negative: " << fmt_stats(dn) << "\n";
    os << "  overall:  " << fmt_stats(da) << "\n";
    return os.str();
}

} // namespace fbgshape::calibrate
