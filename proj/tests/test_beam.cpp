#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fbgshape/beam.hpp"
#include "fbgshape/types.hpp"
#include "oracles.hpp"

using namespace fbgshape;

namespace {

// Independent oracle: root-solve the force-equilibrium equation
// sum_i E_i A_i (z_i - z_c) = 0 by bisection over the section built with
// local placement arithmetic (no shared code with the closed form).
double equilibrium_oracle(const std::array<MaterialComponent, 4>& mats, double r) {
    double e_t = 0, d_t = 0, e_nw = 0, d_nw = 0, e_f = 0, d_f = 0, d_l = 0;
    for (const auto& m : mats) {
        if (m.role == MaterialRole::Tube) e_t = m.youngs_modulus_gpa, d_t = m.diameter_mm;
        if (m.role == MaterialRole::NitiRod) e_nw = m.youngs_modulus_gpa, d_nw = m.diameter_mm;
        if (m.role == MaterialRole::Fiber) e_f = m.youngs_modulus_gpa, d_f = m.diameter_mm;
        if (m.role == MaterialRole::Lumen) d_l = m.diameter_mm;
    }
    auto area = [](double d) { return kPi * d * d / 4.0; };
    struct Part {
        double ea, z;
    };
    const std::array<Part, 7> parts{{
        {e_t * area(d_t), r},           // tube disc
        {-e_t * area(d_l), 0.0},        // rod lumen removal
        {-e_t * area(d_l), 1.5 * r},    // fiber lumen removals
        {-e_t * area(d_l), 1.5 * r},
        {e_nw * area(d_nw), 0.0},       // rod
        {e_f * area(d_f), 1.5 * r},     // fibers
        {e_f * area(d_f), 1.5 * r},
    }};
    auto residual = [&](double zc) {
        double s = 0.0;
        for (const Part& p : parts) s += p.ea * (p.z - zc);
        return s;
    };
    double lo = -1.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (residual(lo) * residual(mid) <= 0.0) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("neutral axis reproduces the reference assembly value") {
    const auto mats = default_materials();
    const double zc = beam::neutral_axis_closed_form(mats, 0.1328);
    CHECK(std::abs(zc - 0.095) < 0.001);

    const beam::CrossSection section = beam::sensing_unit_section(mats, 0.1328);
    CHECK(beam::neutral_axis_offset(section) == doctest::Approx(zc).epsilon(1e-12));
}

TEST_CASE("neutral axis vanishes for a centered lumen circle") {
    CHECK(beam::neutral_axis_closed_form(default_materials(), 0.0) == 0.0);
}

TEST_CASE("neutral axis at r = 0.05 mm against the equilibrium oracle") {
    const auto mats = default_materials();
    const double zc = beam::neutral_axis_closed_form(mats, 0.05);
    CHECK(std::abs(zc - 0.03576) < 1e-4);
    CHECK(std::abs(zc - equilibrium_oracle(mats, 0.05)) < 1e-10);
}

TEST_CASE("closed form agrees with the first-moment route on random materials") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        auto mats = default_materials();
        mats[0].youngs_modulus_gpa = oracles::uniform(rng, 1.0, 10.0);
        mats[0].diameter_mm = oracles::uniform(rng, 0.4, 0.7);
        mats[1].youngs_modulus_gpa = oracles::uniform(rng, 40.0, 120.0);
        mats[1].diameter_mm = oracles::uniform(rng, 0.08, 0.14);
        mats[2].youngs_modulus_gpa = oracles::uniform(rng, 40.0, 120.0);
        mats[2].diameter_mm = oracles::uniform(rng, 0.05, 0.1);
        mats[3].diameter_mm = oracles::uniform(rng, 0.1, 0.18);
        const double r = oracles::uniform(rng, 0.01, 0.2);

        const double closed = beam::neutral_axis_closed_form(mats, r);
        const double moment = beam::neutral_axis_offset(beam::sensing_unit_section(mats, r));
        CHECK(std::abs(closed - moment) < 1e-10);
        CHECK(std::abs(closed - equilibrium_oracle(mats, r)) < 1e-9);
    }
}

TEST_CASE("offset is linear in the lumen circle radius") {
    const auto mats = default_materials();
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const double r = oracles::uniform(rng, 0.01, 0.1);
        const double z1 = beam::neutral_axis_closed_form(mats, r);
        const double z2 = beam::neutral_axis_closed_form(mats, 2.0 * r);
        CHECK(std::abs(z2 - 2.0 * z1) < 1e-12);
    }
}

TEST_CASE("common modulus scaling leaves the offset unchanged") {
    auto mats = default_materials();
    const double z1 = beam::neutral_axis_closed_form(mats, 0.1328);
    for (auto& m : mats) m.youngs_modulus_gpa *= 7.5;
    const double z2 = beam::neutral_axis_closed_form(mats, 0.1328);
    CHECK(z1 == doctest::Approx(z2).epsilon(1e-14));
}

TEST_CASE("degenerate materials raise on a non-positive denominator") {
    auto mats = default_materials();
    mats[3].diameter_mm = 0.9;                    // lumens larger than the tube
    mats[1].youngs_modulus_gpa = 1e-9;            // rod contributes nothing
    mats[2].youngs_modulus_gpa = 1e-9;
    CHECK_THROWS_AS(beam::neutral_axis_closed_form(mats, 0.1), NumericError);
}

TEST_CASE("cross-section validation rejects asymmetric layouts") {
    beam::CrossSection s = beam::sensing_unit_section(default_materials(), 0.1);
    s.components.push_back({70.0, 0.005, 0.0, 0.04}); // unpaired off-axis part
    CHECK_THROWS_AS(s.validate(), InvariantError);
    beam::CrossSection empty;
    CHECK_THROWS_AS(beam::neutral_axis_offset(empty), InvariantError);
}
