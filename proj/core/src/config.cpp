#include "fbgshape/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace fbgshape {
namespace {

bool finite(double v) { return std::isfinite(v); }

[[noreturn]] void bound_violation(const std::string& field, double value, const std::string& bound) {
    std::ostringstream os;
    os << field << " = " << value << " violates " << bound;
    throw InvariantError(os.str());
}

} // namespace

std::string to_string(MaterialRole role) {
    switch (role) {
        case MaterialRole::Tube: return "tube";
        case MaterialRole::NitiRod: return "niti-rod";
        case MaterialRole::Fiber: return "fiber";
        case MaterialRole::Lumen: return "lumen";
    }
    return "?";
}

void MaterialComponent::validate() const {
    if (!finite(youngs_modulus_gpa) || youngs_modulus_gpa < 0.0)
        bound_violation("materials." + to_string(role) + ".youngs_modulus_gpa", youngs_modulus_gpa,
                        "youngs_modulus >= 0");
    if (!finite(diameter_mm) || diameter_mm <= 0.0)
        bound_violation("materials." + to_string(role) + ".diameter_mm", diameter_mm, "diameter > 0");
    if (count < 1)
        bound_violation("materials." + to_string(role) + ".count", count, "count >= 1");
    if (role != MaterialRole::Lumen && youngs_modulus_gpa == 0.0)
        bound_violation("materials." + to_string(role) + ".youngs_modulus_gpa", 0.0,
                        "youngs_modulus > 0 for load-bearing components");
}

void SensorGeometry::validate() const {
    if (!finite(z_c_mm) || z_c_mm < 0.0)
        bound_violation("geometry.z_c_mm", z_c_mm, "z_c >= 0");
    if (!finite(photoelastic_coeff) || photoelastic_coeff <= 0.0 || photoelastic_coeff >= 1.0)
        bound_violation("geometry.photoelastic_coeff", photoelastic_coeff, "0 < p_eps < 1");
    if (!finite(k_t_per_kelvin) || k_t_per_kelvin < 0.0)
        bound_violation("geometry.k_t_per_kelvin", k_t_per_kelvin, "k_t >= 0");
    if (!finite(lumen_circle_radius_mm) || lumen_circle_radius_mm <= 0.0 || lumen_circle_radius_mm >= 0.25)
        bound_violation("geometry.lumen_circle_radius_mm", lumen_circle_radius_mm, "0 < r < 0.25");
    for (int k = 1; k <= 2; ++k) {
        for (int j = 1; j <= 3; ++j) {
            const FbgNode& n = node(k, j);
            const std::string base =
                "geometry.node.f" + std::to_string(k) + ".aa" + std::to_string(j) + ".";
            if (!finite(n.r_mm) || n.r_mm <= 0.0 || n.r_mm >= 0.25)
                bound_violation(base + "r_mm", n.r_mm, "0 < r < 0.25");
            if (!finite(n.theta_rad) || n.theta_rad <= 0.0 || n.theta_rad >= kPi)
                bound_violation(base + "theta_rad", n.theta_rad, "0 < theta < pi");
            if (!finite(n.lambda0_nm) || n.lambda0_nm < 1500.0 || n.lambda0_nm > 1600.0)
                bound_violation(base + "lambda0_nm", n.lambda0_nm, "1500 <= lambda0 <= 1600");
        }
    }
    for (const MaterialComponent& m : materials) m.validate();
}

void CdmConfig::validate() const {
    if (!finite(total_arc_length_mm) || total_arc_length_mm <= 0.0)
        bound_violation("cdm.total_arc_length_mm", total_arc_length_mm, "L > 0");
    if (!finite(d_offset_mm) || d_offset_mm <= 0.0 || d_offset_mm >= 3.0)
        bound_violation("cdm.d_offset_mm", d_offset_mm, "0 < d_offset < 3");
    for (size_t j = 0; j < 3; ++j) {
        double s = aa_arc_positions_mm[j];
        if (!finite(s) || s < 0.0 || s > total_arc_length_mm)
            bound_violation("cdm.aa_arc_positions_mm[" + std::to_string(j + 1) + "]", s,
                            "0 <= s <= L");
        if (j > 0 && s <= aa_arc_positions_mm[j - 1])
            bound_violation("cdm.aa_arc_positions_mm[" + std::to_string(j + 1) + "]", s,
                            "strictly increasing positions");
    }
}

void WavelengthFrame::validate() const {
    if (!finite(timestamp_s))
        throw InvariantError("frame.timestamp_s is not finite");
    for (int k = 1; k <= 2; ++k)
        for (int j = 1; j <= 3; ++j) {
            double l = lambda(k, j);
            if (!finite(l) || l < 1500.0 || l > 1600.0)
                bound_violation("frame.l" + std::to_string(k) + std::to_string(j), l,
                                "1500 <= lambda <= 1600");
        }
}

void CalibrationSet::validate() const {
    for (size_t j = 0; j < 3; ++j) {
        if (!finite(c_pos[j]) || c_pos[j] <= 0.3 || c_pos[j] >= 2.0)
            bound_violation("calibration.c_pos[" + std::to_string(j + 1) + "]", c_pos[j],
                            "0.3 < C < 2.0");
        if (!finite(c_neg[j]) || c_neg[j] <= 0.3 || c_neg[j] >= 2.0)
            bound_violation("calibration.c_neg[" + std::to_string(j + 1) + "]", c_neg[j],
                            "0.3 < C < 2.0");
        if (!finite(twist_rad[j]) || std::abs(twist_rad[j]) >= kPi / 4.0)
            bound_violation("calibration.twist_rad[" + std::to_string(j + 1) + "]", twist_rad[j],
                            "|twist| < pi/4");
    }
}

void SystemConfig::validate() const {
    geometry.validate();
    cdm.validate();
    calibration.validate();
}

std::array<MaterialComponent, 4> default_materials() {
    return {{
        {MaterialRole::Tube, 2.6, 0.5, 1},
        {MaterialRole::NitiRod, 75.0, 0.125, 1},
        {MaterialRole::Fiber, 70.0, 0.08, 2}, // cladding diameter
        {MaterialRole::Lumen, 0.0, 0.15, 3},
    }};
}

SensorGeometry default_geometry() {
    SensorGeometry g;
    g.materials = default_materials();
    // Symmetric fibers per active area so that in-plane bending is exactly
    // recoverable; per-AA radii/orientations from the reference calibration.
    const double r[3] = {0.159, 0.154, 0.1545};
    const double theta_deg[3] = {60.848, 60.790, 60.733};
    const double lambda0[2][3] = {{1538.0, 1546.0, 1554.0}, {1542.0, 1550.0, 1558.0}};
    for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 3; ++j)
            g.nodes[size_t(k)][size_t(j)] = {r[j], deg_to_rad(theta_deg[j]), lambda0[k][j]};
    return g;
}

SystemConfig default_config() {
    SystemConfig c;
    c.geometry = default_geometry();
    return c;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text, int line) {
    const std::string t = trim(text);
    try {
        size_t pos = 0;
        double v = std::stod(t, &pos);
        if (pos != t.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line) + ": key '" + key +
                         "': cannot parse '" + t + "' as a number");
    }
}

std::vector<double> parse_double_list(const std::string& key, const std::string& text, int line) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(key, item, line));
    return out;
}

void expect_count(const std::string& key, const std::vector<double>& v, size_t n, int line) {
    if (v.size() != n)
        throw ParseError("line " + std::to_string(line) + ": key '" + key + "' expects " +
                         std::to_string(n) + " comma-separated values, got " +
                         std::to_string(v.size()));
}

MaterialComponent* material_by_name(SystemConfig& c, const std::string& name) {
    MaterialRole role;
    if (name == "tube") role = MaterialRole::Tube;
    else if (name == "niti_rod") role = MaterialRole::NitiRod;
    else if (name == "fiber") role = MaterialRole::Fiber;
    else if (name == "lumen") role = MaterialRole::Lumen;
    else return nullptr;
    for (MaterialComponent& m : c.geometry.materials)
        if (m.role == role) return &m;
    return nullptr;
}

FbgNode* node_by_key(SystemConfig& c, const std::string& fiber, const std::string& aa) {
    if (fiber.size() != 2 || fiber[0] != 'f' || aa.size() != 3 || aa.compare(0, 2, "aa") != 0)
        return nullptr;
    int k = fiber[1] - '0';
    int j = aa[2] - '0';
    if (k < 1 || k > 2 || j < 1 || j > 3) return nullptr;
    return &c.geometry.nodes[size_t(k - 1)][size_t(j - 1)];
}

std::vector<std::string> split_key(const std::string& key) {
    std::vector<std::string> parts;
    std::stringstream ss(key);
    std::string p;
    while (std::getline(ss, p, '.')) parts.push_back(p);
    return parts;
}

// Applies one key=value pair; returns false if the key is unknown.
bool apply_key(SystemConfig& c, const std::string& key, const std::string& value, int line) {
    const std::vector<std::string> parts = split_key(key);
    auto num = [&] { return parse_double(key, value, line); };
    auto list3 = [&] {
        std::vector<double> v = parse_double_list(key, value, line);
        expect_count(key, v, 3, line);
        return std::array<double, 3>{v[0], v[1], v[2]};
    };

    if (parts.size() == 2 && parts[0] == "cdm") {
        if (parts[1] == "total_arc_length_mm") { c.cdm.total_arc_length_mm = num(); return true; }
        if (parts[1] == "d_offset_mm") { c.cdm.d_offset_mm = num(); return true; }
        if (parts[1] == "aa_arc_positions_mm") { c.cdm.aa_arc_positions_mm = list3(); return true; }
        if (parts[1] == "deflection_sign_convention") {
            if (trim(value) != "fiber1-positive-is-positive-deflection")
                throw ParseError("line " + std::to_string(line) +
                                 ": unsupported deflection sign convention '" + trim(value) + "'");
            c.cdm.sign_convention = DeflectionSignConvention::Fiber1PositiveIsPositiveDeflection;
            return true;
        }
        return false;
    }
    if (parts.size() == 2 && parts[0] == "geometry") {
        if (parts[1] == "z_c_mm") { c.geometry.z_c_mm = num(); return true; }
        if (parts[1] == "photoelastic_coeff") { c.geometry.photoelastic_coeff = num(); return true; }
        if (parts[1] == "k_t_per_kelvin") { c.geometry.k_t_per_kelvin = num(); return true; }
        if (parts[1] == "lumen_circle_radius_mm") { c.geometry.lumen_circle_radius_mm = num(); return true; }
        return false;
    }
    if (parts.size() == 5 && parts[0] == "geometry" && parts[1] == "node") {
        FbgNode* n = node_by_key(c, parts[2], parts[3]);
        if (n == nullptr) return false;
        if (parts[4] == "r_mm") { n->r_mm = num(); return true; }
        if (parts[4] == "theta_deg") { n->theta_rad = deg_to_rad(num()); return true; }
        if (parts[4] == "lambda0_nm") { n->lambda0_nm = num(); return true; }
        return false;
    }
    if (parts.size() == 3 && parts[0] == "materials") {
        MaterialComponent* m = material_by_name(c, parts[1]);
        if (m == nullptr) return false;
        if (parts[2] == "youngs_modulus_gpa") { m->youngs_modulus_gpa = num(); return true; }
        if (parts[2] == "diameter_mm") { m->diameter_mm = num(); return true; }
        if (parts[2] == "count") { m->count = int(num()); return true; }
        return false;
    }
    if (parts.size() == 2 && parts[0] == "calibration") {
        if (parts[1] == "c_pos") { c.calibration.c_pos = list3(); return true; }
        if (parts[1] == "c_neg") { c.calibration.c_neg = list3(); return true; }
        if (parts[1] == "twist_deg") {
            std::array<double, 3> deg = list3();
            for (size_t j = 0; j < 3; ++j) c.calibration.twist_rad[j] = deg_to_rad(deg[j]);
            return true;
        }
        return false;
    }
    return false;
}

} // namespace

SystemConfig parse_config(std::istream& in, const std::string& origin) {
    SystemConfig config = default_config();
    bool seen_schema = false;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = trim(raw);
        if (s.empty() || s[0] == '#') continue;
        size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ParseError(origin + ": line " + std::to_string(line) + ": expected 'key = value'");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (key == "schema_version") {
            double v = parse_double(key, value, line);
            if (v != kConfigSchemaVersion)
                throw ParseError(origin + ": unsupported schema_version " + value + " (expected " +
                                 std::to_string(kConfigSchemaVersion) + ")");
            seen_schema = true;
            continue;
        }
        if (!apply_key(config, key, value, line))
            throw ParseError(origin + ": line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
    if (!seen_schema)
        throw ParseError(origin + ": missing mandatory schema_version key");
    config.validate();
    return config;
}

SystemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file '" + path + "'");
    return parse_config(in, path);
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string serialize_config(const SystemConfig& c) {
    std::ostringstream os;
    os << "schema_version = " << kConfigSchemaVersion << "\n\n";
    os << "cdm.total_arc_length_mm = " << fmt(c.cdm.total_arc_length_mm) << "\n";
    os << "cdm.d_offset_mm = " << fmt(c.cdm.d_offset_mm) << "\n";
    os << "cdm.aa_arc_positions_mm = " << fmt(c.cdm.aa_arc_positions_mm[0]) << ", "
       << fmt(c.cdm.aa_arc_positions_mm[1]) << ", " << fmt(c.cdm.aa_arc_positions_mm[2]) << "\n";
    os << "cdm.deflection_sign_convention = fiber1-positive-is-positive-deflection\n\n";

    os << "geometry.z_c_mm = " << fmt(c.geometry.z_c_mm) << "\n";
    os << "geometry.photoelastic_coeff = " << fmt(c.geometry.photoelastic_coeff) << "\n";
    os << "geometry.k_t_per_kelvin = " << fmt(c.geometry.k_t_per_kelvin) << "\n";
    os << "geometry.lumen_circle_radius_mm = " << fmt(c.geometry.lumen_circle_radius_mm) << "\n";
    for (int k = 1; k <= 2; ++k)
        for (int j = 1; j <= 3; ++j) {
            const FbgNode& n = c.geometry.node(k, j);
            std::string base = "geometry.node.f" + std::to_string(k) + ".aa" + std::to_string(j);
            os << base << ".r_mm = " << fmt(n.r_mm) << "\n";
            os << base << ".theta_deg = " << fmt(rad_to_deg(n.theta_rad)) << "\n";
            os << base << ".lambda0_nm = " << fmt(n.lambda0_nm) << "\n";
        }
    os << "\n";
    for (const MaterialComponent& m : c.geometry.materials) {
        std::string name = to_string(m.role);
        std::replace(name.begin(), name.end(), '-', '_');
        os << "materials." << name << ".youngs_modulus_gpa = " << fmt(m.youngs_modulus_gpa) << "\n";
        os << "materials." << name << ".diameter_mm = " << fmt(m.diameter_mm) << "\n";
        os << "materials." << name << ".count = " << m.count << "\n";
    }
    os << "\n";
    os << "calibration.c_pos = " << fmt(c.calibration.c_pos[0]) << ", " << fmt(c.calibration.c_pos[1])
       << ", " << fmt(c.calibration.c_pos[2]) << "\n";
    os << "calibration.c_neg = " << fmt(c.calibration.c_neg[0]) << ", " << fmt(c.calibration.c_neg[1])
       << ", " << fmt(c.calibration.c_neg[2]) << "\n";
    os << "calibration.twist_deg = " << fmt(rad_to_deg(c.calibration.twist_rad[0])) << ", "
       << fmt(rad_to_deg(c.calibration.twist_rad[1])) << ", "
       << fmt(rad_to_deg(c.calibration.twist_rad[2])) << "\n";
    return os.str();
}

void save_config(const SystemConfig& config, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write config file '" + path + "'");
    out << serialize_config(config);
}

} // namespace fbgshape
