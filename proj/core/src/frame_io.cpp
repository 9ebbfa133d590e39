#include "fbgshape/frame_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fbgshape::io {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

double parse_field(const std::string& text, const std::string& origin, int line, size_t col) {
    try {
        size_t pos = 0;
        double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ParseError(origin + ": line " + std::to_string(line) + ", column " +
                         std::to_string(col + 1) + ": cannot parse '" + text + "'");
    }
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    return out;
}

constexpr const char* kFrameHeader = "t,l11,l12,l13,l21,l22,l23";

void expect_header(std::istream& in, const std::string& origin, const std::string& expected) {
    std::string line;
    if (!std::getline(in, line))
        throw ParseError(origin + ": empty file, expected header '" + expected + "'");
    if (trim(line) != expected)
        throw ParseError(origin + ": bad header '" + trim(line) + "', expected '" + expected + "'");
}

WavelengthFrame frame_from_fields(const std::vector<std::string>& f, const std::string& origin,
                                  int line) {
    WavelengthFrame frame;
    frame.timestamp_s = parse_field(f[0], origin, line, 0);
    size_t col = 1;
    for (int k = 1; k <= 2; ++k)
        for (int j = 1; j <= 3; ++j) frame.lambda(k, j) = parse_field(f[col], origin, line, col), ++col;
    frame.validate();
    return frame;
}

} // namespace

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::vector<WavelengthFrame> read_frames_csv(std::istream& in, const std::string& origin) {
    expect_header(in, origin, kFrameHeader);
    std::vector<WavelengthFrame> frames;
    std::string raw;
    int line = 1;
    while (std::getline(in, raw)) {
        ++line;
        if (trim(raw).empty()) continue;
        const std::vector<std::string> f = split_csv(raw);
        if (f.size() != 7)
            throw ParseError(origin + ": line " + std::to_string(line) + ": expected 7 fields, got " +
                             std::to_string(f.size()));
        frames.push_back(frame_from_fields(f, origin, line));
    }
    return frames;
}

std::vector<WavelengthFrame> load_frames_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    return read_frames_csv(in, path);
}

void write_frames_csv(std::ostream& out, const std::vector<WavelengthFrame>& frames) {
    out << kFrameHeader << "\n";
    for (const WavelengthFrame& fr : frames) {
        out << format_number(fr.timestamp_s);
        for (int k = 1; k <= 2; ++k)
            for (int j = 1; j <= 3; ++j) out << ',' << format_number(fr.lambda(k, j));
        out << "\n";
    }
}

void save_frames_csv(const std::string& path, const std::vector<WavelengthFrame>& frames) {
    std::ofstream out = open_out(path);
    write_frames_csv(out, frames);
}

namespace {

constexpr const char* kDatasetHeader =
    "t,l11,l12,l13,l21,l22,l23,sign,"
    "kappa_gt_1,phi_gt_deg_1,kappa_gt_2,phi_gt_deg_2,kappa_gt_3,phi_gt_deg_3";

} // namespace

calibrate::CalibrationDataset read_dataset_csv(std::istream& in, const std::string& origin) {
    expect_header(in, origin, kDatasetHeader);
    calibrate::CalibrationDataset dataset;
    std::string raw;
    int line = 1;
    while (std::getline(in, raw)) {
        ++line;
        if (trim(raw).empty()) continue;
        const std::vector<std::string> f = split_csv(raw);
        if (f.size() != 14)
            throw ParseError(origin + ": line " + std::to_string(line) +
                             ": expected 14 fields, got " + std::to_string(f.size()));
        calibrate::CalibrationSample s;
        s.frame = frame_from_fields(f, origin, line);
        s.sign = int(parse_field(f[7], origin, line, 7));
        if (s.sign < -1 || s.sign > 1)
            throw ParseError(origin + ": line " + std::to_string(line) + ": sign must be -1, 0 or 1");
        for (size_t j = 0; j < 3; ++j) {
            s.truth[j].kappa_per_mm = parse_field(f[8 + 2 * j], origin, line, 8 + 2 * j);
            s.truth[j].phi_rad = deg_to_rad(parse_field(f[9 + 2 * j], origin, line, 9 + 2 * j));
        }
        dataset.samples.push_back(std::move(s));
    }
    return dataset;
}

calibrate::CalibrationDataset load_dataset_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    return read_dataset_csv(in, path);
}

void write_dataset_csv(std::ostream& out, const calibrate::CalibrationDataset& dataset) {
    out << kDatasetHeader << "\n";
    for (const calibrate::CalibrationSample& s : dataset.samples) {
        out << format_number(s.frame.timestamp_s);
        for (int k = 1; k <= 2; ++k)
            for (int j = 1; j <= 3; ++j) out << ',' << format_number(s.frame.lambda(k, j));
        out << ',' << s.sign;
        for (size_t j = 0; j < 3; ++j)
            out << ',' << format_number(s.truth[j].kappa_per_mm) << ','
                << format_number(rad_to_deg(s.truth[j].phi_rad));
        out << "\n";
    }
}

void save_dataset_csv(const std::string& path, const calibrate::CalibrationDataset& dataset) {
    std::ofstream out = open_out(path);
    write_dataset_csv(out, dataset);
}

void write_centerline_csv(std::ostream& out, const reconstruct::CenterlinePolyline& line) {
    out << "s_mm,x_mm,y_mm\n";
    for (size_t i = 0; i < line.points.size(); ++i)
        out << format_number(line.arc_at(i)) << ',' << format_number(line.points[i].x) << ','
            << format_number(line.points[i].y) << "\n";
}

void save_centerline_csv(const std::string& path, const reconstruct::CenterlinePolyline& line) {
    std::ofstream out = open_out(path);
    write_centerline_csv(out, line);
}

reconstruct::CenterlinePolyline read_centerline_csv(std::istream& in, const std::string& origin) {
    expect_header(in, origin, "s_mm,x_mm,y_mm");
    reconstruct::CenterlinePolyline line;
    std::string raw;
    int n = 1;
    double prev_s = 0.0, first_step = 0.0;
    while (std::getline(in, raw)) {
        ++n;
        if (trim(raw).empty()) continue;
        const std::vector<std::string> f = split_csv(raw);
        if (f.size() != 3)
            throw ParseError(origin + ": line " + std::to_string(n) + ": expected 3 fields");
        const double s = parse_field(f[0], origin, n, 0);
        line.points.push_back({parse_field(f[1], origin, n, 1), parse_field(f[2], origin, n, 2)});
        if (line.points.size() == 2) first_step = s - prev_s;
        prev_s = s;
    }
    line.step_mm = first_step;
    line.total_arc_mm = prev_s;
    return line;
}

reconstruct::CenterlinePolyline load_centerline_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    return read_centerline_csv(in, path);
}

// ---------------------------------------------------------------------------
// JSON-lines stream records
// ---------------------------------------------------------------------------

std::optional<WavelengthFrame> parse_stream_record(const std::string& line) {
    const std::string t = trim(line);
    if (t.empty()) return std::nullopt;
    json obj;
    try {
        obj = json::parse(t);
    } catch (const json::exception& e) {
        throw ParseError(std::string("stream record: ") + e.what());
    }
    if (!obj.is_object()) throw ParseError("stream record: expected a JSON object");
    WavelengthFrame frame;
    auto get = [&](const char* key) {
        if (!obj.contains(key) || !obj[key].is_number())
            throw ParseError(std::string("stream record: missing numeric field '") + key + "'");
        return obj[key].get<double>();
    };
    frame.timestamp_s = get("t");
    const char* names[2][3] = {{"l11", "l12", "l13"}, {"l21", "l22", "l23"}};
    for (int k = 1; k <= 2; ++k)
        for (int j = 1; j <= 3; ++j) frame.lambda(k, j) = get(names[k - 1][j - 1]);
    frame.validate();
    return frame;
}

std::string stream_output_record(std::uint64_t id, const WavelengthFrame& frame,
                                 const reconstruct::ReconstructionResult& result, bool tip_only) {
    // Hand-formatted so numbers keep the fixed 9-digit style.
    std::ostringstream os;
    const reconstruct::Point2 tip = result.polyline.tip();
    os << "{\"id\":" << id << ",\"t\":" << format_number(frame.timestamp_s)
       << ",\"tip\":[" << format_number(tip.x) << ',' << format_number(tip.y) << ']';
    if (!tip_only) {
        os << ",\"centerline\":[";
        for (size_t i = 0; i < result.polyline.points.size(); ++i) {
            if (i) os << ',';
            os << '[' << format_number(result.polyline.arc_at(i)) << ','
               << format_number(result.polyline.points[i].x) << ','
               << format_number(result.polyline.points[i].y) << ']';
        }
        os << ']';
    }
    os << '}';
    return os.str();
}

std::string stream_error_record(std::uint64_t id, const std::string& message) {
    json obj;
    obj["id"] = id;
    obj["error"] = message;
    return obj.dump();
}

std::string stream_drop_record(std::uint64_t dropped_total) {
    json obj;
    obj["dropped_frames"] = dropped_total;
    return obj.dump();
}

} // namespace fbgshape::io
