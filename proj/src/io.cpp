#include "geokit/io.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "geokit/coons.h"

namespace geokit {

namespace {

using nlohmann::json;

Point2 parse_point(const json& j, const char* where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError(std::string(where) + ": point must be [x, y]");
    const Point2 p{j[0].get<double>(), j[1].get<double>()};
    if (!finite(p)) throw ParseError(std::string(where) + ": nonfinite coordinate");
    return p;
}

ClosedCurve parse_curve(const json& j, std::size_t curve_index) {
    const std::string where = "curve " + std::to_string(curve_index);
    if (!j.is_object() || !j.contains("segments") || !j["segments"].is_array())
        throw ParseError(where + ": expected {\"segments\": [...]}");
    std::vector<CubicSegment> segments;
    for (const json& js : j["segments"]) {
        if (!js.is_array() || js.size() != 4)
            throw ParseError(where + ": segment must hold 4 control points");
        CubicSegment seg;
        for (int i = 0; i < 4; ++i) seg.ctrl(i) = parse_point(js[i], where.c_str());
        segments.push_back(seg);
    }
    if (segments.empty()) throw ParseError(where + ": no segments");
    for (std::size_t k = 0; k < segments.size(); ++k) {
        const Point2 tail = segments[k].p3;
        const Point2 head = segments[(k + 1) % segments.size()].p0;
        if (tail != head) throw ParseError(where + ": closure gap after segment " +
                                           std::to_string(k));
    }
    return ClosedCurve{std::move(segments)};
}

json point_to_json(Point2 p) { return json::array({p.x, p.y}); }
json point_to_json(Point3 p) { return json::array({p.x, p.y, p.z}); }

json patch_to_json(const Patch& patch) {
    json rows = json::array();
    for (int i = 0; i < 4; ++i) {
        json row = json::array();
        for (int j = 0; j < 4; ++j) row.push_back(point_to_json(patch.at(i, j)));
        rows.push_back(row);
    }
    return json{{"control", rows}, {"orientation", patch.orientation}};
}

Patch patch_from_json(const json& j) {
    if (!j.is_object() || !j.contains("control")) throw ParseError("patch: missing control net");
    const json& rows = j["control"];
    if (!rows.is_array() || rows.size() != 4) throw ParseError("patch: control must be 4x4");
    Patch patch;
    for (int i = 0; i < 4; ++i) {
        const json& row = rows[i];
        if (!row.is_array() || row.size() != 4) throw ParseError("patch: control must be 4x4");
        for (int k = 0; k < 4; ++k) {
            const json& p = row[k];
            if (!p.is_array() || p.size() != 3) throw ParseError("patch: point must be [x,y,z]");
            patch.at(i, k) = {p[0].get<double>(), p[1].get<double>(), p[2].get<double>()};
            if (!finite(patch.at(i, k))) throw ParseError("patch: nonfinite coordinate");
        }
    }
    patch.orientation = j.value("orientation", 1);
    return patch;
}

}  // namespace

std::vector<ClosedCurve> parse_outline_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("curves") || !doc["curves"].is_array())
        throw ParseError("outline document: expected {\"curves\": [...]}");
    std::vector<ClosedCurve> curves;
    std::size_t index = 0;
    for (const json& jc : doc["curves"]) curves.push_back(parse_curve(jc, index++));
    if (curves.empty()) throw ParseError("outline document: no curves");
    return curves;
}

namespace {

struct PathScanner {
    const std::string& text;
    std::size_t pos = 0;

    void skip_separators() {
        while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) ||
                                     text[pos] == ','))
            ++pos;
    }
    bool done() {
        skip_separators();
        return pos >= text.size();
    }
    char peek() {
        skip_separators();
        return text[pos];
    }
    double number() {
        skip_separators();
        const char* begin = text.data() + pos;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) throw ParseError("svg path: expected a number");
        pos += static_cast<std::size_t>(end - begin);
        if (!std::isfinite(v)) throw ParseError("svg path: nonfinite number");
        return v;
    }
    Point2 point() {
        const double x = number();
        const double y = number();
        return {x, y};
    }
};

std::vector<ClosedCurve> parse_path_data(const std::string& data) {
    std::vector<ClosedCurve> curves;
    PathScanner scan{data};
    std::vector<CubicSegment> segments;
    Point2 start{}, current{};
    bool open = false;

    while (!scan.done()) {
        const char cmd = scan.peek();
        if (std::isalpha(static_cast<unsigned char>(cmd))) {
            ++scan.pos;
            switch (cmd) {
                case 'M':
                    if (open) throw ParseError("svg path: M before Z closes the previous subpath");
                    start = current = scan.point();
                    segments.clear();
                    open = true;
                    break;
                case 'L': {
                    if (!open) throw ParseError("svg path: L before M");
                    const Point2 to = scan.point();
                    segments.push_back(straight_segment(current, to));
                    current = to;
                    break;
                }
                case 'C': {
                    if (!open) throw ParseError("svg path: C before M");
                    const Point2 c1 = scan.point();
                    const Point2 c2 = scan.point();
                    const Point2 to = scan.point();
                    segments.push_back({current, c1, c2, to});
                    current = to;
                    break;
                }
                case 'Z':
                case 'z':
                    if (!open) throw ParseError("svg path: Z before M");
                    if (cmd == 'z') throw ParseError("svg path: relative commands not supported");
                    if (current != start)
                        throw ParseError("svg path: Z does not land on the subpath start");
                    if (segments.empty()) throw ParseError("svg path: empty subpath");
                    curves.push_back(make_closed_curve(segments));
                    segments.clear();
                    open = false;
                    break;
                default:
                    throw ParseError(std::string("svg path: unsupported command '") + cmd +
                                     "' (only absolute M, L, C, Z)");
            }
        } else {
            throw ParseError("svg path: expected a command letter");
        }
    }
    if (open) throw ParseError("svg path: unterminated subpath (missing Z)");
    if (curves.empty()) throw ParseError("svg path: no closed subpaths");
    return curves;
}

}  // namespace

std::vector<ClosedCurve> parse_outline_svg(const std::string& text) {
    std::string stripped = text;
    std::size_t first = stripped.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError("svg: empty input");
    if (stripped[first] != '<') return parse_path_data(stripped);

    // Whole SVG document: read every <path ... d="..."> attribute.
    std::vector<ClosedCurve> curves;
    std::size_t pos = 0;
    while ((pos = stripped.find("<path", pos)) != std::string::npos) {
        const std::size_t close = stripped.find('>', pos);
        if (close == std::string::npos) throw ParseError("svg: unterminated <path> element");
        const std::string element = stripped.substr(pos, close - pos);
        const std::size_t dpos = element.find("d=\"");
        if (dpos == std::string::npos) throw ParseError("svg: <path> without d attribute");
        const std::size_t dend = element.find('"', dpos + 3);
        if (dend == std::string::npos) throw ParseError("svg: unterminated d attribute");
        for (ClosedCurve& c : parse_path_data(element.substr(dpos + 3, dend - dpos - 3)))
            curves.push_back(std::move(c));
        pos = close;
    }
    if (curves.empty()) throw ParseError("svg: no <path> elements");
    return curves;
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

bool has_suffix(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(),
                                                  suffix) == 0;
}

}  // namespace

std::vector<ClosedCurve> load_outline_file(const std::string& path) {
    const std::string text = read_file(path);
    return has_suffix(path, ".svg") ? parse_outline_svg(text) : parse_outline_json(text);
}

std::string curve_to_json(const ClosedCurve& curve) {
    json segments = json::array();
    for (const CubicSegment& seg : curve.segments) {
        segments.push_back(json::array({point_to_json(seg.p0), point_to_json(seg.p1),
                                        point_to_json(seg.p2), point_to_json(seg.p3)}));
    }
    return json{{"segments", segments}}.dump();
}

std::string patchset_to_json(const PatchSetDocument& doc) {
    json patches = json::array();
    for (std::size_t k = 0; k < doc.patches.size(); ++k) {
        json entry = patch_to_json(doc.patches[k]);
        if (k < doc.provenance.size()) {
            entry["provenance"] = json{{"source_curve", doc.provenance[k].source_curve},
                                       {"history", doc.provenance[k].history}};
        }
        patches.push_back(std::move(entry));
    }
    json discarded = json::array();
    for (const Patch& patch : doc.discarded) discarded.push_back(patch_to_json(patch));
    const json out{{"patches", patches},
                   {"discarded", discarded},
                   {"plane", json{{"origin", point_to_json(doc.plane.origin)},
                                  {"axis_u", point_to_json(doc.plane.axis_u)},
                                  {"axis_v", point_to_json(doc.plane.axis_v)}}}};
    return out.dump(1);
}

PatchSetDocument parse_patchset_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("patches"))
        throw ParseError("patch document: expected {\"patches\": [...]}");
    PatchSetDocument out;
    for (const json& jp : doc["patches"]) {
        out.patches.push_back(patch_from_json(jp));
        if (jp.contains("provenance")) {
            out.provenance.push_back({jp["provenance"].value("source_curve", 0),
                                      jp["provenance"].value("history", std::string())});
        }
    }
    if (doc.contains("discarded"))
        for (const json& jp : doc["discarded"]) out.discarded.push_back(patch_from_json(jp));
    return out;
}

std::vector<Patch> load_patches_file(const std::string& path) {
    const std::string text = read_file(path);
    if (has_suffix(path, ".svg")) {
        return region_to_patches(parse_outline_svg(text)).patches;
    }
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (doc.is_object() && doc.contains("patches")) {
        return parse_patchset_json(text).patches;
    }
    PatchSetDocument generated = region_to_patches(parse_outline_json(text));
    return generated.patches;
}

namespace {

void svg_path_for_curve(std::ostream& out, const ClosedCurve& curve) {
    const Point2 start = curve.node(0);
    out << "M " << start.x << " " << start.y << " ";
    for (const CubicSegment& seg : curve.segments) {
        out << "C " << seg.p1.x << " " << seg.p1.y << " " << seg.p2.x << " " << seg.p2.y << " "
            << seg.p3.x << " " << seg.p3.y << " ";
    }
    out << "Z";
}

}  // namespace

std::string patchset_to_svg(const PatchSetDocument& doc) {
    Rect box{{0, 0}, {1, 1}};
    bool have_box = false;
    for (const ClosedCurve& curve : doc.input_curves) {
        box = have_box ? box.united(curve_control_bbox(curve)) : curve_control_bbox(curve);
        have_box = true;
    }
    const Point2 d = box.diagonal();
    const double margin = 0.05 * std::max({d.x, d.y, 1e-9});
    const double width = d.x + 2 * margin;
    const double height = d.y + 2 * margin;

    std::ostringstream out;
    out.precision(12);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << (box.min.x - margin) << " "
        << (-box.max.y - margin) << " " << width << " " << height << "\">\n";
    out << "<g transform=\"scale(1,-1)\">\n";

    out << "<g fill=\"#cccccc\" fill-opacity=\"0.5\" stroke=\"none\">\n";
    for (const ClosedCurve& region : doc.regions) {
        out << "<path d=\"";
        svg_path_for_curve(out, region);
        out << "\"/>\n";
    }
    out << "</g>\n";

    const double stroke = 0.004 * std::max(d.x + 2 * margin, d.y + 2 * margin);
    out << "<g fill=\"none\" stroke=\"#0000ff\" stroke-width=\"" << stroke << "\">\n";
    for (const Patch& patch : doc.patches) {
        ClosedCurve boundary = patch_boundary(patch);
        out << "<path d=\"";
        svg_path_for_curve(out, boundary);
        out << "\"/>\n";
    }
    out << "</g>\n";

    out << "<g fill=\"none\" stroke=\"#ff0000\" stroke-width=\"" << stroke << "\">\n";
    for (const CubicSegment& chord : doc.chords) {
        out << "<path d=\"M " << chord.p0.x << " " << chord.p0.y << " L " << chord.p3.x << " "
            << chord.p3.y << "\"/>\n";
    }
    out << "</g>\n";

    out << "<g fill=\"none\" stroke=\"#000000\" stroke-width=\"" << stroke << "\">\n";
    for (const ClosedCurve& curve : doc.input_curves) {
        out << "<path d=\"";
        svg_path_for_curve(out, curve);
        out << "\"/>\n";
    }
    out << "</g>\n</g>\n</svg>\n";
    return out.str();
}

std::string format_sig12(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", v);
    return buffer;
}

}  // namespace geokit
