#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "geokit/bounds.h"
#include "geokit/errors.h"
#include "geokit/io.h"
#include "geokit/pipeline.h"
#include "geokit/quadric.h"
#include "geokit/winding.h"

namespace {

using geokit::Transform3;

int fail(const std::string& kind, const std::string& message) {
    nlohmann::json err{{"error", kind}, {"message", message}};
    std::cerr << err.dump() << "\n";
    return 1;
}

double parse_number(const std::string& item, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
        if (used != item.size() || !std::isfinite(v))
            throw geokit::ParseError(std::string(what) + ": bad number '" + item + "'");
        return v;
    } catch (const std::logic_error&) {
        throw geokit::ParseError(std::string(what) + ": bad number '" + item + "'");
    }
}

Transform3 parse_transform(const std::string& spec) {
    Transform3 t;
    std::stringstream ss(spec);
    std::string item;
    std::vector<double> values;
    while (std::getline(ss, item, ',')) {
        values.push_back(parse_number(item, "--projected"));
    }
    if (values.size() != 12)
        throw geokit::ParseError("--projected expects 12 comma-separated values (row-major 3x4)");
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) t.m[i][j] = values[static_cast<std::size_t>(4 * i + j)];
    if (!t.is_rigid()) throw geokit::ParseError("--projected transform is not rigid");
    return t;
}

geokit::Point2 parse_point_arg(const std::string& spec) {
    const auto comma = spec.find(',');
    if (comma == std::string::npos)
        throw geokit::ParseError("--at expects \"x,y\"");
    return {parse_number(spec.substr(0, comma), "--at"),
            parse_number(spec.substr(comma + 1), "--at")};
}

// Round to 12 significant digits so the JSON numbers match the printed
// convention.
double round12(double v) {
    return std::strtod(geokit::format_sig12(v).c_str(), nullptr);
}

int cmd_patches(const std::string& in_path, const std::string& svg_path) {
    try {
        const std::vector<geokit::ClosedCurve> curves = geokit::load_outline_file(in_path);
        const geokit::PatchSetDocument doc = geokit::region_to_patches(curves);
        std::cout << geokit::patchset_to_json(doc) << "\n";
        if (!svg_path.empty()) {
            std::ofstream svg(svg_path, std::ios::binary);
            if (!svg) return fail("io", "cannot write " + svg_path);
            svg << geokit::patchset_to_svg(doc);
        }
        return 0;
    } catch (const geokit::Error& e) {
        return fail("pipeline", e.what());
    }
}

int cmd_winding(const std::string& in_path, const std::string& at) {
    try {
        const std::vector<geokit::ClosedCurve> curves = geokit::load_outline_file(in_path);
        const geokit::Point2 z = parse_point_arg(at);
        int total = 0;
        try {
            for (const geokit::ClosedCurve& curve : curves)
                total += geokit::winding_number(curve, z);
        } catch (const geokit::OnBoundary&) {
            std::cerr << "point lies on the boundary\n";
            return 2;
        }
        std::cout << total << "\n";
        return 0;
    } catch (const geokit::Error& e) {
        return fail("winding", e.what());
    }
}

int cmd_bounds(const std::string& in_path, const std::string& projected, bool fov, int depth) {
    try {
        const std::vector<geokit::Patch> patches = geokit::load_patches_file(in_path);
        if (patches.empty()) return fail("bounds", "no patches in input");
        nlohmann::json out;
        if (!projected.empty() || fov) {
            const Transform3 eye = projected.empty() ? Transform3{} : parse_transform(projected);
            const geokit::ProjectedBounds pb =
                geokit::projected_bounds(std::span<const geokit::Patch>(patches), eye, depth);
            out["projected"] = {
                {"min", {round12(pb.min_x_over_z), round12(pb.min_y_over_z)}},
                {"max", {round12(pb.max_x_over_z), round12(pb.max_y_over_z)}}};
            if (fov) {
                const double extent =
                    std::max({std::abs(pb.min_x_over_z), std::abs(pb.max_x_over_z),
                              std::abs(pb.min_y_over_z), std::abs(pb.max_y_over_z)});
                out["fov_radians"] = round12(2.0 * std::atan(extent));
            }
        } else {
            const geokit::Box3 box =
                geokit::patch_bbox(std::span<const geokit::Patch>(patches), depth);
            out["box"] = {{"min", {round12(box.min.x), round12(box.min.y), round12(box.min.z)}},
                          {"max", {round12(box.max.x), round12(box.max.y), round12(box.max.z)}}};
        }
        std::cout << out.dump(1) << "\n";
        return 0;
    } catch (const geokit::NonPositiveDepth& e) {
        return fail("NonPositiveDepth", e.what());
    } catch (const geokit::Error& e) {
        return fail("bounds", e.what());
    }
}

int cmd_sphere(int accuracy) {
    try {
        const std::vector<geokit::Patch> sphere = geokit::unit_sphere();
        geokit::PatchSetDocument doc;
        doc.patches = sphere;
        for (int k = 0; k < 8; ++k) doc.provenance.push_back({k, "octant"});
        nlohmann::json out = nlohmann::json::parse(geokit::patchset_to_json(doc));
        if (accuracy > 0) {
            out["radius_error"] = round12(geokit::radius_error(sphere, accuracy));
            out["accuracy_samples"] = accuracy;
        }
        std::cout << out.dump(1) << "\n";
        return 0;
    } catch (const geokit::Error& e) {
        return fail("sphere", e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geokit: Coons-patch partitioning of planar Bezier regions"};
    app.require_subcommand(1);

    std::string in_path, svg_path, projected, at;
    bool fov = false;
    int depth = 16;
    int accuracy = 0;

    CLI::App* patches = app.add_subcommand("patches", "decompose outlines into Coons patches");
    patches->add_option("--in", in_path, "outline file (JSON or .svg)")->required();
    patches->add_option("--emit-svg", svg_path, "write a diagnostic SVG");

    CLI::App* winding = app.add_subcommand("winding", "winding number about a point");
    winding->add_option("--in", in_path, "outline file (JSON or .svg)")->required();
    winding->add_option("--at", at, "query point \"x,y\"")->required();

    CLI::App* bounds = app.add_subcommand("bounds", "bounding box / projected bounds / FOV");
    bounds->add_option("--in", in_path, "patch-set JSON or outline file")->required();
    bounds->add_option("--projected", projected, "row-major 3x4 rigid transform, 12 values");
    bounds->add_flag("--fov", fov, "print the optimal field-of-view angle");
    bounds->add_option("--depth", depth, "recursion depth (default 16)");

    CLI::App* sphere = app.add_subcommand("sphere", "emit the 8-patch unit sphere");
    sphere->add_option("--accuracy", accuracy, "report max radius deviation over N^2 samples");

    CLI11_PARSE(app, argc, argv);

    try {
        if (patches->parsed()) return cmd_patches(in_path, svg_path);
        if (winding->parsed()) return cmd_winding(in_path, at);
        if (bounds->parsed()) return cmd_bounds(in_path, projected, fov, depth);
        if (sphere->parsed()) {
            if (sphere->count("--accuracy") && accuracy < 2)
                return fail("usage", "--accuracy needs at least 2 samples per direction");
            return cmd_sphere(sphere->count("--accuracy") ? accuracy : 0);
        }
    } catch (const std::exception& e) {
        return fail("error", e.what());
    }
    return 1;
}
