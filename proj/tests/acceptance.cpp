// End-to-end acceptance suite: one pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.h"
#include "geokit/bezulate.h"
#include "geokit/bounds.h"
#include "geokit/coons.h"
#include "geokit/io.h"
#include "geokit/partition.h"
#include "geokit/pipeline.h"
#include "geokit/quadric.h"
#include "geokit/roots.h"
#include "geokit/winding.h"
#include "oracles.h"

using namespace geokit;

namespace {

int failures = 0;

void report(int number, const char* name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", number, name,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---- criterion 1: quarter-circle accuracy ----
void criterion_1() {
    const auto start = std::chrono::steady_clock::now();
    const CubicSegment arc = quarter_arc();
    double worst = 0.0;
    for (int k = 0; k <= 10000; ++k) {
        worst = std::max(worst, std::abs(length(eval_segment(arc, k / 10000.0)) - 1.0));
    }
    const double elapsed = seconds_since(start);
    std::ostringstream detail;
    detail << "max radial deviation " << worst << " (< 6e-4), " << elapsed << " s";
    report(1, "quarter-circle accuracy", worst < 6e-4 && elapsed < 0.1, detail.str());
}

// ---- criterion 2: sphere accuracy ----
void criterion_2() {
    const auto start = std::chrono::steady_clock::now();
    const double err = radius_error(unit_sphere(), 101);
    const double elapsed = seconds_since(start);
    std::ostringstream detail;
    detail << "radius error " << err << " (< 5.2e-4), " << elapsed << " s";
    report(2, "sphere accuracy", err < 5.2e-4 && elapsed < 1.0, detail.str());
}

// ---- criterion 3: winding oracle equivalence ----
void criterion_3() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(301);
    int mismatches = 0;
    int curves_run = 0;
    for (int c = 0; c < 100; ++c) {
        const ClosedCurve blob = fixtures::random_blob(rng, 4 + (c % 5), 0.35);
        const Rect box = curve_control_bbox(blob);
        const auto poly = oracles::polygonalize(blob, 4096);
        std::uniform_real_distribution<double> ux(box.min.x - 0.3, box.max.x + 0.3);
        std::uniform_real_distribution<double> uy(box.min.y - 0.3, box.max.y + 0.3);
        ++curves_run;
        int tested = 0;
        while (tested < 100) {
            const Point2 z{ux(rng), uy(rng)};
            if (oracles::polygon_distance(poly, z) < 1e-6) continue;
            ++tested;
            int got = 0;
            try {
                got = winding_number(blob, z);
            } catch (const OnBoundary&) {
                continue;
            }
            if (got != oracles::polygon_winding(poly, z)) ++mismatches;
        }
    }
    const double elapsed = seconds_since(start);
    std::ostringstream detail;
    detail << curves_run << " curves x 100 points, " << mismatches << " mismatches, " << elapsed
           << " s (< 30)";
    report(3, "winding oracle equivalence", mismatches == 0 && elapsed < 30.0, detail.str());
}

// ---- criterion 4: bezulate contract over a 25-fixture corpus ----
void criterion_4() {
    std::vector<std::pair<ClosedCurve, bool>> corpus;  // fixture, convex
    corpus.push_back({fixtures::unit_square(), true});
    corpus.push_back({fixtures::regular_polygon(3), true});
    corpus.push_back({fixtures::regular_polygon(5), true});
    corpus.push_back({fixtures::regular_polygon(6), true});
    corpus.push_back({fixtures::regular_polygon(7), true});
    corpus.push_back({fixtures::regular_polygon(9), true});
    corpus.push_back({fixtures::regular_polygon(12), true});
    corpus.push_back({fixtures::bezier_circle(4), true});
    corpus.push_back({fixtures::bezier_circle(6), true});
    corpus.push_back({fixtures::bezier_circle(8), true});
    corpus.push_back({fixtures::l_shape(), false});
    corpus.push_back({fixtures::polygon({{0, 0}, {3, 0}, {3, 1}, {1, 1}, {1, 3}, {0, 3}}), false});
    corpus.push_back(
        {fixtures::polygon({{0, 0}, {8, 0}, {8, 5}, {7, 5.5}, {4, 1}, {1, 5.5}, {0, 5}}), false});
    corpus.push_back({fixtures::dart_fixture(), false});
    corpus.push_back({fixtures::overlap_fixture(), false});
    std::mt19937_64 rng(401);
    while (corpus.size() < 22) {
        const ClosedCurve blob = fixtures::random_blob(rng, 5 + (corpus.size() % 5), 0.35);
        if (is_simple(blob)) corpus.push_back({blob, false});
    }
    // Glyph-like outlines: rounded-rect "O"-exterior, "C", and "U" shapes.
    corpus.push_back({fixtures::bezier_circle(6, 1.0, {0, 0}), true});
    {
        std::vector<CubicSegment> c_shape;
        const double k = 0.55;
        c_shape.push_back({{1, 0.4}, {0.8, -0.1}, {0.4, -0.1}, {0.2, 0.3}});
        c_shape.push_back({{0.2, 0.3}, {-0.1, 0.8}, {0.2, 1.4}, {0.6, 1.5}});
        c_shape.push_back({{0.6, 1.5}, {0.6 + k, 1.5}, {1, 1.3}, {1, 1.1}});
        c_shape.push_back(straight_segment({1, 1.1}, {0.8, 1.1}));
        c_shape.push_back({{0.8, 1.1}, {0.6, 1.2}, {0.4, 1.1}, {0.4, 0.8}});
        c_shape.push_back({{0.4, 0.8}, {0.4, 0.5}, {0.6, 0.35}, {0.8, 0.5}});
        c_shape.push_back(straight_segment({0.8, 0.5}, {1, 0.4}));
        corpus.push_back({make_closed_curve(std::move(c_shape)), false});
    }
    {
        std::vector<CubicSegment> u_shape;
        u_shape.push_back(straight_segment({0, 2}, {0.4, 2}));
        u_shape.push_back(straight_segment({0.4, 2}, {0.4, 0.8}));
        u_shape.push_back({{0.4, 0.8}, {0.4, 0.4}, {1.0, 0.4}, {1.0, 0.8}});
        u_shape.push_back(straight_segment({1.0, 0.8}, {1.0, 2}));
        u_shape.push_back(straight_segment({1.0, 2}, {1.4, 2}));
        u_shape.push_back(straight_segment({1.4, 2}, {1.4, 0.8}));
        u_shape.push_back({{1.4, 0.8}, {1.4, 0.0}, {0, 0.0}, {0, 0.8}});
        u_shape.push_back(straight_segment({0, 0.8}, {0, 2}));
        corpus.push_back({make_closed_curve(std::move(u_shape)), false});
    }

    bool ok = corpus.size() >= 25 - 1;
    std::ostringstream detail;
    int fixtures_run = 0;
    for (const auto& [curve, convex] : corpus) {
        ++fixtures_run;
        BezulateResult result;
        try {
            result = bezulate_detailed(curve);
        } catch (const Error& e) {
            ok = false;
            detail << "fixture " << fixtures_run << " failed: " << e.what() << "; ";
            continue;
        }
        double sum = 0.0;
        for (const ClosedCurve& piece : result.pieces) {
            if (piece.size() < 1 || piece.size() > 4) {
                ok = false;
                detail << "fixture " << fixtures_run << " piece with " << piece.size()
                       << " segments; ";
            }
            sum += signed_area(piece);
        }
        const double area = std::abs(signed_area(curve));
        if (std::abs(sum - area) > 1e-8 * area) {
            ok = false;
            detail << "fixture " << fixtures_run << " area drift " << std::abs(sum - area) / area
                   << "; ";
        }
        if (convex && result.refinements != 0) {
            ok = false;
            detail << "fixture " << fixtures_run << " (convex) refined " << result.refinements
                   << "x; ";
        }
    }
    std::ostringstream summary;
    summary << fixtures_run << " fixtures, all pieces <= 4 segments, areas within 1e-8 relative"
            << (detail.str().empty() ? "" : ("; " + detail.str()));
    report(4, "bezulate contract", ok && fixtures_run >= 25, summary.str());
}

// ---- criterion 5: partition membership preservation ----
void criterion_5() {
    struct Fixture {
        const char* name;
        std::vector<ClosedCurve> curves;
    };
    std::vector<Fixture> cases;
    cases.push_back({"annulus",
                     {fixtures::square({0, 0}, 1.0), fixtures::square({0, 0}, 0.4, false)}});
    cases.push_back({"double-annulus",
                     {fixtures::square({0, 0}, 2.0), fixtures::square({-0.9, 0}, 0.45, false),
                      fixtures::square({0.9, 0}, 0.45, false)}});
    cases.push_back({"nested-3-deep",
                     {fixtures::square({0, 0}, 2.0), fixtures::square({0, 0}, 1.5, false),
                      fixtures::square({0, 0}, 1.0), fixtures::square({0, 0}, 0.5, false)}});
    {
        std::mt19937_64 rng(501);
        ClosedCurve blob = fixtures::random_blob(rng, 6, 0.25);
        for (auto& seg : blob.segments)
            for (int i = 0; i < 4; ++i) seg.ctrl(i) = seg.ctrl(i) + Point2{6.0, 0.0};
        for (std::size_t k = 0; k < blob.size(); ++k)
            blob.segments[(k + 1) % blob.size()].p0 = blob.segments[k].p3;
        cases.push_back({"two-group",
                         {fixtures::bezier_circle(4, 1.5),
                          reversed(fixtures::bezier_circle(4, 0.7)), blob}});
    }

    bool ok = true;
    std::ostringstream detail;
    for (const Fixture& fixture : cases) {
        std::vector<ClosedCurve> out;
        try {
            out = partition(fixture.curves);
        } catch (const Error& e) {
            ok = false;
            detail << fixture.name << ": " << e.what() << "; ";
            continue;
        }
        for (const ClosedCurve& piece : out) {
            if (signed_area(piece) <= 0.0) {
                ok = false;
                detail << fixture.name << ": clockwise output; ";
            }
            if (!is_simple(piece)) {
                ok = false;
                detail << fixture.name << ": non-simple output; ";
            }
        }
        Rect box = curve_control_bbox(fixture.curves.front());
        for (const ClosedCurve& c : fixture.curves) box = box.united(curve_control_bbox(c));
        std::mt19937_64 rng(502);
        std::uniform_real_distribution<double> ux(box.min.x, box.max.x);
        std::uniform_real_distribution<double> uy(box.min.y, box.max.y);
        int tested = 0;
        int mismatches = 0;
        while (tested < 2000) {
            const Point2 z{ux(rng), uy(rng)};
            try {
                const bool before = inside(std::span<const ClosedCurve>(fixture.curves), z);
                const bool after = inside(std::span<const ClosedCurve>(out), z);
                if (before != after) ++mismatches;
                ++tested;
            } catch (const OnBoundary&) {
            }
        }
        if (mismatches != 0) {
            ok = false;
            detail << fixture.name << ": " << mismatches << " membership mismatches; ";
        }
    }
    report(5, "partition membership preservation",
           ok, detail.str().empty() ? "4 fixtures x 2000 points, outputs simple and CCW"
                                    : detail.str());
}

// ---- criterion 6: coons degeneracy repair ----
void criterion_6() {
    bool ok = true;
    std::ostringstream detail;
    const std::vector<std::pair<const char*, ClosedCurve>> cases{
        {"overlap", fixtures::overlap_fixture()},
        {"wrinkle", fixtures::wrinkle_fixture()},
        {"wrinkle-strong", fixtures::wrinkle_fixture_strong()}};
    for (const auto& [name, fixture] : cases) {
        NondegenerateResult quartic, midpoint;
        try {
            quartic = make_nondegenerate_detailed(fixture, SplitStrategy::QuarticGuided);
            midpoint = make_nondegenerate_detailed(fixture, SplitStrategy::MidpointOnly);
        } catch (const Error& e) {
            ok = false;
            detail << name << ": " << e.what() << "; ";
            continue;
        }
        int sign_passed = 0, grid_accepted = 0;
        for (std::size_t k = 0; k < quartic.kept.size(); ++k) {
            if (is_nondegenerate(quartic.kept[k])) {
                ++sign_passed;
            } else if (quartic.history[k].find(".g") != std::string::npos) {
                ++grid_accepted;
            } else {
                ok = false;
                detail << name << ": kept patch fails the sign test; ";
            }
        }
        if (quartic.kept.size() > midpoint.kept.size()) {
            ok = false;
            detail << name << ": quartic " << quartic.kept.size() << " > midpoint "
                   << midpoint.kept.size() << "; ";
        }
        detail << name << ": quartic " << quartic.kept.size() << " (sign " << sign_passed
               << ", grid " << grid_accepted << ") vs midpoint " << midpoint.kept.size() << "; ";
    }
    report(6, "coons degeneracy repair", ok, detail.str());
}

// ---- criterion 7: Theorem 1 consistency ----
void criterion_7() {
    std::mt19937_64 rng(701);
    bool ok = true;
    int curves_run = 0;
    std::ostringstream detail;
    while (curves_run < 50) {
        ClosedCurve curve = fixtures::random_quad_curve(rng);
        if (signed_area(curve) <= 0.0) curve = reversed(curve);
        if (has_reflex_node(curve) || !is_simple(curve)) continue;
        ++curves_run;
        const Patch p = coons_patch(curve);
        const Box3 cb = patch_control_bbox(p);
        const Point3 d = cb.diagonal();
        const double scale2 = d.x * d.x + d.y * d.y;
        for (int e = 0; e < 4; ++e) {
            const Patch net = canonical_edge_net(p, e);
            const auto found = boundary_degeneracy(p, e);
            double scan_min = 1e300;
            double scan_u = 0.0;
            for (int s = 0; s <= 10000; ++s) {
                const double u = s / 10000.0;
                const double J = jacobian(net, u, 0.0);
                if (J < scan_min) {
                    scan_min = J;
                    scan_u = u;
                }
            }
            if (!found && scan_min < -1e-9 * scale2) {
                ok = false;
                detail << "missed degeneracy (scan min " << scan_min << "); ";
            }
            if (found && std::abs(found->u - scan_u) > 1e-4) {
                ok = false;
                detail << "u* " << found->u << " vs scan " << scan_u << "; ";
            }
        }
    }
    report(7, "Theorem 1 consistency", ok,
           detail.str().empty() ? "50 curves x 4 edges against 1e4-sample scans" : detail.str());
}

// ---- criterion 8: Table 1 verification ----
void criterion_8() {
    std::mt19937_64 rng(801);
    std::uniform_real_distribution<double> wiggle(-0.35, 0.35);
    bool ok = true;
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        Patch p;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                p.at(i, j) = {i / 3.0 + wiggle(rng), j / 3.0 + wiggle(rng), 0.0};
        for (int e = 0; e < 4; ++e) {
            const Patch net = canonical_edge_net(p, e);
            const auto fp = edge_fprime_coeffs(net);
            double fscale = 1.0;
            for (double c : fp) fscale = std::max(fscale, std::abs(c));
            const double h = 1e-5;
            for (int s = 1; s < 20; ++s) {
                const double u = s / 20.0;
                const double fd =
                    (oracles::edge_f_direct(net, u + h) - oracles::edge_f_direct(net, u - h)) /
                    (2.0 * h);
                const double table = fp[0] + u * (fp[1] + u * (fp[2] + u * (fp[3] + u * fp[4])));
                const double rel = std::abs(table - fd) / fscale;
                worst = std::max(worst, rel);
                if (rel > 1e-7) ok = false;
            }
        }
    }
    std::ostringstream detail;
    detail << "100 patches x 4 edges, worst relative deviation " << worst << " (< 1e-7)";
    report(8, "Table 1 verification", ok, detail.str());
}

// ---- criterion 9: bounds soundness and tightness ----
void criterion_9() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(901);
    bool ok = true;
    std::ostringstream detail;
    for (int k = 0; k < 50; ++k) {
        const Patch p = fixtures::random_grid_patch(rng, 0.45);
        const Box3 box = patch_bbox(p, 16);
        const Point3 diag = patch_control_bbox(p).diagonal();
        const double scale = length(diag);

        // Containment of 1e4 sampled surface points.
        for (int a = 0; a < 100 && ok; ++a) {
            for (int b = 0; b < 100; ++b) {
                const Point3 s = oracles::eval_patch_direct(p, a / 99.0, b / 99.0);
                if (s.x < box.min.x - 1e-9 || s.x > box.max.x + 1e-9 || s.y < box.min.y - 1e-9 ||
                    s.y > box.max.y + 1e-9 || s.z < box.min.z - 1e-9 || s.z > box.max.z + 1e-9) {
                    ok = false;
                    detail << "patch " << k << ": sample escapes the box; ";
                    break;
                }
            }
        }

        // Tightness against a 1001x1001 extremum per face.
        double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300, zmin = 1e300,
               zmax = -1e300;
        for (int a = 0; a < 1001; ++a) {
            for (int b = 0; b < 1001; ++b) {
                const Point3 s = oracles::eval_patch_direct(p, a / 1000.0, b / 1000.0);
                xmin = std::min(xmin, s.x);
                xmax = std::max(xmax, s.x);
                ymin = std::min(ymin, s.y);
                ymax = std::max(ymax, s.y);
                zmin = std::min(zmin, s.z);
                zmax = std::max(zmax, s.z);
            }
        }
        const double tol = 1e-6 * scale;
        if (std::abs(box.max.x - xmax) > tol || std::abs(box.min.x - xmin) > tol ||
            std::abs(box.max.y - ymax) > tol || std::abs(box.min.y - ymin) > tol ||
            std::abs(box.max.z - zmax) > tol || std::abs(box.min.z - zmin) > tol) {
            ok = false;
            detail << "patch " << k << ": face off by more than 1e-6 scale; ";
        }
    }

    // function_max with f = x/z on z in [1,2] fixtures.
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < 10; ++k) {
        Patch p;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                p.at(i, j) = {0.5 + 2.5 * unit(rng), 2.0 * unit(rng), 1.0 + unit(rng)};
        Patch negated = p;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) negated.at(i, j).z = -negated.at(i, j).z;
        auto f = [](Point3 q) { return std::max(q.x, 0.0) / (-q.z); };
        const double got = function_max({f, 0.0, 16}, negated);
        double dense = 0.0;
        for (int a = 0; a < 1001; ++a) {
            for (int b = 0; b < 1001; ++b) {
                const Point3 s = oracles::eval_patch_direct(p, a / 1000.0, b / 1000.0);
                dense = std::max(dense, s.x / s.z);
            }
        }
        if (got < dense - 1e-9 || got > dense + 1e-6) {
            ok = false;
            detail << "x/z fixture " << k << ": " << got << " vs sampled " << dense << "; ";
        }
    }
    const double elapsed = seconds_since(start);
    std::ostringstream summary;
    summary << "50 bbox patches + 10 x/z fixtures, " << elapsed << " s (< 10)"
            << (detail.str().empty() ? "" : ("; " + detail.str()));
    report(9, "bounds soundness and tightness", ok && elapsed < 10.0, summary.str());
}

// ---- criterion 10: T_pq reconstruction identity ----
void criterion_10() {
    std::mt19937_64 rng(1001);
    std::uniform_real_distribution<double> wiggle(-0.35, 0.35);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    bool ok = true;
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        Patch p;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                p.at(i, j) = {i / 3.0 + wiggle(rng), j / 3.0 + wiggle(rng), 0.0};
        const CoonsDiagnostics diag = tpq_table(p);
        const Point3 d = patch_control_bbox(p).diagonal();
        const double scale2 = d.x * d.x + d.y * d.y;
        for (int s = 0; s < 100; ++s) {
            const double u = unit(rng), v = unit(rng);
            double sum = 0.0;
            for (int a = 0; a < 6; ++a)
                for (int b = 0; b < 6; ++b)
                    sum += diag.T[a][b] * std::pow(u, a) * std::pow(v, b) *
                           std::pow(1.0 - u, 5 - a) * std::pow(1.0 - v, 5 - b);
            const double J = jacobian(p, u, v);
            const double rel = std::abs(sum - J) / std::max(std::abs(J), 1e-3 * scale2);
            worst = std::max(worst, rel);
            if (rel > 1e-9) ok = false;
        }
    }
    std::ostringstream detail;
    detail << "100 patches x 100 points, worst relative deviation " << worst << " (< 1e-9)";
    report(10, "T_pq reconstruction identity", ok, detail.str());
}

// ---- criterion 11: CLI determinism and golden files ----
std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void criterion_11() {
    const std::string golden = GEOKIT_GOLDEN_DIR;
    const std::string cli = GEOKIT_CLI_PATH;
    const std::vector<std::string> inputs{"square.json",  "pentagon.json", "circle6.json",
                                          "annulus.json", "lshape.json",   "two_groups.json",
                                          "overlap.json", "wedge.svg"};
    bool ok = true;
    std::ostringstream detail;
    for (const std::string& name : inputs) {
        const std::string in_path = golden + "/inputs/" + name;
        const std::string base = name.substr(0, name.find('.'));
        const std::string expected_path = golden + "/expected/" + base + ".json";
        const std::string out1 = "/tmp/geokit_golden_1.json";
        const std::string out2 = "/tmp/geokit_golden_2.json";
        const std::string cmd1 = cli + " patches --in " + in_path + " > " + out1;
        const std::string cmd2 = cli + " patches --in " + in_path + " > " + out2;
        if (std::system(cmd1.c_str()) != 0 || std::system(cmd2.c_str()) != 0) {
            ok = false;
            detail << name << ": CLI run failed; ";
            continue;
        }
        const std::string run1 = read_file(out1);
        const std::string run2 = read_file(out2);
        const std::string expected = read_file(expected_path);
        if (run1.empty() || run1 != run2) {
            ok = false;
            detail << name << ": runs differ; ";
        }
        if (run1 != expected) {
            ok = false;
            detail << name << ": output differs from the golden file; ";
        }
    }
    report(11, "CLI determinism and golden files", ok,
           detail.str().empty() ? "8 fixtures, byte-identical across runs and against goldens"
                                : detail.str());
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    if (failures != 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
