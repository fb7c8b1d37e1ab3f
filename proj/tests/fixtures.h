#pragma once

// Shared geometry fixtures for the test and acceptance suites.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "geokit/geom_core.h"
#include "geokit/quadric.h"

namespace fixtures {

using geokit::ClosedCurve;
using geokit::CubicSegment;
using geokit::Point2;
using geokit::Point3;

inline ClosedCurve polygon(const std::vector<Point2>& nodes) {
    std::vector<CubicSegment> segs;
    for (std::size_t k = 0; k < nodes.size(); ++k)
        segs.push_back(geokit::straight_segment(nodes[k], nodes[(k + 1) % nodes.size()]));
    return geokit::make_closed_curve(std::move(segs));
}

inline ClosedCurve unit_square() {
    return polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

inline ClosedCurve square(Point2 center, double half, bool ccw = true) {
    std::vector<Point2> nodes{{center.x - half, center.y - half},
                              {center.x + half, center.y - half},
                              {center.x + half, center.y + half},
                              {center.x - half, center.y + half}};
    if (!ccw) std::reverse(nodes.begin(), nodes.end());
    return polygon(nodes);
}

inline ClosedCurve regular_polygon(int n, double radius = 1.0, Point2 center = {0, 0}) {
    std::vector<Point2> nodes;
    for (int k = 0; k < n; ++k) {
        const double a = 2.0 * M_PI * k / n;
        nodes.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
    }
    return polygon(nodes);
}

// Circle of radius r from n cubic arcs (kappa = 4/3 tan(pi/2n)).
inline ClosedCurve bezier_circle(int n, double r = 1.0, Point2 center = {0, 0}) {
    const double kappa = 4.0 / 3.0 * std::tan(M_PI / (2.0 * n));
    std::vector<CubicSegment> segs;
    std::vector<Point2> nodes;
    for (int k = 0; k <= n; ++k) {
        const double a = 2.0 * M_PI * k / n;
        nodes.push_back({center.x + r * std::cos(a), center.y + r * std::sin(a)});
    }
    nodes.back() = nodes.front();
    for (int k = 0; k < n; ++k) {
        const double a0 = 2.0 * M_PI * k / n;
        const double a1 = 2.0 * M_PI * (k + 1) / n;
        const Point2 t0{-std::sin(a0), std::cos(a0)};
        const Point2 t1{-std::sin(a1), std::cos(a1)};
        segs.push_back({nodes[k], nodes[k] + (kappa * r) * t0, nodes[k + 1] - (kappa * r) * t1,
                        nodes[k + 1]});
    }
    return geokit::make_closed_curve(std::move(segs));
}

// L-shaped hexagon with a notch: chord (0)-(3) crosses the exterior.
inline ClosedCurve l_shape() {
    return polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
}

// Smooth random closed blob: n nodes on a radius-perturbed circle joined
// with Catmull-Rom style tangents. Simple for modest amplitudes.
inline ClosedCurve random_blob(std::mt19937_64& rng, int n_nodes = 6, double amplitude = 0.3) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> radii;
    for (int k = 0; k < n_nodes; ++k) radii.push_back(1.0 + amplitude * (2.0 * unit(rng) - 1.0));
    std::vector<Point2> nodes;
    for (int k = 0; k < n_nodes; ++k) {
        const double a = 2.0 * M_PI * k / n_nodes;
        nodes.push_back({radii[k] * std::cos(a), radii[k] * std::sin(a)});
    }
    std::vector<CubicSegment> segs;
    for (int k = 0; k < n_nodes; ++k) {
        const Point2 p = nodes[k];
        const Point2 q = nodes[(k + 1) % n_nodes];
        const Point2 before = nodes[(k + n_nodes - 1) % n_nodes];
        const Point2 after = nodes[(k + 2) % n_nodes];
        const Point2 tp = 0.5 * (q - before);
        const Point2 tq = 0.5 * (after - p);
        segs.push_back({p, p + (1.0 / 3.0) * tp, q - (1.0 / 3.0) * tq, q});
    }
    return geokit::make_closed_curve(std::move(segs));
}

inline CubicSegment random_segment(std::mt19937_64& rng, double span = 2.0) {
    std::uniform_real_distribution<double> coord(-span, span);
    return {{coord(rng), coord(rng)},
            {coord(rng), coord(rng)},
            {coord(rng), coord(rng)},
            {coord(rng), coord(rng)}};
}

inline geokit::Patch random_patch3(std::mt19937_64& rng, double span = 2.0) {
    std::uniform_real_distribution<double> coord(-span, span);
    geokit::Patch p;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) p.at(i, j) = {coord(rng), coord(rng), coord(rng)};
    return p;
}

// Smooth random patch: a perturbed flat grid, so extrema are well behaved.
inline geokit::Patch random_grid_patch(std::mt19937_64& rng, double amplitude = 0.4) {
    std::uniform_real_distribution<double> unit(-amplitude, amplitude);
    geokit::Patch p;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            p.at(i, j) = {i / 3.0 + unit(rng), j / 3.0 + unit(rng), unit(rng)};
        }
    }
    return p;
}

// Random 4-segment closed curve built on a convex quadrilateral with
// bounded control perturbations; resample until counterclockwise with no
// reflex tangents (checked by the caller when needed).
inline ClosedCurve random_quad_curve(std::mt19937_64& rng, double wiggle = 0.25) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Point2> nodes;
    for (int k = 0; k < 4; ++k) {
        const double a = 2.0 * M_PI * (k + 0.2 * unit(rng)) / 4.0;
        const double r = 1.0 + 0.4 * unit(rng);
        nodes.push_back({r * std::cos(a), r * std::sin(a)});
    }
    std::vector<CubicSegment> segs;
    for (int k = 0; k < 4; ++k) {
        const Point2 p = nodes[k];
        const Point2 q = nodes[(k + 1) % 4];
        const Point2 d = q - p;
        const Point2 n{-d.y, d.x};
        const double w1 = wiggle * (2.0 * unit(rng) - 1.0);
        const double w2 = wiggle * (2.0 * unit(rng) - 1.0);
        segs.push_back({p, p + (1.0 / 3.0) * d + w1 * n, p + (2.0 / 3.0) * d + w2 * n, q});
    }
    return geokit::make_closed_curve(std::move(segs));
}

// Four-segment boundary whose Coons patch folds over its bottom edge: the
// bottom edge hooks wide of both box corners, so J(u,0) turns negative in
// the edge interior while the corners stay clean.
inline ClosedCurve overlap_fixture() {
    std::vector<CubicSegment> segs;
    segs.push_back({{0, 0}, {1.571537, -0.061204}, {-0.611045, 0.329982}, {1, 0}});
    segs.push_back(geokit::straight_segment({1, 0}, {1, 1.612455}));
    segs.push_back(geokit::straight_segment({1, 1.612455}, {0, 1.612455}));
    segs.push_back(geokit::straight_segment({0, 1.612455}, {0, 0}));
    return geokit::make_closed_curve(std::move(segs));
}

// Unit square with every edge's control tangents rotated inward by theta
// and stretched by k. Strong swirls fold the interior while all four
// edges stay nondegenerate: k = 2.5 gives a pure internal wrinkle,
// k = 2.0 a mixed-sign T table whose Jacobian never changes sign.
inline ClosedCurve swirl_fixture(double k, double theta) {
    const std::vector<Point2> nodes{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    std::vector<CubicSegment> segs;
    for (int i = 0; i < 4; ++i) {
        const Point2 a = nodes[i];
        const Point2 b = nodes[(i + 1) % 4];
        const Point2 d{(b.x - a.x) / 3.0 * k, (b.y - a.y) / 3.0 * k};
        auto rot = [](Point2 v, double t) {
            return Point2{v.x * std::cos(t) - v.y * std::sin(t),
                          v.x * std::sin(t) + v.y * std::cos(t)};
        };
        segs.push_back({a, a + rot(d, theta), b - rot(d, -theta), b});
    }
    return geokit::make_closed_curve(std::move(segs));
}

inline ClosedCurve wrinkle_fixture() { return swirl_fixture(2.5, 0.6); }
inline ClosedCurve wrinkle_fixture_strong() { return swirl_fixture(3.0, 0.6); }
inline ClosedCurve grid_accept_fixture() { return swirl_fixture(2.0, 0.6); }

// One reflex vertex at (2,1).
inline ClosedCurve dart_fixture() {
    return polygon({{0, 0}, {2, 1}, {4, 0}, {2, 4}});
}

// Star flower: petal tips on the unit circle, segments diving toward the
// center. With five petals no tip-to-tip chord stays inside, so bezulate
// must refine before it can cut.
inline ClosedCurve flower_fixture(int petals = 5, double pull = 0.12) {
    std::vector<CubicSegment> segs;
    for (int k = 0; k < petals; ++k) {
        const double a0 = 2.0 * M_PI * k / petals;
        const double a1 = 2.0 * M_PI * (k + 1) / petals;
        const Point2 t0{std::cos(a0), std::sin(a0)};
        const Point2 t1{std::cos(a1), std::sin(a1)};
        segs.push_back({t0, pull * t0, pull * t1, t1});
    }
    for (std::size_t k = 0; k < segs.size(); ++k)
        segs[(k + 1) % segs.size()].p0 = segs[k].p3;
    return geokit::make_closed_curve(std::move(segs));
}

}  // namespace fixtures
