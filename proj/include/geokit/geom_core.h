#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "geokit/errors.h"

namespace geokit {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
    friend Point2 operator*(Point2 p, double s) { return {s * p.x, s * p.y}; }
    friend bool operator==(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(Point2 a, Point2 b) { return !(a == b); }
};

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Point3 operator+(Point3 a, Point3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Point3 operator-(Point3 a, Point3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Point3 operator*(double s, Point3 p) { return {s * p.x, s * p.y, s * p.z}; }
    friend bool operator==(Point3 a, Point3 b) { return a.x == b.x && a.y == b.y && a.z == b.z; }
};

inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double length(Point2 a) { return std::hypot(a.x, a.y); }
inline double dot(Point3 a, Point3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double length(Point3 a) { return std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z); }
inline bool finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }
inline bool finite(Point3 p) { return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z); }

struct Rect {
    Point2 min{0.0, 0.0};
    Point2 max{0.0, 0.0};

    bool contains(Point2 p) const {
        return min.x <= p.x && p.x <= max.x && min.y <= p.y && p.y <= max.y;
    }
    bool contains(const Rect& r) const {
        return min.x <= r.min.x && r.max.x <= max.x && min.y <= r.min.y && r.max.y <= max.y;
    }
    Point2 diagonal() const { return max - min; }
    Rect united(const Rect& r) const {
        return {{std::min(min.x, r.min.x), std::min(min.y, r.min.y)},
                {std::max(max.x, r.max.x), std::max(max.y, r.max.y)}};
    }
};

struct Box3 {
    Point3 min{};
    Point3 max{};

    bool contains(Point3 p) const {
        return min.x <= p.x && p.x <= max.x && min.y <= p.y && p.y <= max.y &&
               min.z <= p.z && p.z <= max.z;
    }
    Point3 diagonal() const { return max - min; }
};

// A cubic Bezier segment with control points p0..p3. The curve interpolates
// p0 and p3 and stays inside the convex hull of the four control points.
// Segments built as straight lines carry the flag; its invariant is
// colinear control points arranged in index order.
struct CubicSegment {
    Point2 p0, p1, p2, p3;
    bool straight = false;

    Point2& ctrl(int i) { return (&p0)[i]; }
    Point2 ctrl(int i) const { return (&p0)[i]; }
};

// Four identical control points: a stationary boundary point.
bool is_null_segment(const CubicSegment& seg);

// Flagged straight, or detectably so: colinear control points in index
// order (cross products of consecutive differences zero, dot products
// nonnegative).
bool is_straight(const CubicSegment& seg);

CubicSegment straight_segment(Point2 a, Point2 b);
CubicSegment null_segment(Point2 a);
CubicSegment reversed(const CubicSegment& seg);

Point2 eval_segment(const CubicSegment& seg, double t);
Point2 segment_derivative(const CubicSegment& seg, double t);

// A direction along the segment at its start/end that survives vanishing
// derivatives: the first nonzero control-point difference looking forward
// (resp. backward). Zero vector only for a null segment.
Point2 start_direction(const CubicSegment& seg);
Point2 end_direction(const CubicSegment& seg);

std::pair<CubicSegment, CubicSegment> split_segment(const CubicSegment& seg, double t);

Rect control_bbox(const CubicSegment& seg);
Rect segment_bbox(const CubicSegment& seg);

// Piecewise-cubic closed boundary. Segment k ends exactly where segment k+1
// begins; the last segment closes onto the first (bitwise-equal nodes).
struct ClosedCurve {
    std::vector<CubicSegment> segments;

    std::size_t size() const { return segments.size(); }
    Point2 node(std::size_t i) const { return segments[i % segments.size()].p0; }

    // Position at a "node units" parameter: integer part selects the
    // segment, fractional part the position along it. Wraps modulo size.
    Point2 point_at(double t) const;
};

// Validates closure/finiteness and returns the curve. Throws DomainError.
ClosedCurve make_closed_curve(std::vector<CubicSegment> segments);

ClosedCurve reversed(const ClosedCurve& curve);

Rect curve_bbox(const ClosedCurve& curve);
Rect curve_control_bbox(const ClosedCurve& curve);

// Signed area by Green's theorem, A = closed integral of x dy, computed
// exactly per segment from the power-basis product (degree-5 polynomial).
double signed_area(const ClosedCurve& curve);

double signed_area(std::span<const CubicSegment> segments);

// Contiguous run of segments from node i forward to node j (indices modulo
// node count). i == j is rejected.
std::vector<CubicSegment> subpath(const ClosedCurve& curve, std::size_t i, std::size_t j);

// Every segment replaced by its two halves at t = 1/2.
ClosedCurve refine_midpoints(const ClosedCurve& curve);

// Inserts a node at fractional parameter t (node units) and returns the
// curve re-rooted so the listing is unchanged apart from the extra node.
ClosedCurve insert_node(const ClosedCurve& curve, double t);

// Index of the node at parameter t after insert_node(curve, t).
std::size_t node_index_after_insert(const ClosedCurve& curve, double t);

// Node-units parameter wrapped into [0, size).
double wrap_param(const ClosedCurve& curve, double t);

// Whether insert_node(curve, t) actually adds a node (t not already one).
bool insertion_happens(const ClosedCurve& curve, double t);

// Parameter t re-expressed after a node was inserted at parameter `at`.
double translate_after_insert(const ClosedCurve& curve, double t, double at);

// Cuts the region in two along the straight chord between the points at
// parameters t1 and t2: the first piece runs t1 -> t2 plus the chord back,
// the second t2 -> t1 plus the opposite chord. Both inherit the curve's
// orientation.
std::pair<ClosedCurve, ClosedCurve> split_with_chord(const ClosedCurve& curve, double t1,
                                                     double t2);

struct Intersection {
    std::size_t segment;  // index into the curve / span
    double t;             // parameter on that segment
    double s;             // parameter along the query segment ab
};

// All points where the chain meets the closed segment ab, found by
// recursive bbox-overlap subdivision to parameter tolerance 1e-10 with
// Newton polishing. Duplicates within 1e-9 of parameter on one segment
// collapse; for ClosedCurve queries, hits shared across a node collapse
// too. Null segments are skipped. Throws OverlapIntersection when a
// segment lies exactly along ab over a positive span.
std::vector<Intersection> intersections(std::span<const CubicSegment> chain, Point2 a, Point2 b);
std::vector<Intersection> intersections(const ClosedCurve& curve, Point2 a, Point2 b);

// Pairwise segment-subdivision search for selfintersections at tolerance
// 1e-9 of the curve scale; contact at shared nodes is allowed.
bool is_simple(const ClosedCurve& curve);

// True when any point of the two boundaries comes within tol of touching.
bool curves_intersect(const ClosedCurve& a, const ClosedCurve& b);

// Bicubic Bezier patch: 4x4 control net (planar patches carry z = 0).
// orientation is +1/-1 relative to the source curve's normal.
struct Patch {
    std::array<std::array<Point3, 4>, 4> control{};
    int orientation = +1;

    Point3& at(int i, int j) { return control[i][j]; }
    Point3 at(int i, int j) const { return control[i][j]; }
};

Point3 eval_patch(const Patch& patch, double u, double v);
Box3 patch_control_bbox(const Patch& patch);

}  // namespace geokit
