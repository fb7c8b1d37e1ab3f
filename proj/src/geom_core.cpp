#include "geokit/geom_core.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "geokit/orient.h"

namespace geokit {

namespace {

double lerp(double a, double b, double t) { return (1.0 - t) * a + t * b; }
Point2 lerp(Point2 a, Point2 b, double t) { return {lerp(a.x, b.x, t), lerp(a.y, b.y, t)}; }

void ensure_finite(const CubicSegment& seg) {
    if (!finite(seg.p0) || !finite(seg.p1) || !finite(seg.p2) || !finite(seg.p3))
        throw DomainError("segment has nonfinite control point");
}

// Power-basis coefficients of one coordinate of a cubic segment.
std::array<double, 4> power_coeffs(double c0, double c1, double c2, double c3) {
    return {c0,
            3.0 * (c1 - c0),
            3.0 * (c0 - 2.0 * c1 + c2),
            c3 - c0 + 3.0 * (c1 - c2)};
}

}  // namespace

bool is_null_segment(const CubicSegment& seg) {
    return seg.p0 == seg.p1 && seg.p1 == seg.p2 && seg.p2 == seg.p3;
}

bool is_straight(const CubicSegment& seg) {
    if (is_null_segment(seg)) return false;
    if (seg.straight) return true;
    const Point2 d0 = seg.p1 - seg.p0;
    const Point2 d1 = seg.p2 - seg.p1;
    const Point2 d2 = seg.p3 - seg.p2;
    return cross(d0, d1) == 0.0 && cross(d1, d2) == 0.0 && cross(d0, d2) == 0.0 &&
           dot(d0, d1) >= 0.0 && dot(d1, d2) >= 0.0 && dot(d0, d2) >= 0.0;
}

CubicSegment straight_segment(Point2 a, Point2 b) {
    const Point2 d = b - a;
    return {a, a + (1.0 / 3.0) * d, a + (2.0 / 3.0) * d, b, true};
}

CubicSegment null_segment(Point2 a) { return {a, a, a, a}; }

CubicSegment reversed(const CubicSegment& seg) {
    return {seg.p3, seg.p2, seg.p1, seg.p0, seg.straight};
}

Point2 eval_segment(const CubicSegment& seg, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("eval_segment: t outside [0,1]");
    const Point2 a = lerp(seg.p0, seg.p1, t);
    const Point2 b = lerp(seg.p1, seg.p2, t);
    const Point2 c = lerp(seg.p2, seg.p3, t);
    const Point2 ab = lerp(a, b, t);
    const Point2 bc = lerp(b, c, t);
    return lerp(ab, bc, t);
}

Point2 segment_derivative(const CubicSegment& seg, double t) {
    const Point2 d0 = seg.p1 - seg.p0;
    const Point2 d1 = seg.p2 - seg.p1;
    const Point2 d2 = seg.p3 - seg.p2;
    const double mt = 1.0 - t;
    return 3.0 * (mt * mt * d0 + 2.0 * mt * t * d1 + t * t * d2);
}

Point2 start_direction(const CubicSegment& seg) {
    for (Point2 d : {seg.p1 - seg.p0, seg.p2 - seg.p0, seg.p3 - seg.p0})
        if (d.x != 0.0 || d.y != 0.0) return d;
    return {0.0, 0.0};
}

Point2 end_direction(const CubicSegment& seg) {
    for (Point2 d : {seg.p3 - seg.p2, seg.p3 - seg.p1, seg.p3 - seg.p0})
        if (d.x != 0.0 || d.y != 0.0) return d;
    return {0.0, 0.0};
}

std::pair<CubicSegment, CubicSegment> split_segment(const CubicSegment& seg, double t) {
    if (!(t > 0.0 && t < 1.0)) throw DomainError("split_segment: t outside (0,1)");
    const Point2 a = lerp(seg.p0, seg.p1, t);
    const Point2 b = lerp(seg.p1, seg.p2, t);
    const Point2 c = lerp(seg.p2, seg.p3, t);
    const Point2 ab = lerp(a, b, t);
    const Point2 bc = lerp(b, c, t);
    const Point2 m = lerp(ab, bc, t);
    return {CubicSegment{seg.p0, a, ab, m, seg.straight},
            CubicSegment{m, bc, c, seg.p3, seg.straight}};
}

Rect control_bbox(const CubicSegment& seg) {
    Rect r{seg.p0, seg.p0};
    for (int i = 1; i < 4; ++i) {
        const Point2 p = seg.ctrl(i);
        r.min.x = std::min(r.min.x, p.x);
        r.min.y = std::min(r.min.y, p.y);
        r.max.x = std::max(r.max.x, p.x);
        r.max.y = std::max(r.max.y, p.y);
    }
    return r;
}

Rect segment_bbox(const CubicSegment& seg) {
    Rect r{seg.p0, seg.p0};
    auto extend = [&r](Point2 p) {
        r.min.x = std::min(r.min.x, p.x);
        r.min.y = std::min(r.min.y, p.y);
        r.max.x = std::max(r.max.x, p.x);
        r.max.y = std::max(r.max.y, p.y);
    };
    extend(seg.p3);
    // Interior extrema where the derivative quadratic vanishes, per axis.
    for (int axis = 0; axis < 2; ++axis) {
        auto coord = [axis](Point2 p) { return axis == 0 ? p.x : p.y; };
        const double d0 = coord(seg.p1) - coord(seg.p0);
        const double d1 = coord(seg.p2) - coord(seg.p1);
        const double d2 = coord(seg.p3) - coord(seg.p2);
        // derivative/3 = d0(1-t)^2 + 2 d1 t(1-t) + d2 t^2
        const double a = d0 - 2.0 * d1 + d2;
        const double b = 2.0 * (d1 - d0);
        const double c = d0;
        if (a == 0.0) {
            if (b != 0.0) {
                const double t = -c / b;
                if (t > 0.0 && t < 1.0) extend(eval_segment(seg, t));
            }
            continue;
        }
        const double disc = b * b - 4.0 * a * c;
        if (disc < 0.0) continue;
        const double sq = std::sqrt(disc);
        const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
        for (double t : {q / a, c != 0.0 && q != 0.0 ? c / q : -1.0}) {
            if (t > 0.0 && t < 1.0) extend(eval_segment(seg, t));
        }
    }
    return r;
}

Point2 ClosedCurve::point_at(double t) const {
    const double n = static_cast<double>(segments.size());
    double w = std::fmod(t, n);
    if (w < 0.0) w += n;
    std::size_t k = static_cast<std::size_t>(w);
    if (k >= segments.size()) k = segments.size() - 1;
    double f = w - static_cast<double>(k);
    return eval_segment(segments[k], f);
}

ClosedCurve make_closed_curve(std::vector<CubicSegment> segments) {
    if (segments.empty()) throw DomainError("closed curve needs at least one segment");
    for (std::size_t k = 0; k < segments.size(); ++k) {
        ensure_finite(segments[k]);
        const Point2 tail = segments[k].p3;
        const Point2 head = segments[(k + 1) % segments.size()].p0;
        if (tail != head) throw DomainError("closed curve nodes do not match exactly");
    }
    return ClosedCurve{std::move(segments)};
}

ClosedCurve reversed(const ClosedCurve& curve) {
    ClosedCurve out;
    out.segments.reserve(curve.size());
    for (auto it = curve.segments.rbegin(); it != curve.segments.rend(); ++it)
        out.segments.push_back(reversed(*it));
    return out;
}

Rect curve_bbox(const ClosedCurve& curve) {
    Rect r = segment_bbox(curve.segments.front());
    for (std::size_t k = 1; k < curve.size(); ++k) r = r.united(segment_bbox(curve.segments[k]));
    return r;
}

Rect curve_control_bbox(const ClosedCurve& curve) {
    Rect r = control_bbox(curve.segments.front());
    for (std::size_t k = 1; k < curve.size(); ++k) r = r.united(control_bbox(curve.segments[k]));
    return r;
}

double signed_area(std::span<const CubicSegment> segments) {
    double area = 0.0;
    for (const CubicSegment& seg : segments) {
        const auto x = power_coeffs(seg.p0.x, seg.p1.x, seg.p2.x, seg.p3.x);
        const auto y = power_coeffs(seg.p0.y, seg.p1.y, seg.p2.y, seg.p3.y);
        // integral over [0,1] of x(t) y'(t) dt
        double contrib = 0.0;
        for (int i = 0; i < 4; ++i) {
            for (int j = 1; j < 4; ++j) {
                contrib += x[i] * y[j] * j / static_cast<double>(i + j);
            }
        }
        area += contrib;
    }
    return area;
}

double signed_area(const ClosedCurve& curve) {
    return signed_area(std::span<const CubicSegment>(curve.segments));
}

std::vector<CubicSegment> subpath(const ClosedCurve& curve, std::size_t i, std::size_t j) {
    const std::size_t n = curve.size();
    i %= n;
    j %= n;
    if (i == j) throw DomainError("subpath: identical endpoints");
    std::vector<CubicSegment> out;
    for (std::size_t k = i; k != j; k = (k + 1) % n) out.push_back(curve.segments[k]);
    return out;
}

ClosedCurve refine_midpoints(const ClosedCurve& curve) {
    ClosedCurve out;
    out.segments.reserve(2 * curve.size());
    for (const CubicSegment& seg : curve.segments) {
        auto [left, right] = split_segment(seg, 0.5);
        out.segments.push_back(left);
        out.segments.push_back(right);
    }
    return out;
}

ClosedCurve insert_node(const ClosedCurve& curve, double t) {
    const double n = static_cast<double>(curve.size());
    double w = std::fmod(t, n);
    if (w < 0.0) w += n;
    std::size_t k = static_cast<std::size_t>(w);
    if (k >= curve.size()) k = curve.size() - 1;
    const double f = w - static_cast<double>(k);
    ClosedCurve out = curve;
    if (f <= 0.0 || f >= 1.0) return out;
    auto [left, right] = split_segment(curve.segments[k], f);
    out.segments[k] = left;
    out.segments.insert(out.segments.begin() + static_cast<std::ptrdiff_t>(k) + 1, right);
    return out;
}

std::size_t node_index_after_insert(const ClosedCurve& curve, double t) {
    const double n = static_cast<double>(curve.size());
    double w = std::fmod(t, n);
    if (w < 0.0) w += n;
    std::size_t k = static_cast<std::size_t>(w);
    if (k >= curve.size()) k = curve.size() - 1;
    const double f = w - static_cast<double>(k);
    return (f <= 0.0) ? k : ((f >= 1.0) ? (k + 1) % curve.size() : k + 1);
}

double wrap_param(const ClosedCurve& curve, double t) {
    const double n = static_cast<double>(curve.size());
    double w = std::fmod(t, n);
    if (w < 0.0) w += n;
    return w;
}

bool insertion_happens(const ClosedCurve& curve, double t) {
    const double w = wrap_param(curve, t);
    const double f = w - std::floor(w);
    return f > 0.0 && f < 1.0;
}

double translate_after_insert(const ClosedCurve& curve, double t, double at) {
    const double w = wrap_param(curve, t);
    const double wa = wrap_param(curve, at);
    const double ka = std::floor(wa);
    const double fa = wa - ka;
    if (fa <= 0.0) return w;  // nothing was inserted
    const double k = std::floor(w);
    const double f = w - k;
    if (k < ka) return w;
    if (k > ka) return w + 1.0;
    return f < fa ? k + f / fa : (k + 1.0) + (f - fa) / (1.0 - fa);
}

std::pair<ClosedCurve, ClosedCurve> split_with_chord(const ClosedCurve& curve, double t1,
                                                     double t2) {
    ClosedCurve c1 = insert_node(curve, t1);
    std::size_t i1 = node_index_after_insert(curve, t1);
    const double t2_shifted = translate_after_insert(curve, t2, t1);
    const std::size_t i2 = node_index_after_insert(c1, t2_shifted);
    ClosedCurve c2 = insert_node(c1, t2_shifted);
    if (insertion_happens(c1, t2_shifted) && i2 <= i1) ++i1;
    if (i1 == i2) throw DomainError("split_with_chord: parameters collapse to one node");
    const Point2 P = c2.node(i1);
    const Point2 H = c2.node(i2);
    if (P == H) throw DomainError("split_with_chord: coincident split points");

    std::vector<CubicSegment> first = subpath(c2, i1, i2);
    first.push_back(straight_segment(H, P));
    std::vector<CubicSegment> second = subpath(c2, i2, i1);
    second.push_back(straight_segment(P, H));
    return {make_closed_curve(std::move(first)), make_closed_curve(std::move(second))};
}

namespace {

bool segment_overlaps_rect(Point2 a, Point2 b, const Rect& r) {
    // Liang-Barsky clip of ab against r.
    double tmin = 0.0, tmax = 1.0;
    const double d[2] = {b.x - a.x, b.y - a.y};
    const double lo[2] = {r.min.x, r.min.y};
    const double hi[2] = {r.max.x, r.max.y};
    const double o[2] = {a.x, a.y};
    for (int axis = 0; axis < 2; ++axis) {
        if (d[axis] == 0.0) {
            if (o[axis] < lo[axis] || o[axis] > hi[axis]) return false;
            continue;
        }
        double t0 = (lo[axis] - o[axis]) / d[axis];
        double t1 = (hi[axis] - o[axis]) / d[axis];
        if (t0 > t1) std::swap(t0, t1);
        tmin = std::max(tmin, t0);
        tmax = std::min(tmax, t1);
        if (tmin > tmax) return false;
    }
    return true;
}

struct SegmentQuery {
    Point2 a, b;
    Point2 dir;        // b - a
    double len2;       // |b - a|^2
    double geom_tol;   // absolute distance tolerance for hit verification
};

// Signed-area-style distance surrogate of curve point from the query line.
double line_deviation(const SegmentQuery& q, Point2 p) { return cross(q.dir, p - q.a); }

void collect_candidates(const CubicSegment& seg, double t0, double t1, const SegmentQuery& q,
                        int depth, std::vector<double>* out) {
    if (!segment_overlaps_rect(q.a, q.b, control_bbox(seg))) return;
    if (t1 - t0 < 1e-10 || depth == 0) {
        out->push_back(0.5 * (t0 + t1));
        return;
    }
    auto [left, right] = split_segment(seg, 0.5);
    const double tm = 0.5 * (t0 + t1);
    collect_candidates(left, t0, tm, q, depth - 1, out);
    collect_candidates(right, tm, t1, q, depth - 1, out);
}

// Newton refinement of the cubic cross(dir, seg(t) - a) about t.
double polish_root(const CubicSegment& seg, const SegmentQuery& q, double t) {
    for (int iter = 0; iter < 3; ++iter) {
        const double f = line_deviation(q, eval_segment(seg, t));
        const double fp = cross(q.dir, segment_derivative(seg, t));
        if (fp == 0.0) break;
        double next = t - f / fp;
        if (!(next >= 0.0 && next <= 1.0)) break;
        t = next;
    }
    return t;
}

}  // namespace

std::vector<Intersection> intersections(std::span<const CubicSegment> chain, Point2 a, Point2 b) {
    if (a == b) throw DomainError("intersections: degenerate query segment");
    if (!finite(a) || !finite(b)) throw DomainError("intersections: nonfinite query segment");

    SegmentQuery q;
    q.a = a;
    q.b = b;
    q.dir = b - a;
    q.len2 = dot(q.dir, q.dir);

    Rect scale_box{a, a};
    scale_box = scale_box.united(Rect{b, b});
    for (const CubicSegment& seg : chain) scale_box = scale_box.united(control_bbox(seg));
    const double scale = length(scale_box.diagonal());
    q.geom_tol = std::max(scale, 1.0e-300) * 1e-9;

    std::vector<Intersection> hits;
    for (std::size_t k = 0; k < chain.size(); ++k) {
        const CubicSegment& seg = chain[k];
        if (is_null_segment(seg)) continue;

        // Exact-overlap detection: all control points exactly on line ab
        // means the whole segment runs along the query line.
        if (orientation(a, b, seg.p0) == 0 && orientation(a, b, seg.p1) == 0 &&
            orientation(a, b, seg.p2) == 0 && orientation(a, b, seg.p3) == 0) {
            double smin = std::numeric_limits<double>::infinity();
            double smax = -smin;
            for (int i = 0; i < 4; ++i) {
                const double s = dot(seg.ctrl(i) - a, q.dir) / q.len2;
                smin = std::min(smin, s);
                smax = std::max(smax, s);
            }
            if (std::min(smax, 1.0) - std::max(smin, 0.0) > 1e-12)
                throw OverlapIntersection("query segment coincides with a curve segment");
            continue;
        }

        std::vector<double> candidates;
        collect_candidates(seg, 0.0, 1.0, q, 64, &candidates);
        for (double t : candidates) {
            t = polish_root(seg, q, t);
            const Point2 p = eval_segment(seg, t);
            const double s = dot(p - a, q.dir) / q.len2;
            if (s < -1e-12 || s > 1.0 + 1e-12) continue;
            const Point2 on_ab = a + std::clamp(s, 0.0, 1.0) * q.dir;
            if (length(p - on_ab) > q.geom_tol) continue;
            hits.push_back({k, std::clamp(t, 0.0, 1.0), std::clamp(s, 0.0, 1.0)});
        }
    }

    std::sort(hits.begin(), hits.end(), [](const Intersection& u, const Intersection& v) {
        return u.segment != v.segment ? u.segment < v.segment : u.t < v.t;
    });
    std::vector<Intersection> dedup;
    for (const Intersection& h : hits) {
        if (!dedup.empty() && dedup.back().segment == h.segment &&
            h.t - dedup.back().t < 1e-9)
            continue;
        dedup.push_back(h);
    }
    return dedup;
}

std::vector<Intersection> intersections(const ClosedCurve& curve, Point2 a, Point2 b) {
    std::vector<Intersection> hits =
        intersections(std::span<const CubicSegment>(curve.segments), a, b);
    // Snap near-node parameters onto the exact node (so downstream node
    // insertion never manufactures sliver segments) and collapse hits
    // shared across a node.
    const std::size_t n = curve.size();
    for (Intersection& h : hits) {
        if (h.t <= 1e-9) {
            h.t = 0.0;
        } else if (h.t >= 1.0 - 1e-9) {
            h.segment = (h.segment + 1) % n;
            h.t = 0.0;
        }
    }
    std::sort(hits.begin(), hits.end(), [](const Intersection& u, const Intersection& v) {
        return u.segment != v.segment ? u.segment < v.segment : u.t < v.t;
    });
    std::vector<Intersection> out;
    for (const Intersection& h : hits) {
        if (!out.empty() && out.back().segment == h.segment && h.t - out.back().t < 1e-9)
            continue;
        out.push_back(h);
    }
    return out;
}

namespace {

struct Piece {
    CubicSegment seg;
    double t0, t1;
};

bool rects_overlap(const Rect& a, const Rect& b) {
    return a.min.x <= b.max.x && b.min.x <= a.max.x && a.min.y <= b.max.y && b.min.y <= a.max.y;
}

double rect_diameter(const Rect& r) { return length(r.diagonal()); }

// Legitimate contact point between two segments (a shared node), with a
// parameter-space exclusion radius around it. Pairs of pieces inside the
// exclusion square are pruned early: smooth joints hug each other near the
// node and would otherwise keep every subdivision level busy.
struct AllowedContact {
    double ta, tb, radius;
};

bool inside_exclusion(const Piece& pa, const Piece& pb,
                      std::span<const AllowedContact> allowed) {
    for (const AllowedContact& c : allowed) {
        if (pa.t0 >= c.ta - c.radius && pa.t1 <= c.ta + c.radius && pb.t0 >= c.tb - c.radius &&
            pb.t1 <= c.tb + c.radius)
            return true;
    }
    return false;
}

// Do two (sub)segments come within tol of one another away from the
// allowed contacts?
bool pieces_touch(const Piece& pa, const Piece& pb, double tol,
                  std::span<const AllowedContact> allowed, int depth) {
    if (inside_exclusion(pa, pb, allowed)) return false;
    const Rect ra = control_bbox(pa.seg);
    const Rect rb = control_bbox(pb.seg);
    const Rect ra_fat{{ra.min.x - tol, ra.min.y - tol}, {ra.max.x + tol, ra.max.y + tol}};
    if (!rects_overlap(ra_fat, rb)) return false;
    if (depth == 0 || (rect_diameter(ra) < tol && rect_diameter(rb) < tol)) return true;
    const bool split_a = rect_diameter(ra) >= rect_diameter(rb);
    if (split_a && !is_null_segment(pa.seg)) {
        auto [l, r] = split_segment(pa.seg, 0.5);
        const double tm = 0.5 * (pa.t0 + pa.t1);
        return pieces_touch({l, pa.t0, tm}, pb, tol, allowed, depth - 1) ||
               pieces_touch({r, tm, pa.t1}, pb, tol, allowed, depth - 1);
    }
    if (is_null_segment(pb.seg)) return false;
    auto [l, r] = split_segment(pb.seg, 0.5);
    const double tm = 0.5 * (pb.t0 + pb.t1);
    return pieces_touch(pa, {l, pb.t0, tm}, tol, allowed, depth - 1) ||
           pieces_touch(pa, {r, tm, pb.t1}, tol, allowed, depth - 1);
}

// Exact double-point test for one cubic. Writing gamma in the power basis
// and dividing gamma(s) - gamma(t) by s - t leaves a linear system in the
// symmetric functions p = s + t, q = st; a loop inside the segment means
// both roots of z^2 - pz + q lie in [0,1]. Touching exactly at (0,1) is a
// closed single-segment loop, which counts as node contact, not a crossing.
bool segment_self_intersects(const CubicSegment& seg) {
    if (is_null_segment(seg) || is_straight(seg)) return false;
    const Point2 a1 = 3.0 * (seg.p1 - seg.p0);
    const Point2 a2 = 3.0 * (seg.p0 - 2.0 * seg.p1 + seg.p2);
    const Point2 a3 = seg.p3 - seg.p0 + 3.0 * (seg.p1 - seg.p2);
    const double det = cross(a3, a2);
    if (det == 0.0) {
        if (cross(a3, a1) != 0.0 || cross(a2, a1) != 0.0) return false;
        // All motion along one line: the segment retraces itself when the
        // velocity component along that line changes sign inside (0,1).
        Point2 dir = a3;
        if (dir.x == 0.0 && dir.y == 0.0) dir = a2;
        if (dir.x == 0.0 && dir.y == 0.0) dir = a1;
        if (dir.x == 0.0 && dir.y == 0.0) return false;
        const double c0 = dot(a1, dir);
        const double c1 = 2.0 * dot(a2, dir);
        const double c2 = 3.0 * dot(a3, dir);
        if (c2 == 0.0) {
            if (c1 == 0.0) return false;
            const double root = -c0 / c1;
            return root > 0.0 && root < 1.0 && c0 * (c0 + c1) < 0.0;
        }
        const double vdisc = c1 * c1 - 4.0 * c0 * c2;
        if (vdisc <= 0.0) return false;
        const double vr = std::sqrt(vdisc);
        const double r1 = (-c1 - vr) / (2.0 * c2);
        const double r2 = (-c1 + vr) / (2.0 * c2);
        return (r1 > 0.0 && r1 < 1.0) || (r2 > 0.0 && r2 < 1.0);
    }
    const double u = cross(a2, a1) / det;
    const double p = cross(a1, a3) / det;
    const double disc = 4.0 * u - 3.0 * p * p;
    // Loops with double-point parameters closer than 1e-6 are geometrically
    // far below the 1e-9 search tolerance (size ~ |gamma''| sep^2); treat
    // them, and exact cusps perturbed by rounding, as simple.
    if (disc <= 1e-12) return false;
    const double r = std::sqrt(disc);
    const double s = 0.5 * (p - r);
    const double t = 0.5 * (p + r);
    if (s < -1e-12 || t > 1.0 + 1e-12) return false;
    return s > 1e-12 || t < 1.0 - 1e-12;
}

}  // namespace

bool is_simple(const ClosedCurve& curve) {
    const double scale = std::max(rect_diameter(curve_control_bbox(curve)), 1.0e-300);
    const double tol = 1e-9 * scale;
    const std::size_t n = curve.size();
    for (std::size_t i = 0; i < n; ++i) {
        const CubicSegment& si = curve.segments[i];
        if (is_null_segment(si)) continue;
        if (segment_self_intersects(si)) return false;
        for (std::size_t j = i + 1; j < n; ++j) {
            const CubicSegment& sj = curve.segments[j];
            if (is_null_segment(sj)) continue;
            // Contact is allowed exactly where the two segments carry
            // bitwise-equal end nodes; this covers ordinary adjacency and
            // boundaries that revisit a node (merged hole bridges), while
            // transversal crossings elsewhere are still reported.
            std::vector<AllowedContact> allowed;
            for (double ti : {0.0, 1.0}) {
                for (double tj : {0.0, 1.0}) {
                    const Point2 pi = ti == 0.0 ? si.p0 : si.p3;
                    const Point2 pj = tj == 0.0 ? sj.p0 : sj.p3;
                    if (pi == pj) allowed.push_back({ti, tj, 1.0 / 64.0});
                }
            }
            if (pieces_touch({si, 0.0, 1.0}, {sj, 0.0, 1.0}, tol, allowed, 48)) return false;
        }
    }
    return true;
}

bool curves_intersect(const ClosedCurve& a, const ClosedCurve& b) {
    const Rect ra = curve_control_bbox(a);
    const Rect rb = curve_control_bbox(b);
    const double scale = std::max(rect_diameter(ra.united(rb)), 1.0e-300);
    const double tol = 1e-9 * scale;
    const Rect ra_fat{{ra.min.x - tol, ra.min.y - tol}, {ra.max.x + tol, ra.max.y + tol}};
    if (!rects_overlap(ra_fat, rb)) return false;
    for (const CubicSegment& sa : a.segments) {
        if (is_null_segment(sa)) continue;
        for (const CubicSegment& sb : b.segments) {
            if (is_null_segment(sb)) continue;
            if (pieces_touch({sa, 0.0, 1.0}, {sb, 0.0, 1.0}, tol, {}, 48)) return true;
        }
    }
    return false;
}

Point3 eval_patch(const Patch& patch, double u, double v) {
    auto bernstein = [](double t) {
        const double mt = 1.0 - t;
        return std::array<double, 4>{mt * mt * mt, 3.0 * mt * mt * t, 3.0 * mt * t * t, t * t * t};
    };
    const auto bu = bernstein(u);
    const auto bv = bernstein(v);
    Point3 out{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double w = bu[i] * bv[j];
            out = out + w * patch.at(i, j);
        }
    }
    return out;
}

Box3 patch_control_bbox(const Patch& patch) {
    Box3 box{patch.at(0, 0), patch.at(0, 0)};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const Point3 p = patch.at(i, j);
            box.min.x = std::min(box.min.x, p.x);
            box.min.y = std::min(box.min.y, p.y);
            box.min.z = std::min(box.min.z, p.z);
            box.max.x = std::max(box.max.x, p.x);
            box.max.y = std::max(box.max.y, p.y);
            box.max.z = std::max(box.max.z, p.z);
        }
    }
    return box;
}

}  // namespace geokit
