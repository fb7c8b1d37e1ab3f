#include "geokit/winding.h"

#include <cmath>

#include "geokit/orient.h"

namespace geokit {

int straight_contribution(Point2 p, Point2 q, Point2 z) {
    if (p == q) {
        if (z == p) throw OnBoundary("query point coincides with a stationary segment");
        return 0;
    }
    if (on_segment(p, q, z)) throw OnBoundary("query point lies on a segment");
    if (p.y <= z.y) {
        if (q.y > z.y && orientation(p, q, z) > 0) return 1;  // upward crossing
    } else {
        if (q.y <= z.y && orientation(p, q, z) < 0) return -1;  // downward crossing
    }
    return 0;
}

namespace {

int curved_contribution_rec(const CubicSegment& seg, Point2 z, int depth, double min_diameter) {
    const Rect box = control_bbox(seg);
    if (!box.contains(z)) return straight_contribution(seg.p0, seg.p3, z);
    if (depth <= 0 || length(box.diagonal()) < min_diameter) {
        // Hull has shrunk onto machine precision around z.
        if (box.contains(z) && length(box.diagonal()) < min_diameter)
            throw OnBoundary("query point lies on the curve within machine precision");
        return straight_contribution(seg.p0, seg.p3, z);
    }
    auto [left, right] = split_segment(seg, 0.5);
    return curved_contribution_rec(left, z, depth - 1, min_diameter) +
           curved_contribution_rec(right, z, depth - 1, min_diameter);
}

}  // namespace

int curved_contribution(const CubicSegment& seg, Point2 z, int depth, double scale) {
    if (depth < 0) throw DomainError("curved_contribution: negative depth");
    if (is_null_segment(seg)) {
        if (z == seg.p0) throw OnBoundary("query point coincides with a null segment");
        return 0;
    }
    if (scale <= 0.0) scale = length(control_bbox(seg).diagonal());
    return curved_contribution_rec(seg, z, depth, 1e-13 * scale);
}

int winding_number(const ClosedCurve& curve, Point2 z) {
    if (!finite(z)) throw DomainError("winding_number: nonfinite query point");
    const double scale = length(curve_control_bbox(curve).diagonal());
    int w = 0;
    for (const CubicSegment& seg : curve.segments) {
        if (is_null_segment(seg)) {
            if (z == seg.p0) throw OnBoundary("query point on the curve");
            continue;
        }
        if (is_straight(seg)) {
            w += straight_contribution(seg.p0, seg.p3, z);
        } else {
            w += curved_contribution(seg, z, 64, scale);
        }
    }
    return w;
}

bool inside(const ClosedCurve& curve, Point2 z, FillRule rule) {
    const int w = winding_number(curve, z);
    return rule == FillRule::NonZero ? w != 0 : (w % 2 != 0);
}

bool inside(std::span<const ClosedCurve> curves, Point2 z, FillRule rule) {
    int w = 0;
    for (const ClosedCurve& curve : curves) w += winding_number(curve, z);
    return rule == FillRule::NonZero ? w != 0 : (w % 2 != 0);
}

}  // namespace geokit
