#pragma once

#include <span>

#include "geokit/geom_core.h"

namespace geokit {

enum class FillRule { NonZero, EvenOdd };

// Winding contribution of the directed edge p -> q about z against a
// horizontal ray toward +x: +1 for an upward crossing right of z, -1 for a
// downward one, 0 otherwise. Throws OnBoundary when z lies on the closed
// segment pq (exact predicate).
int straight_contribution(Point2 p, Point2 q, Point2 z);

// Winding contribution of a Bezier segment about z. Outside the control
// bounding box the segment deforms to its endpoint chord; otherwise the
// segment is subdivided until the box excludes z, the depth budget runs
// out, or the box shrinks below 1e-13 of `scale` (then it is treated as
// straight). Pass scale <= 0 to derive it from the segment itself.
int curved_contribution(const CubicSegment& seg, Point2 z, int depth = 64, double scale = 0.0);

int winding_number(const ClosedCurve& curve, Point2 z);

bool inside(const ClosedCurve& curve, Point2 z, FillRule rule = FillRule::NonZero);
bool inside(std::span<const ClosedCurve> curves, Point2 z, FillRule rule = FillRule::NonZero);

}  // namespace geokit
