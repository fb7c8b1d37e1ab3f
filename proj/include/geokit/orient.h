#pragma once

#include "geokit/geom_core.h"

namespace geokit {

// Sign of the 2D orientation determinant (b - a) x (c - a): +1 when c lies
// to the left of the directed line ab, -1 to the right, 0 exactly on it.
// Two stages: a fast double evaluation with a forward error bound, falling
// back to exact arbitrary-precision integer evaluation of the determinant
// when the bound cannot certify the sign.
int orientation(Point2 a, Point2 b, Point2 c);

// Exact test for c lying on the closed segment ab.
bool on_segment(Point2 a, Point2 b, Point2 c);

}  // namespace geokit
