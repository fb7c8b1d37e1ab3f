#pragma once

#include <vector>

#include "geokit/geom_core.h"

namespace geokit {

// A top-level curve grouped with every curve it contains, directly or
// through further nesting.
struct CurveGroup {
    ClosedCurve toplevel;
    std::vector<ClosedCurve> inner;
};

// Groups curves by relative insidedness under the nonzero winding rule.
// Containment is decided by the winding number of a point of the candidate
// about the other curve. Throws CrossingCurves when any two curves touch.
std::vector<CurveGroup> sort_curves(const std::vector<ClosedCurve>& curves);

struct MergeResult {
    std::vector<ClosedCurve> pieces;   // extracted regions, then the final outer
    std::vector<CubicSegment> chords;  // probe chords cut, for diagnostics
};

// Joins every inner curve (hole boundary) to the outer curve, extracting
// one simply connected region per inner curve and returning it together
// with the final merged outer boundary. Orientations are normalized
// internally (outer counterclockwise, inners clockwise); every returned
// curve is counterclockwise.
MergeResult merge_detailed(const ClosedCurve& outer, const std::vector<ClosedCurve>& inners);

std::vector<ClosedCurve> merge(const ClosedCurve& outer, const std::vector<ClosedCurve>& inners);

// Splits a nonsimply connected region, described by a set of pairwise
// non-crossing simple closed curves, into simply connected regions.
// Nested curves are handled recursively; output curves are all
// counterclockwise.
std::vector<ClosedCurve> partition(const std::vector<ClosedCurve>& curves);

struct PartitionResult {
    std::vector<ClosedCurve> pieces;
    std::vector<CubicSegment> chords;
};

PartitionResult partition_detailed(const std::vector<ClosedCurve>& curves);

}  // namespace geokit
