#pragma once

#include <optional>
#include <vector>

#include "geokit/geom_core.h"

namespace geokit {

struct BezulateLimits {
    int max_refinements = 8;
};

// The straight chord between nodes i and i+n, when it lies inside the
// region: it must meet the curve exactly at its two endpoints and its
// midpoint must be strictly inside. Inadmissible chords yield nullopt.
std::optional<CubicSegment> chord_admissible(const ClosedCurve& curve, std::size_t i, int n);

struct BezulateResult {
    std::vector<ClosedCurve> pieces;
    int refinements = 0;
    std::vector<CubicSegment> chords;  // every chord cut, for diagnostics
};

// Partitions the region bounded by a simple closed curve into closed
// curves of four or fewer segments. The curve is normalized to
// counterclockwise orientation first; chords are searched with node gap
// n = 3 then n = 2, node index ascending, first admissible chord taken;
// when none is admissible every segment is split at its midpoint and the
// search restarts. Throws RefinementLimitExceeded past the limit.
BezulateResult bezulate_detailed(const ClosedCurve& curve, const BezulateLimits& limits = {});

std::vector<ClosedCurve> bezulate(const ClosedCurve& curve, const BezulateLimits& limits = {});

}  // namespace geokit
