#pragma once

#include <string>
#include <vector>

#include "geokit/bounds.h"
#include "geokit/geom_core.h"

namespace geokit {

struct PatchProvenance {
    int source_curve = 0;       // index of the simply connected piece
    std::string history;        // split steps that produced the patch
};

struct PlanePlacement {
    Point3 origin{0, 0, 0};
    Point3 axis_u{1, 0, 0};
    Point3 axis_v{0, 1, 0};
};

struct PatchSetDocument {
    std::vector<Patch> patches;
    std::vector<PatchProvenance> provenance;  // parallel to patches
    std::vector<Patch> discarded;
    PlanePlacement plane;

    // Diagnostic geometry for SVG output; not part of the JSON document.
    std::vector<ClosedCurve> input_curves;
    std::vector<ClosedCurve> regions;
    std::vector<CubicSegment> chords;
};

// Full decomposition: partition the curve set into simply connected
// regions, bezulate each, normalize reflex nodes, pad to four segments,
// and repair Coons degeneracies. Stage failures are rethrown as
// PipelineError carrying the stage name and the offending curve.
PatchSetDocument region_to_patches(const std::vector<ClosedCurve>& curves);

// Applies a rigid (optionally uniformly scaled) placement to every control
// point. A reflection flips the orientation flags.
PatchSetDocument place_in_3d(const PatchSetDocument& doc, const Transform3& transform);

}  // namespace geokit
