#pragma once

#include <string>
#include <vector>

#include "geokit/bounds.h"
#include "geokit/geom_core.h"
#include "geokit/pipeline.h"

namespace geokit {

// Outline input: {"curves":[{"segments":[[[x,y],[x,y],[x,y],[x,y]],...]}]}.
// Closure must be exact; coordinates must be finite. Throws ParseError.
std::vector<ClosedCurve> parse_outline_json(const std::string& text);

// SVG path data restricted to absolute M, L, C, Z. Z must land exactly on
// the subpath's M point; L becomes a straight cubic. Accepts either a bare
// path string or a whole SVG document (every <path d="..."> is read).
std::vector<ClosedCurve> parse_outline_svg(const std::string& text);

// Dispatch on filename extension (.svg vs JSON).
std::vector<ClosedCurve> load_outline_file(const std::string& path);

std::string curve_to_json(const ClosedCurve& curve);

// Deterministic PatchSetDocument serialization (shortest round-trip
// doubles, fixed key order).
std::string patchset_to_json(const PatchSetDocument& doc);
PatchSetDocument parse_patchset_json(const std::string& text);

// Patch-set documents and outline files both carry geometry the bounds
// command can consume; outline curves are lifted flat at z = 0.
std::vector<Patch> load_patches_file(const std::string& path);

// Diagnostic rendering: input curves black, chords red, extracted regions
// gray, patch boundaries blue.
std::string patchset_to_svg(const PatchSetDocument& doc);

// Number -> string with 12 significant digits (bounds output convention).
std::string format_sig12(double v);

}  // namespace geokit
