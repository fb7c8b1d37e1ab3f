#pragma once

#include <vector>

#include "geokit/geom_core.h"

namespace geokit {

// 4/3 (sqrt(2) - 1): places the cubic Bezier midpoint of a quarter circle
// on the unit circle.
double quarter_circle_constant();

// Unit quarter circle from (1,0) to (0,1), radial error below 0.06%.
CubicSegment quarter_arc();

// First-octant patch of the unit sphere; the v = 1 edge collapses onto the
// pole (0,0,1).
Patch sphere_octant();

// Eight-patch unit sphere, one octant per sign combination; adjacent
// octants share their boundary arcs exactly.
std::vector<Patch> unit_sphere();

// Largest deviation of |sigma(u,v)| from 1 over an n x n sample grid per
// patch. n must be at least 2.
double radius_error(const std::vector<Patch>& patches, int n_samples);

}  // namespace geokit
