#pragma once

#include <array>
#include <functional>
#include <span>

#include "geokit/geom_core.h"

namespace geokit {

enum class Axis { X, Y, Z };

// De Casteljau split along the u = v = 1/2 isolines.
std::array<Patch, 4> subdivide_patch(const Patch& patch);

// Global bound of a Cartesian component over a patch: corner values update
// M, subpatches whose remaining control points cannot beat M are pruned,
// the rest are subdivided down to `depth`.
double cartesian_max(Axis axis, const Patch& patch, double M, int depth);

// Directionally monotonic (nondecreasing per coordinate) scalar function
// over a patch bounding box.
struct BoundsQuery {
    std::function<double(Point3)> f;
    double M;
    int depth;
};

// Global bound of a monotone nondecreasing function over a patch: the
// prune test evaluates f at the componentwise-max corner of the control
// box. Monotone-decreasing directions are handled by the caller composing
// with coordinate negation.
double function_max(const BoundsQuery& query, const Patch& patch);

Box3 patch_bbox(const Patch& patch, int depth = 16);
Box3 patch_bbox(std::span<const Patch> patches, int depth = 16);

// Rigid (orthonormal rotation, optionally uniformly scaled) placement.
struct Transform3 {
    // Row-major 3x4: p' = R p + t.
    std::array<std::array<double, 4>, 3> m{{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}}};

    Point3 apply(Point3 p) const {
        return {m[0][0] * p.x + m[0][1] * p.y + m[0][2] * p.z + m[0][3],
                m[1][0] * p.x + m[1][1] * p.y + m[1][2] * p.z + m[1][3],
                m[2][0] * p.x + m[2][1] * p.y + m[2][2] * p.z + m[2][3]};
    }
    double determinant() const;
    bool is_rigid(double tol = 1e-9) const;  // orthonormal columns up to uniform scale
};

Patch transformed(const Patch& patch, const Transform3& t);

// Extents of the 2D perspective projection x/z, y/z over the patches,
// after applying the eye transform. All control points must end up at
// z > 0 (NonPositiveDepth otherwise).
struct ProjectedBounds {
    double min_x_over_z, max_x_over_z;
    double min_y_over_z, max_y_over_z;
};
ProjectedBounds projected_bounds(std::span<const Patch> patches, const Transform3& eye,
                                 int depth = 16);

// Optimal field-of-view angle (radians) for a symmetric square viewport:
// 2 atan(max(|x/z|, |y/z|)).
double fov_angle(std::span<const Patch> patches, const Transform3& eye, int depth = 16);

}  // namespace geokit
