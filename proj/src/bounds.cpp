#include "geokit/bounds.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "geokit/errors.h"

namespace geokit {

namespace {

void split_rows_u(const Patch& patch, Patch* left, Patch* right) {
    for (int j = 0; j < 4; ++j) {
        Point3 p0 = patch.at(0, j), p1 = patch.at(1, j), p2 = patch.at(2, j), p3 = patch.at(3, j);
        const Point3 a = 0.5 * (p0 + p1);
        const Point3 b = 0.5 * (p1 + p2);
        const Point3 c = 0.5 * (p2 + p3);
        const Point3 ab = 0.5 * (a + b);
        const Point3 bc = 0.5 * (b + c);
        const Point3 m = 0.5 * (ab + bc);
        left->at(0, j) = p0;
        left->at(1, j) = a;
        left->at(2, j) = ab;
        left->at(3, j) = m;
        right->at(0, j) = m;
        right->at(1, j) = bc;
        right->at(2, j) = c;
        right->at(3, j) = p3;
    }
}

void split_cols_v(const Patch& patch, Patch* bottom, Patch* top) {
    for (int i = 0; i < 4; ++i) {
        Point3 p0 = patch.at(i, 0), p1 = patch.at(i, 1), p2 = patch.at(i, 2), p3 = patch.at(i, 3);
        const Point3 a = 0.5 * (p0 + p1);
        const Point3 b = 0.5 * (p1 + p2);
        const Point3 c = 0.5 * (p2 + p3);
        const Point3 ab = 0.5 * (a + b);
        const Point3 bc = 0.5 * (b + c);
        const Point3 m = 0.5 * (ab + bc);
        bottom->at(i, 0) = p0;
        bottom->at(i, 1) = a;
        bottom->at(i, 2) = ab;
        bottom->at(i, 3) = m;
        top->at(i, 0) = m;
        top->at(i, 1) = bc;
        top->at(i, 2) = c;
        top->at(i, 3) = p3;
    }
}

double component(Point3 p, Axis axis) {
    switch (axis) {
        case Axis::X: return p.x;
        case Axis::Y: return p.y;
        default: return p.z;
    }
}

}  // namespace

std::array<Patch, 4> subdivide_patch(const Patch& patch) {
    Patch left, right;
    split_rows_u(patch, &left, &right);
    std::array<Patch, 4> out;
    split_cols_v(left, &out[0], &out[1]);
    split_cols_v(right, &out[2], &out[3]);
    for (Patch& p : out) p.orientation = patch.orientation;
    return out;
}

double cartesian_max(Axis axis, const Patch& patch, double M, int depth) {
    if (depth < 0) throw DomainError("cartesian_max: negative depth");
    M = std::max({M, component(patch.at(0, 0), axis), component(patch.at(0, 3), axis),
                  component(patch.at(3, 0), axis), component(patch.at(3, 3), axis)});
    if (depth == 0) return M;
    double V = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if ((i == 0 || i == 3) && (j == 0 || j == 3)) continue;
            V = std::max(V, component(patch.at(i, j), axis));
        }
    }
    if (V <= M) return M;
    for (const Patch& sub : subdivide_patch(patch)) {
        M = std::max(M, cartesian_max(axis, sub, M, depth - 1));
    }
    return M;
}

double function_max(const BoundsQuery& query, const Patch& patch) {
    if (query.depth < 0) throw DomainError("function_max: negative depth");
    double M = std::max({query.M, query.f(patch.at(0, 0)), query.f(patch.at(0, 3)),
                         query.f(patch.at(3, 0)), query.f(patch.at(3, 3))});
    if (query.depth == 0) return M;
    Point3 corner = patch.at(0, 0);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const Point3 p = patch.at(i, j);
            corner.x = std::max(corner.x, p.x);
            corner.y = std::max(corner.y, p.y);
            corner.z = std::max(corner.z, p.z);
        }
    }
    if (query.f(corner) <= M) return M;
    for (const Patch& sub : subdivide_patch(patch)) {
        M = std::max(M, function_max({query.f, M, query.depth - 1}, sub));
    }
    return M;
}

namespace {

Patch negated(const Patch& patch, bool nx, bool ny, bool nz) {
    Patch out = patch;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            Point3& p = out.at(i, j);
            if (nx) p.x = -p.x;
            if (ny) p.y = -p.y;
            if (nz) p.z = -p.z;
        }
    }
    return out;
}

}  // namespace

Box3 patch_bbox(const Patch& patch, int depth) {
    return patch_bbox(std::span<const Patch>(&patch, 1), depth);
}

Box3 patch_bbox(std::span<const Patch> patches, int depth) {
    if (patches.empty()) throw DomainError("patch_bbox: empty patch list");
    constexpr double kInf = std::numeric_limits<double>::infinity();
    Box3 box{{kInf, kInf, kInf}, {-kInf, -kInf, -kInf}};
    for (const Patch& patch : patches) {
        box.max.x = cartesian_max(Axis::X, patch, box.max.x, depth);
        box.max.y = cartesian_max(Axis::Y, patch, box.max.y, depth);
        box.max.z = cartesian_max(Axis::Z, patch, box.max.z, depth);
        const Patch neg = negated(patch, true, true, true);
        box.min.x = -cartesian_max(Axis::X, neg, -box.min.x, depth);
        box.min.y = -cartesian_max(Axis::Y, neg, -box.min.y, depth);
        box.min.z = -cartesian_max(Axis::Z, neg, -box.min.z, depth);
    }
    return box;
}

double Transform3::determinant() const {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

bool Transform3::is_rigid(double tol) const {
    // R R^T must be s^2 I for a uniform scale s.
    double rrt[3][3] = {};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) rrt[i][j] += m[i][k] * m[j][k];
    const double s2 = (rrt[0][0] + rrt[1][1] + rrt[2][2]) / 3.0;
    if (!(s2 > 0.0)) return false;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const double want = i == j ? s2 : 0.0;
            if (std::abs(rrt[i][j] - want) > tol * s2) return false;
        }
    }
    return true;
}

Patch transformed(const Patch& patch, const Transform3& t) {
    Patch out = patch;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out.at(i, j) = t.apply(patch.at(i, j));
    if (t.determinant() < 0.0) out.orientation = -patch.orientation;
    return out;
}

namespace {

// max over w < 0 boxes of max(x,0)/(-w): nondecreasing in every coordinate,
// which keeps the single-corner prune of function_max sound. Feeding the
// patch with z negated (w = -z) yields max over the surface of max(x,0)/z.
double positive_ratio_max(std::span<const Patch> patches, bool negate_x, int depth) {
    auto f = [](Point3 p) { return std::max(p.x, 0.0) / (-p.z); };
    double M = 0.0;
    for (const Patch& patch : patches) {
        const Patch prepared = negated(patch, negate_x, false, true);
        M = function_max({f, M, depth}, prepared);
    }
    return M;
}

// Largest x/z over the patches. The positive branch is always sound; when
// every control point sits at x <= 0, x/z itself is nondecreasing in both
// x and z and a direct query gives the (negative) maximum. In the residual
// mixed case 0 is still a correct upper bound.
double ratio_max(std::span<const Patch> patches, int depth) {
    const double pos = positive_ratio_max(patches, false, depth);
    if (pos > 0.0) return pos;
    bool all_nonpositive = true;
    for (const Patch& patch : patches)
        for (int i = 0; i < 4 && all_nonpositive; ++i)
            for (int j = 0; j < 4; ++j)
                if (patch.at(i, j).x > 0.0) {
                    all_nonpositive = false;
                    break;
                }
    if (!all_nonpositive) return 0.0;
    auto f = [](Point3 p) { return p.x / p.z; };
    double M = -std::numeric_limits<double>::infinity();
    for (const Patch& patch : patches) M = function_max({f, M, depth}, patch);
    return M;
}

std::vector<Patch> axes_swapped(std::span<const Patch> patches) {
    std::vector<Patch> swapped(patches.begin(), patches.end());
    for (Patch& p : swapped)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) std::swap(p.at(i, j).x, p.at(i, j).y);
    return swapped;
}

std::vector<Patch> x_negated(std::span<const Patch> patches) {
    std::vector<Patch> out(patches.begin(), patches.end());
    for (Patch& p : out)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) p.at(i, j).x = -p.at(i, j).x;
    return out;
}

}  // namespace

ProjectedBounds projected_bounds(std::span<const Patch> patches, const Transform3& eye,
                                 int depth) {
    if (patches.empty()) throw DomainError("projected_bounds: empty patch list");
    if (!eye.is_rigid()) throw DomainError("projected_bounds: transform is not rigid");
    std::vector<Patch> placed;
    placed.reserve(patches.size());
    for (const Patch& patch : patches) {
        const Patch moved = transformed(patch, eye);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                if (!(moved.at(i, j).z > 0.0))
                    throw NonPositiveDepth("projected_bounds: control point at z <= 0");
            }
        }
        placed.push_back(moved);
    }
    const std::vector<Patch> flipped = x_negated(placed);
    const std::vector<Patch> swapped = axes_swapped(placed);
    const std::vector<Patch> swapped_flipped = x_negated(swapped);

    ProjectedBounds out;
    out.max_x_over_z = ratio_max(placed, depth);
    out.min_x_over_z = -ratio_max(flipped, depth);
    out.max_y_over_z = ratio_max(swapped, depth);
    out.min_y_over_z = -ratio_max(swapped_flipped, depth);
    return out;
}

double fov_angle(std::span<const Patch> patches, const Transform3& eye, int depth) {
    const ProjectedBounds b = projected_bounds(patches, eye, depth);
    const double extent = std::max({std::abs(b.min_x_over_z), std::abs(b.max_x_over_z),
                                    std::abs(b.min_y_over_z), std::abs(b.max_y_over_z)});
    return 2.0 * std::atan(extent);
}

}  // namespace geokit
