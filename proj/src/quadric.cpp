#include "geokit/quadric.h"

#include <algorithm>
#include <cmath>

#include "geokit/errors.h"

namespace geokit {

double quarter_circle_constant() { return 4.0 / 3.0 * (std::sqrt(2.0) - 1.0); }

CubicSegment quarter_arc() {
    const double a = quarter_circle_constant();
    return {{1.0, 0.0}, {1.0, a}, {a, 1.0}, {0.0, 1.0}};
}

Patch sphere_octant() {
    const double a = quarter_circle_constant();
    Patch p;
    // j = 0: equator arc from (1,0,0) to (0,1,0).
    p.at(0, 0) = {1, 0, 0};
    p.at(1, 0) = {1, a, 0};
    p.at(2, 0) = {a, 1, 0};
    p.at(3, 0) = {0, 1, 0};
    // i = 0: meridian from (1,0,0) to the pole.
    p.at(0, 1) = {1, 0, a};
    p.at(0, 2) = {a, 0, 1};
    p.at(0, 3) = {0, 0, 1};
    // i = 3: meridian from (0,1,0) to the pole.
    p.at(3, 1) = {0, 1, a};
    p.at(3, 2) = {0, a, 1};
    p.at(3, 3) = {0, 0, 1};
    // j = 3: collapsed at the pole.
    p.at(1, 3) = {0, 0, 1};
    p.at(2, 3) = {0, 0, 1};
    // Interior, on the corner tangent planes.
    p.at(1, 1) = {1, a, a};
    p.at(2, 1) = {a, 1, a};
    p.at(1, 2) = {a, a * a, 1};
    p.at(2, 2) = {a * a, a, 1};
    return p;
}

namespace {

double reflect(double v, int sign) {
    if (sign >= 0) return v;
    return v == 0.0 ? 0.0 : -v;  // keep shared arcs bitwise equal
}

}  // namespace

std::vector<Patch> unit_sphere() {
    const Patch base = sphere_octant();
    std::vector<Patch> patches;
    patches.reserve(8);
    for (int sx : {1, -1}) {
        for (int sy : {1, -1}) {
            for (int sz : {1, -1}) {
                Patch p = base;
                for (int i = 0; i < 4; ++i) {
                    for (int j = 0; j < 4; ++j) {
                        Point3& q = p.at(i, j);
                        q = {reflect(q.x, sx), reflect(q.y, sy), reflect(q.z, sz)};
                    }
                }
                p.orientation = sx * sy * sz;
                patches.push_back(p);
            }
        }
    }
    return patches;
}

double radius_error(const std::vector<Patch>& patches, int n_samples) {
    if (n_samples < 2) throw DomainError("radius_error: need at least 2 samples per direction");
    double worst = 0.0;
    for (const Patch& patch : patches) {
        for (int a = 0; a < n_samples; ++a) {
            for (int b = 0; b < n_samples; ++b) {
                const double u = static_cast<double>(a) / (n_samples - 1);
                const double v = static_cast<double>(b) / (n_samples - 1);
                const double r = length(eval_patch(patch, u, v));
                worst = std::max(worst, std::abs(r - 1.0));
            }
        }
    }
    return worst;
}

}  // namespace geokit
